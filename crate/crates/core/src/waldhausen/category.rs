use std::collections::HashMap;

use super::WindowError;

pub type ObjId = usize;
pub type MorId = usize;

const MISSING: MorId = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// A finite category with a total composition table.
///
/// Composition is stored per morphism `f: A → B` as the row of composites
/// `g∘f` for every `g` leaving `B`, so lookups are two array reads.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    obj_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    mor_index: HashMap<String, MorId>,
    identities: Vec<MorId>,
    out: Vec<Vec<MorId>>,
    out_pos: Vec<usize>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    post: Vec<Vec<MorId>>,
}

impl FiniteCategory {
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a]
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.morphisms[f].source
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.morphisms[f].target
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.source(f)] == f
    }

    /// Morphisms `A → B` in id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Morphisms leaving `A` in id order.
    pub fn out(&self, a: ObjId) -> &[MorId] {
        &self.out[a]
    }

    /// `g∘f`, if recorded.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.source(g) != self.target(f) {
            return None;
        }
        let h = self.post[f][self.out_pos[g]];
        (h != MISSING).then_some(h)
    }

    /// `g∘f` for a composable pair of a valid category.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| panic!("composite {}.{} missing", self.name(g), self.name(f)))
    }

    /// Composable pairs `(g, f)` lacking a composite.
    pub fn missing_composites(&self) -> Vec<(MorId, MorId)> {
        let mut out = Vec::new();
        for f in 0..self.morphisms.len() {
            for (k, &h) in self.post[f].iter().enumerate() {
                if h == MISSING {
                    out.push((self.out[self.target(f)][k], f));
                }
            }
        }
        out
    }

    /// Associativity failures `(h, g, f)`, at most `limit` triples examined.
    pub fn associativity_failures(&self, limit: u64) -> (Vec<(MorId, MorId, MorId)>, u64) {
        let mut bad = Vec::new();
        let mut checked = 0u64;
        'outer: for f in 0..self.morphisms.len() {
            for (k, &g) in self.out[self.target(f)].iter().enumerate() {
                let gf = self.post[f][k];
                if gf == MISSING {
                    continue;
                }
                for (l, &h) in self.out[self.target(g)].iter().enumerate() {
                    if checked >= limit {
                        break 'outer;
                    }
                    checked += 1;
                    let hg = self.post[g][l];
                    if hg == MISSING {
                        continue;
                    }
                    let left = self.post[f][self.out_pos[hg]];
                    let right = self.post[gf][l];
                    if left != right {
                        bad.push((h, g, f));
                    }
                }
            }
        }
        (bad, checked)
    }

    /// Some `g: B → A` with `g∘f = 1_A` and `f∘g = 1_B`.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == Some(self.identity(a)) && self.compose(f, g) == Some(self.identity(b)))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }
}

/// Incremental construction; identities `id_<obj>` are created with their objects.
#[derive(Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    obj_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    mor_index: HashMap<String, MorId>,
    identities: Vec<MorId>,
    table: HashMap<(MorId, MorId), MorId>,
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: &str) -> Result<ObjId, WindowError> {
        if self.obj_index.contains_key(name) {
            return Err(WindowError::Duplicate(name.to_string()));
        }
        let id = self.objects.len();
        self.objects.push(name.to_string());
        self.obj_index.insert(name.to_string(), id);
        let idm = self.add_morphism(&identity_name(name), id, id)?;
        self.identities.push(idm);
        Ok(id)
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn add_morphism(&mut self, name: &str, source: ObjId, target: ObjId) -> Result<MorId, WindowError> {
        if self.mor_index.contains_key(name) {
            return Err(WindowError::Duplicate(name.to_string()));
        }
        let id = self.morphisms.len();
        self.morphisms.push(Morphism { name: name.to_string(), source, target });
        self.mor_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Records `g∘f = h`.
    pub fn set_composite(&mut self, g: MorId, f: MorId, h: MorId) -> Result<(), WindowError> {
        let (mg, mf, mh) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[h]);
        if mg.source != mf.target || mh.source != mf.source || mh.target != mg.target {
            return Err(WindowError::Invalid(format!(
                "composite {}.{} = {} has the wrong shape",
                mg.name, mf.name, mh.name
            )));
        }
        match self.table.insert((g, f), h) {
            Some(old) if old != h => Err(WindowError::Invalid(format!(
                "composite {}.{} recorded twice",
                mg.name, mf.name
            ))),
            _ => Ok(()),
        }
    }

    pub fn build(self) -> FiniteCategory {
        let n = self.objects.len();
        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; self.morphisms.len()];
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            out_pos[i] = out[m.source].len();
            out[m.source].push(i);
            hom.entry((m.source, m.target)).or_default().push(i);
        }
        let is_id: Vec<bool> = {
            let mut v = vec![false; self.morphisms.len()];
            for &i in &self.identities {
                v[i] = true;
            }
            v
        };
        let mut post = Vec::with_capacity(self.morphisms.len());
        for (f, m) in self.morphisms.iter().enumerate() {
            let row = out[m.target]
                .iter()
                .map(|&g| {
                    if is_id[g] {
                        f
                    } else if is_id[f] {
                        g
                    } else {
                        self.table.get(&(g, f)).copied().unwrap_or(MISSING)
                    }
                })
                .collect();
            post.push(row);
        }
        FiniteCategory {
            objects: self.objects,
            obj_index: self.obj_index,
            morphisms: self.morphisms,
            mor_index: self.mor_index,
            identities: self.identities,
            out,
            out_pos,
            hom,
            post,
        }
    }
}

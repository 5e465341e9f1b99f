use std::collections::HashMap;

use super::complex::{cylinder_complex, is_quasi_iso, normal_form, pushout_along_mono, BoundedComplex, ChainMap};
use super::field::{FpMatrix, PrimeField};
use super::ChainError;
use crate::waldhausen::{CategoryBuilder, Coproduct, Cylinder, MorId, ObjId, Pushout, WaldhausenWindow};

/// How the dimension cap of a window is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimCap {
    /// Sum of the dimensions over all degrees.
    Total(usize),
    /// Dimension in each degree separately.
    PerDegree(usize),
}

impl DimCap {
    fn admits(&self, c: &BoundedComplex) -> bool {
        match *self {
            DimCap::Total(n) => c.total_dim() <= n,
            DimCap::PerDegree(n) => c.degrees().all(|k| c.dim(k) <= n),
        }
    }
}

/// Explosion guard for [`build_window`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowCaps {
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// Bound on the elementary operations spent on composition and pushouts.
    pub budget: u64,
}

impl Default for WindowCaps {
    fn default() -> Self {
        WindowCaps { max_objects: 64, max_morphisms: 20_000, budget: crate::waldhausen::budget() }
    }
}

/// A chain-complex window together with the complexes and matrices behind
/// its objects and morphisms.
#[derive(Clone, Debug)]
pub struct ChainWindow {
    pub window: WaldhausenWindow,
    pub field: PrimeField,
    /// Normal-form complex of each object.
    pub complexes: Vec<BoundedComplex>,
    /// Matrices of each morphism, one per degree.
    pub maps: Vec<Vec<FpMatrix>>,
    /// Table rows left out because they leave the window.
    pub omitted: Vec<String>,
    index: HashMap<(ObjId, ObjId, Vec<u32>), MorId>,
}

fn key(maps: &[FpMatrix]) -> Vec<u32> {
    maps.iter().flat_map(|m| m.entries().iter().copied()).collect()
}

impl ChainWindow {
    pub fn chain_map(&self, f: MorId) -> ChainMap {
        let c = &self.window.cat;
        ChainMap {
            source: self.complexes[c.source(f)].clone(),
            target: self.complexes[c.target(f)].clone(),
            maps: self.maps[f].clone(),
        }
    }

    /// The morphism with the given matrices.
    pub fn lookup(&self, a: ObjId, b: ObjId, maps: &[FpMatrix]) -> Option<MorId> {
        self.index.get(&(a, b, key(maps))).copied()
    }

    /// Object whose normal form has these homology dimensions and ranks.
    pub fn object_with(&self, h: &[usize], r: &[usize]) -> Option<ObjId> {
        self.window.cat.object(&object_name(h, r))
    }

    /// Rewrites a chain map into a morphism of the window by normalizing its
    /// endpoints; `phi_s` and `phi_t` are the normal-form coordinates.
    fn transport(&self, a: ObjId, b: ObjId, f: &ChainMap, phi_s: Option<&[FpMatrix]>, phi_t: &[FpMatrix]) -> Option<MorId> {
        let k = &self.field;
        let maps: Vec<FpMatrix> = f
            .source
            .degrees()
            .enumerate()
            .map(|(i, _)| {
                let m = phi_t[i].mul(k, &f.maps[i]);
                match phi_s {
                    Some(ps) => m.mul(k, &ps[i].inverse(k).expect("basis change")),
                    None => m,
                }
            })
            .collect();
        self.lookup(a, b, &maps)
    }
}

fn object_name(h: &[usize], r: &[usize]) -> String {
    if h.iter().chain(r).all(|&x| x == 0) {
        return "0".into();
    }
    let hs: String = h.iter().map(|x| x.to_string()).collect();
    let rs: String = r[..r.len() - 1].iter().map(|x| x.to_string()).collect();
    if rs.is_empty() {
        format!("C{hs}")
    } else {
        format!("C{hs}_{rs}")
    }
}

fn for_each_vector(n: usize, bound: usize, f: &mut impl FnMut(&[usize])) {
    let mut v = vec![0; n];
    loop {
        f(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            v[i] += 1;
            if v[i] <= bound {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// All chain maps `A → B`, in a fixed order.
fn chain_maps(k: &PrimeField, a: &BoundedComplex, b: &BoundedComplex, limit: usize) -> Result<Vec<Vec<FpMatrix>>, ChainError> {
    let degs: Vec<i32> = a.degrees().collect();
    let mut offsets = Vec::new();
    let mut n_unknowns = 0;
    for &n in &degs {
        offsets.push(n_unknowns);
        n_unknowns += b.dim(n) * a.dim(n);
    }
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * a.dim(degs[i]) + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 0..degs.len().saturating_sub(1) {
        let n = degs[i];
        let (da, db) = (a.d(n), b.d(n));
        // (d_B f^n - f^(n+1) d_A)[r][c] = 0
        for r in 0..b.dim(n + 1) {
            for c in 0..a.dim(n) {
                let mut row = vec![0u32; n_unknowns];
                for t in 0..b.dim(n) {
                    row[var(i, t, c)] = k.add(row[var(i, t, c)], db.get(r, t));
                }
                for t in 0..a.dim(n + 1) {
                    row[var(i + 1, r, t)] = k.sub(row[var(i + 1, r, t)], da.get(t, c));
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..n_unknowns)
            .map(|j| {
                let mut e = vec![0; n_unknowns];
                e[j] = 1;
                e
            })
            .collect()
    } else {
        FpMatrix::from_rows(rows.len(), n_unknowns, rows.concat()).kernel(k)
    };
    let count = (k.characteristic() as usize).checked_pow(basis.len() as u32).unwrap_or(usize::MAX);
    if count > limit {
        return Err(ChainError::TooLarge(format!("{count} chain maps between two objects")));
    }
    let mut out = Vec::with_capacity(count);
    for_each_vector(basis.len(), k.characteristic() as usize - 1, &mut |coef| {
        let mut flat = vec![0u32; n_unknowns];
        for (c, v) in coef.iter().zip(&basis) {
            for (x, &y) in flat.iter_mut().zip(v) {
                *x = k.add(*x, k.mul(*c as u32, y));
            }
        }
        let maps = degs
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let len = b.dim(n) * a.dim(n);
                FpMatrix::from_rows(b.dim(n), a.dim(n), flat[offsets[i]..offsets[i] + len].to_vec())
            })
            .collect();
        out.push(maps);
    });
    Ok(out)
}

/// Every normal-form complex over `F_p` in degrees `lo..=hi` admitted by
/// `cap`, all chain maps between them, quasi-isomorphisms as weak
/// equivalences and levelwise injections as cofibrations. Pushouts,
/// coproducts and cylinders are recorded whenever the result is again an
/// object of the window.
pub fn build_window(p: u32, lo: i32, hi: i32, cap: DimCap, caps: WindowCaps) -> Result<ChainWindow, ChainError> {
    let k = PrimeField::new(p)?;
    if hi < lo || hi - lo > 3 {
        return Err(ChainError::TooLarge(format!("degree range {lo}:{hi}")));
    }
    let max = match cap {
        DimCap::Total(n) | DimCap::PerDegree(n) => n,
    };
    if max > 9 {
        return Err(ChainError::TooLarge(format!("dimension cap {max}")));
    }
    let len = (hi - lo + 1) as usize;

    // objects: (h, r) with r on top zero, ordered by total dimension
    let mut shapes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for_each_vector(2 * len - 1, max, &mut |v| {
        let h = v[..len].to_vec();
        let mut r = v[len..].to_vec();
        r.push(0);
        shapes.push((h, r));
    });
    let mut complexes = Vec::new();
    let mut objects = Vec::new();
    for (h, r) in shapes {
        let c = BoundedComplex::standard(k, lo, &h, &r)?;
        if cap.admits(&c) {
            objects.push((c.total_dim(), h, r, c));
        }
    }
    objects.sort_by(|x, y| (x.0, &x.1, &x.2).cmp(&(y.0, &y.1, &y.2)));
    if objects.len() > caps.max_objects {
        return Err(ChainError::TooLarge(format!("{} objects exceed the cap of {}", objects.len(), caps.max_objects)));
    }
    let mut b = CategoryBuilder::new();
    for (_, h, r, c) in &objects {
        b.add_object(&object_name(h, r))?;
        complexes.push(c.clone());
    }
    let n = complexes.len();
    let mut maps: Vec<Vec<FpMatrix>> = Vec::new();
    let mut index = HashMap::new();
    let mut cofs = Vec::new();
    let mut wes = Vec::new();
    // identities were created with their objects
    for (a, c) in complexes.iter().enumerate() {
        let id: Vec<FpMatrix> = c.degrees().map(|d| FpMatrix::identity(c.dim(d))).collect();
        index.insert((a, a, key(&id)), maps.len());
        maps.push(id);
    }
    let mut total = n;
    for a in 0..n {
        for t in 0..n {
            let all = chain_maps(&k, &complexes[a], &complexes[t], caps.max_morphisms)?;
            total += all.len() - usize::from(a == t);
            if total > caps.max_morphisms {
                return Err(ChainError::TooLarge(format!("more than {} morphisms", caps.max_morphisms)));
            }
            let src = b.object(&object_name(&objects[a].1, &objects[a].2)).expect("object");
            let tgt = b.object(&object_name(&objects[t].1, &objects[t].2)).expect("object");
            for (i, m) in all.into_iter().enumerate() {
                let kk = (a, t, key(&m));
                if index.contains_key(&kk) {
                    continue;
                }
                let name = format!("m{}_{}_{}", b_name(&objects, a), b_name(&objects, t), i);
                let id = b.add_morphism(&name, src, tgt)?;
                debug_assert_eq!(id, maps.len());
                index.insert(kk, id);
                maps.push(m);
            }
        }
    }
    let mut cw = ChainWindow {
        window: WaldhausenWindow::new(b.build(), 0, &[], &[]),
        field: k,
        complexes,
        maps,
        omitted: Vec::new(),
        index,
    };
    let m = cw.maps.len();
    let mut spent = 0u64;
    let mut comp = CategoryBuilder::new();
    // rebuild with composites: the builder above was consumed, so record
    // the table on a fresh builder with identical ids
    for (_, h, r, _) in &objects {
        comp.add_object(&object_name(h, r))?;
    }
    for f in 0..m {
        let mm = cw.window.cat.morphism(f).clone();
        if !cw.window.cat.is_identity(f) {
            comp.add_morphism(&mm.name, mm.source, mm.target)?;
        }
    }
    for f in 0..m {
        let cf = cw.chain_map(f);
        let wf = cw.window.cat.target(f);
        for &g in cw.window.cat.out(wf) {
            if cw.window.cat.is_identity(g) || cw.window.cat.is_identity(f) {
                continue;
            }
            spent += 1;
            if spent > caps.budget {
                return Err(ChainError::TooLarge("composition table exceeds the budget".into()));
            }
            let h = cw.chain_map(g).after(&cf);
            let hid = cw
                .lookup(cw.window.cat.source(f), cw.window.cat.target(g), &h.maps)
                .expect("window is closed under composition");
            comp.set_composite(g, f, hid)?;
        }
    }
    for f in 0..m {
        let cf = cw.chain_map(f);
        if cf.is_levelwise_injective() {
            cofs.push(f);
        }
        if is_quasi_iso(&cf) {
            wes.push(f);
        }
    }
    cw.window = WaldhausenWindow::new(comp.build(), 0, &cofs, &wes);
    record_pushouts(&mut cw, &cofs, caps.budget)?;
    record_coproducts(&mut cw)?;
    record_cylinders(&mut cw, lo, hi)?;
    Ok(cw)
}

fn b_name(objects: &[(usize, Vec<usize>, Vec<usize>, BoundedComplex)], a: usize) -> String {
    object_name(&objects[a].1, &objects[a].2)
}

/// Finds the object and coordinates of a complex that may not be in normal
/// form.
fn normalize(cw: &ChainWindow, c: &BoundedComplex) -> Option<(ObjId, Vec<FpMatrix>)> {
    let nf = normal_form(c);
    let obj = cw.object_with(&nf.h, &nf.r)?;
    Some((obj, nf.phi))
}

fn record_pushouts(cw: &mut ChainWindow, cofs: &[MorId], budget: u64) -> Result<(), ChainError> {
    let mut spent = 0u64;
    let mut rows = Vec::new();
    let mut omitted = 0usize;
    for &f in cofs {
        let cf = cw.chain_map(f);
        let a = cw.window.cat.source(f);
        for &g in cw.window.cat.out(a) {
            spent += 1;
            if spent > budget {
                return Err(ChainError::TooLarge("pushout table exceeds the budget".into()));
            }
            let cg = cw.chain_map(g);
            let (p, lb, lx) = pushout_along_mono(&cf, &cg)?;
            let Some((obj, phi)) = normalize(cw, &p) else {
                omitted += 1;
                continue;
            };
            let leg_b = cw.transport(cw.window.cat.target(f), obj, &lb, None, &phi);
            let leg_x = cw.transport(cw.window.cat.target(g), obj, &lx, None, &phi);
            match (leg_b, leg_x) {
                (Some(leg_b), Some(leg_x)) => rows.push((f, g, Pushout { object: obj, leg_b, leg_x })),
                _ => return Err(ChainError::Shape("pushout legs are not window morphisms".into())),
            }
        }
    }
    for (f, g, row) in rows {
        cw.window.add_pushout(f, g, row)?;
    }
    if omitted > 0 {
        cw.omitted.push(format!("{omitted} pushouts leave the window"));
    }
    Ok(())
}

/// Coproduct rows for `A ≤ B` are recorded together with their mirror
/// images, and the cofibers of the inclusions are set to the projections.
fn record_coproducts(cw: &mut ChainWindow) -> Result<(), ChainError> {
    let k = cw.field;
    let n = cw.complexes.len();
    let mut omitted = 0usize;
    for a in 0..n {
        for b in a..n {
            let (ca, cb) = (cw.complexes[a].clone(), cw.complexes[b].clone());
            let s = ca.direct_sum(&cb)?;
            let Some((obj, phi)) = normalize(cw, &s) else {
                omitted += 1;
                continue;
            };
            let degs: Vec<i32> = s.degrees().collect();
            let inc = |first: bool| -> Vec<FpMatrix> {
                degs.iter()
                    .enumerate()
                    .map(|(i, &d)| {
                        let (x, y) = (ca.dim(d), cb.dim(d));
                        let m = if first {
                            FpMatrix::blocks(&[x, y], &[x], &[vec![Some(FpMatrix::identity(x))], vec![None]])
                        } else {
                            FpMatrix::blocks(&[x, y], &[y], &[vec![None], vec![Some(FpMatrix::identity(y))]])
                        };
                        phi[i].mul(&k, &m)
                    })
                    .collect()
            };
            let proj = |first: bool| -> Vec<FpMatrix> {
                degs.iter()
                    .enumerate()
                    .map(|(i, &d)| {
                        let (x, y) = (ca.dim(d), cb.dim(d));
                        let m = if first {
                            FpMatrix::blocks(&[x], &[x, y], &[vec![Some(FpMatrix::identity(x)), None]])
                        } else {
                            FpMatrix::blocks(&[y], &[x, y], &[vec![None, Some(FpMatrix::identity(y))]])
                        };
                        m.mul(&k, &phi[i].inverse(&k).expect("basis change"))
                    })
                    .collect()
            };
            let get = |src: ObjId, tgt: ObjId, m: Vec<FpMatrix>| {
                cw.lookup(src, tgt, &m).ok_or_else(|| ChainError::Shape("coproduct map outside the window".into()))
            };
            let row = Coproduct {
                object: obj,
                i1: get(a, obj, inc(true))?,
                i2: get(b, obj, inc(false))?,
                p1: get(obj, a, proj(true))?,
                p2: get(obj, b, proj(false))?,
            };
            let w = &mut cw.window;
            w.add_coproduct(a, b, row)?;
            if a != b {
                w.add_coproduct(b, a, Coproduct { object: obj, i1: row.i2, i2: row.i1, p1: row.p2, p2: row.p1 })?;
            }
            for (i, q, other) in [(row.i1, row.p2, b), (row.i2, row.p1, a)] {
                let src = w.cat.source(i);
                let t = w.to_zero(src).expect("zero object");
                let z = w.from_zero(other).expect("zero object");
                w.set_pushout(i, t, Pushout { object: other, leg_b: q, leg_x: z });
            }
        }
    }
    if omitted > 0 {
        cw.omitted.push(format!("{omitted} coproducts leave the window"));
    }
    Ok(())
}

fn record_cylinders(cw: &mut ChainWindow, lo: i32, hi: i32) -> Result<(), ChainError> {
    let k = cw.field;
    for a in 0..cw.complexes.len() {
        let ca = cw.complexes[a].clone();
        let name = cw.window.cat.object_name(a).to_string();
        let cy = cylinder_complex(&ca);
        let Ok(ia) = cy.complex.pad(lo, hi) else {
            cw.omitted.push(format!("cylinder of {name} needs degree {}", lo - 1));
            continue;
        };
        let Some((obj, phi)) = normalize(cw, &ia) else {
            cw.omitted.push(format!("cylinder of {name} exceeds the dimension cap"));
            continue;
        };
        // drop the extra bottom degree of the cylinder maps
        let trim = |m: &ChainMap| -> Vec<FpMatrix> { m.maps[1..].to_vec() };
        let to_nf = |ms: Vec<FpMatrix>| -> Vec<FpMatrix> { ms.iter().zip(&phi).map(|(m, p)| p.mul(&k, m)).collect() };
        let from_nf = |ms: Vec<FpMatrix>| -> Vec<FpMatrix> {
            ms.iter().zip(&phi).map(|(m, p)| m.mul(&k, &p.inverse(&k).expect("basis change"))).collect()
        };
        let get = |src: ObjId, tgt: ObjId, m: Vec<FpMatrix>| {
            cw.lookup(src, tgt, &m).ok_or_else(|| ChainError::Shape("cylinder map outside the window".into()))
        };
        let row = Cylinder {
            object: obj,
            i0: get(a, obj, to_nf(trim(&cy.i0)))?,
            i1: get(a, obj, to_nf(trim(&cy.i1)))?,
            p: get(obj, a, from_nf(trim(&cy.p)))?,
        };
        cw.window.add_cylinder(a, row)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::validate_window;

    #[test]
    fn single_degree_window() {
        let cw = build_window(2, 0, 0, DimCap::Total(1), WindowCaps::default()).unwrap();
        let c = &cw.window.cat;
        assert_eq!(c.objects(), &["0".to_string(), "C1".to_string()]);
        // identities, the two maps through zero and the zero endomorphism of F
        assert_eq!(c.n_morphisms(), 5);
        assert!(validate_window(&cw.window, 1_000_000).violations.is_empty());
    }

    #[test]
    fn two_degree_windows() {
        let cw = build_window(2, 0, 1, DimCap::Total(2), WindowCaps::default()).unwrap();
        assert_eq!(cw.window.cat.n_objects(), 7);
        let r = validate_window(&cw.window, 10_000_000);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        let cw3 = build_window(3, 0, 1, DimCap::Total(2), WindowCaps::default()).unwrap();
        let w = &cw3.window;
        assert_eq!(w.cat.n_morphisms(), 319);
        assert_eq!(w.weak_equivalences().count(), 110);
        assert_eq!(w.cofibrations().count(), 135);
    }
}

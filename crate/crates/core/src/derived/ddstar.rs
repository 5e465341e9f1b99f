use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::fractions::{compose_fractions, ore_square, Fraction};
use super::isos::{check_saturation, enumerate_ho_isos, HoIsoTable};
use crate::squad::{Expr1, Squad, SquadMorphism, SquadPresentation, Word0};
use crate::waldhausen::{
    cof_generator, common_part, enumerate_cofiber_sequences, enumerate_we_of_cofseq, obj_generator, we_boundary,
    we_generator, CofiberSeq, WaldhausenWindow, WindowError,
};

/// Name of the degree-1 generator of the isomorphism class `k`.
pub fn iso_generator(w: &WaldhausenWindow, table: &HoIsoTable, k: usize) -> String {
    let rep = table.isos[k].representative();
    format!("iso:{}/{}", w.cat.name(rep.a1), w.cat.name(rep.a2))
}

/// The presentation `DD*W` together with the isomorphism classes behind its
/// generators.
#[derive(Clone, Debug)]
pub struct DerivedPresented {
    pub presentation: SquadPresentation,
    pub sequences: Vec<CofiberSeq>,
    pub isos: HoIsoTable,
    pub notes: Vec<String>,
}

/// Builds `DD*W` with RS1 to RS9 instantiated on the window. Refuses
/// windows where some morphism outside the weak equivalences is witnessed
/// to become invertible.
pub fn present_ddstar(w: &WaldhausenWindow, depth_cap: usize) -> Result<DerivedPresented, WindowError> {
    let unsaturated = check_saturation(w)?;
    if !unsaturated.is_empty() {
        return Err(WindowError::Unsaturated(unsaturated.join("; ")));
    }
    let c = &w.cat;
    let table = enumerate_ho_isos(w, depth_cap)?;
    let seqs = enumerate_cofiber_sequences(w)?;
    let common = common_part(w, &seqs)?;
    let names: Vec<String> = (0..table.len()).map(|k| iso_generator(w, &table, k)).collect();
    let iso = |k: usize| Expr1::gen(names[k].clone());
    let mut gens1: Vec<(String, Word0)> = table
        .isos
        .iter()
        .enumerate()
        .map(|(k, h)| (names[k].clone(), we_boundary(w, h.source(), h.target())))
        .collect();
    gens1.extend(common.cof_gens);

    // RS4
    let mut rels1: Vec<Expr1> = (0..c.n_objects()).map(|a| iso(table.identity_class(a))).collect();
    rels1.extend(common.rels1);

    // RS6, one relation per triple of classes
    let mut triples = HashSet::new();
    let mut unresolved = 0usize;
    let is_id = |k: usize| table.identity_class(table.isos[k].source()) == k;
    let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, h) in table.isos.iter().enumerate() {
        by_source.entry(h.source()).or_default().push(k);
    }
    for (ka, a) in table.isos.iter().enumerate() {
        if is_id(ka) {
            continue;
        }
        for &kb in by_source.get(&a.target()).into_iter().flatten() {
            if is_id(kb) {
                continue;
            }
            let (x, y) = (a.representative(), table.isos[kb].representative());
            let composite = match ore_square(w, x.a2, y.a1, true) {
                Some((u, v)) => Some(Fraction { a1: c.comp(u, x.a1), a2: c.comp(v, y.a2) }),
                None => compose_fractions(w, &x, &y).ok(),
            };
            match composite.and_then(|f| table.class_of(&f)) {
                Some(kc) => {
                    triples.insert((ka, kb, kc));
                }
                None => unresolved += 1,
            }
        }
    }
    // ζ is a functor on composable weak equivalences
    for f in w.weak_equivalences().filter(|&f| !c.is_identity(f)) {
        for &g in c.out(c.target(f)) {
            if !w.is_weak_equivalence(g) || c.is_identity(g) {
                continue;
            }
            if let (Some(kf), Some(kg), Some(kgf)) =
                (table.zeta_class(w, f), table.zeta_class(w, g), table.zeta_class(w, c.comp(g, f)))
            {
                triples.insert((kf, kg, kgf));
            }
        }
    }
    // [α] = [ζ(α₂)⁻¹] + [ζ(α₁)] for every representative
    for (k, h) in table.isos.iter().enumerate() {
        for f in &h.members {
            if let (Some(k1), Some(k2)) = (table.zeta_class(w, f.a1), table.zeta_inverse_class(w, f.a2)) {
                triples.insert((k1, k2, k));
            }
        }
    }
    let mut triples: Vec<_> = triples.into_iter().filter(|&(a, b, _)| !is_id(a) && !is_id(b)).collect();
    triples.sort_unstable();
    for &(ka, kb, kc) in &triples {
        rels1.push(Expr1::sum(vec![iso(kc), Expr1::sum(vec![iso(kb), iso(ka)]).neg()]));
    }

    // RS7 from pairs of ladders into a common middle row
    let ladders = enumerate_we_of_cofseq(w, &seqs);
    let mut into: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, l) in ladders.iter().enumerate() {
        into.entry(l.target).or_default().push(i);
    }
    let cg = |i: usize| Expr1::gen(cof_generator(w, &seqs[i]));
    let mut seen7 = HashSet::new();
    let mut rs7 = Vec::new();
    let mut targets: Vec<_> = into.keys().copied().collect();
    targets.sort_unstable();
    for m in targets {
        let group = &into[&m];
        for &i in group {
            for &j in group {
                let (l1, l2) = (&ladders[i], &ladders[j]);
                let class = |x, y| table.class_of(&Fraction { a1: x, a2: y });
                let (Some(ka), Some(kb), Some(kc)) = (class(l1.a, l2.a), class(l1.b, l2.b), class(l1.c, l2.c)) else {
                    unresolved += 1;
                    continue;
                };
                if !seen7.insert((l1.source, l2.source, ka, kb, kc)) {
                    continue;
                }
                if l1.source == l2.source && is_id(ka) && is_id(kb) && is_id(kc) {
                    continue;
                }
                let a_obj = Word0::gen(obj_generator(w, seqs[l1.source].sub(w)));
                let lhs = Expr1::sum(vec![iso(ka), iso(kc).act(a_obj)]);
                let rhs = Expr1::sum(vec![cg(l2.source).neg(), iso(kb), cg(l1.source)]);
                rs7.push(Expr1::sum(vec![lhs, rhs.neg()]));
            }
        }
    }
    let n7 = rs7.len();
    rels1.extend(rs7);

    let mut notes = vec![
        format!("isomorphism classes: {}", table.len()),
        format!("RS6: {} composable triples", triples.len()),
        format!("RS7: {n7} sandwich diagrams"),
    ];
    if unresolved > 0 {
        notes.push(format!("{unresolved} composites or sandwich legs fell outside the enumerated classes"));
    }
    notes.extend(common.notes);
    Ok(DerivedPresented {
        presentation: SquadPresentation { gens0: common.gens0, gens1, rels0: common.rels0, rels1 },
        sequences: seqs,
        isos: table,
        notes,
    })
}

fn identity_on_objects(w: &WaldhausenWindow) -> Vec<Word0> {
    (0..w.cat.n_objects()).map(|a| Word0::gen(obj_generator(w, a))).collect()
}

/// `μ̄: D*W → DD*W`, sending `[f]` to `[ζ(f)]` and fixing objects and
/// cofiber sequences.
pub fn mu_bar(
    w: &WaldhausenWindow,
    dstar: Arc<Squad>,
    ddstar: Arc<Squad>,
    derived: &DerivedPresented,
) -> Result<SquadMorphism, WindowError> {
    let c = &w.cat;
    let we_names: HashMap<String, usize> = w.weak_equivalences().map(|f| (we_generator(w, f), f)).collect();
    let image1 = dstar
        .presentation()
        .gens1
        .iter()
        .map(|(name, _)| match we_names.get(name) {
            Some(&f) => derived
                .isos
                .zeta_class(w, f)
                .map(|k| Expr1::gen(iso_generator(w, &derived.isos, k)))
                .ok_or_else(|| WindowError::Invalid(format!("no class for ζ({})", c.name(f)))),
            None => Ok(Expr1::gen(name.clone())),
        })
        .collect::<Result<_, _>>()?;
    Ok(SquadMorphism::new(dstar, ddstar, identity_on_objects(w), image1))
}

/// `−[α₂] + [α₁]` for a fraction with both legs weak equivalences.
pub fn nu_image(w: &WaldhausenWindow, f: &Fraction) -> Expr1 {
    Expr1::sum(vec![Expr1::gen(we_generator(w, f.a2)).neg(), Expr1::gen(we_generator(w, f.a1))])
}

/// `ν̄: DD*W → D*W`, evaluated on the chosen representative of each class.
pub fn nu_bar(
    w: &WaldhausenWindow,
    ddstar: Arc<Squad>,
    dstar: Arc<Squad>,
    derived: &DerivedPresented,
) -> Result<SquadMorphism, WindowError> {
    let iso_names: HashMap<String, usize> =
        (0..derived.isos.len()).map(|k| (iso_generator(w, &derived.isos, k), k)).collect();
    let image1 = ddstar
        .presentation()
        .gens1
        .iter()
        .map(|(name, _)| match iso_names.get(name) {
            Some(&k) => nu_image(w, &derived.isos.isos[k].representative()),
            None => Expr1::gen(name.clone()),
        })
        .collect();
    Ok(SquadMorphism::new(ddstar, dstar, identity_on_objects(w), image1))
}

use std::collections::HashMap;

use super::fractions::{homotopic, strictly_homotopic, Fraction, HoMorphism};
use crate::waldhausen::{MorId, ObjId, WaldhausenWindow, WindowError};

/// An isomorphism of the homotopy category with a verified inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoIso {
    pub morphism: HoMorphism,
    /// `B → X ← A`, the same diagram read backwards.
    pub inverse: Fraction,
    /// All fractions known to represent this isomorphism.
    pub members: Vec<Fraction>,
}

impl HoIso {
    pub fn source(&self) -> ObjId {
        self.morphism.source
    }

    pub fn target(&self) -> ObjId {
        self.morphism.target
    }

    pub fn representative(&self) -> Fraction {
        self.morphism.representative
    }
}

/// Isomorphisms of the homotopy category representable inside the window,
/// grouped into witnessed equality classes.
#[derive(Clone, Debug)]
pub struct HoIsoTable {
    pub isos: Vec<HoIso>,
    class_of: HashMap<Fraction, usize>,
    identity: Vec<usize>,
}

impl HoIsoTable {
    pub fn class_of(&self, f: &Fraction) -> Option<usize> {
        self.class_of.get(f).copied()
    }

    /// Class of `ζ(f)` for a weak equivalence `f`.
    pub fn zeta_class(&self, w: &WaldhausenWindow, f: MorId) -> Option<usize> {
        self.class_of(&Fraction { a1: f, a2: w.cat.identity(w.cat.target(f)) })
    }

    /// Class of `ζ(f)⁻¹` for a weak equivalence `f`.
    pub fn zeta_inverse_class(&self, w: &WaldhausenWindow, f: MorId) -> Option<usize> {
        self.class_of(&Fraction { a1: w.cat.identity(w.cat.target(f)), a2: f })
    }

    pub fn identity_class(&self, a: ObjId) -> usize {
        self.identity[a]
    }

    pub fn len(&self) -> usize {
        self.isos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.isos.is_empty()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Enumerates every fraction `A → X ← B` whose legs are both weak
/// equivalences and groups them by witnessed equality: post-composition
/// with a weak equivalence, and replacing a leg by a strictly homotopic
/// one where a cylinder exists. Only depth 1 (a single apex inside the
/// window) is supported.
pub fn enumerate_ho_isos(w: &WaldhausenWindow, depth_cap: usize) -> Result<HoIsoTable, WindowError> {
    if depth_cap != 1 {
        return Err(WindowError::Invalid(format!("depth cap {depth_cap} is not supported; use 1")));
    }
    let c = &w.cat;
    let mut fracs = Vec::new();
    for x in 0..c.n_objects() {
        let into: Vec<MorId> = (0..c.n_objects()).flat_map(|a| w.we_hom(a, x).collect::<Vec<_>>()).collect();
        for &a1 in &into {
            for &a2 in &into {
                fracs.push(Fraction { a1, a2 });
            }
        }
    }
    let index: HashMap<Fraction, usize> = fracs.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut uf = UnionFind((0..fracs.len()).collect());
    for (i, f) in fracs.iter().enumerate() {
        for &u in c.out(f.apex(w)) {
            if w.is_weak_equivalence(u) && !c.is_identity(u) {
                uf.union(i, index[&f.push(w, u)]);
            }
        }
        // replace a leg by a strictly homotopic weak equivalence
        for (leg, other, first) in [(f.a1, f.a2, true), (f.a2, f.a1, false)] {
            let s = c.source(leg);
            if w.cylinder(s).is_none() {
                continue;
            }
            for g in w.we_hom(s, f.apex(w)) {
                if g != leg && strictly_homotopic(w, leg, g)?.is_some() {
                    let alt = if first { Fraction { a1: g, a2: other } } else { Fraction { a1: other, a2: g } };
                    uf.union(i, index[&alt]);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Fraction>> = HashMap::new();
    for (i, f) in fracs.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(*f);
    }
    let mut classes: Vec<(ObjId, ObjId, Fraction, Vec<Fraction>)> = groups
        .into_values()
        .map(|mut members| {
            members.sort();
            let zeta_form = members.iter().filter(|f| c.is_identity(f.a2)).min().copied();
            let rep = zeta_form.unwrap_or(members[0]);
            (rep.source(w), rep.target(w), rep, members)
        })
        .collect();
    classes.sort_by_key(|&(s, t, rep, _)| (s, t, rep));
    let mut class_of = HashMap::new();
    let mut isos = Vec::new();
    for (k, (s, t, rep, members)) in classes.into_iter().enumerate() {
        for f in &members {
            class_of.insert(*f, k);
        }
        let inverse = Fraction { a1: rep.a2, a2: rep.a1 };
        // (α₁, α₁) is the composite of the inverse after α through the
        // identity square, and post-composing (1, 1) with α₁ yields it
        let witnesses = vec![
            format!("inverse {} composes to ({0} / {0}) = ζ(α₁)(1 / 1)", c.name(rep.a1)),
            format!("inverse {} composes to ({0} / {0}) = ζ(α₂)(1 / 1)", c.name(rep.a2)),
        ];
        isos.push(HoIso {
            morphism: HoMorphism { source: s, target: t, representative: rep, witnesses },
            inverse,
            members,
        });
    }
    let identity = (0..c.n_objects())
        .map(|a| {
            let id = c.identity(a);
            class_of[&Fraction { a1: id, a2: id }]
        })
        .collect();
    Ok(HoIsoTable { isos, class_of, identity })
}

/// Morphisms outside the weak equivalences that are witnessed to become
/// isomorphisms in the homotopy category.
pub fn check_saturation(w: &WaldhausenWindow) -> Result<Vec<String>, WindowError> {
    let c = &w.cat;
    let mut report = Vec::new();
    for f in 0..c.n_morphisms() {
        if w.is_weak_equivalence(f) {
            continue;
        }
        let (a, b) = (c.source(f), c.target(f));
        let name = c.name(f);
        if let Some(&u) = c.out(b).iter().find(|&&u| w.is_weak_equivalence(u) && w.is_weak_equivalence(c.comp(u, f))) {
            report.push(format!("{name}: {}.{name} is a weak equivalence", c.name(u)));
            continue;
        }
        let into_a = (0..c.n_objects()).flat_map(|z| w.we_hom(z, a).collect::<Vec<_>>());
        if let Some(v) = into_a.into_iter().find(|&v| w.is_weak_equivalence(c.comp(f, v))) {
            report.push(format!("{name}: {name}.{} is a weak equivalence", c.name(v)));
            continue;
        }
        if w.cylinder(a).is_some() {
            for g in w.we_hom(a, b) {
                if homotopic(w, f, g)?.is_some() {
                    report.push(format!("{name}: homotopic to the weak equivalence {}", c.name(g)));
                    break;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_window, DimCap, WindowCaps};
    use crate::waldhausen::pointed_sets_window;

    fn chain2() -> WaldhausenWindow {
        build_window(2, 0, 1, DimCap::Total(2), WindowCaps::default()).unwrap().window
    }

    #[test]
    fn identities_and_zeta_classes() {
        let w = chain2();
        let t = enumerate_ho_isos(&w, 1).unwrap();
        for a in 0..w.cat.n_objects() {
            let k = t.identity_class(a);
            assert_eq!((t.isos[k].source(), t.isos[k].target()), (a, a));
        }
        for f in w.weak_equivalences() {
            let k = t.zeta_class(&w, f).unwrap();
            let inv = t.zeta_inverse_class(&w, f).unwrap();
            let h = &t.isos[k];
            assert_eq!(h.inverse, Fraction { a1: h.representative().a2, a2: h.representative().a1 });
            assert_eq!((t.isos[inv].source(), t.isos[inv].target()), (h.target(), h.source()));
        }
        assert!(enumerate_ho_isos(&w, 2).is_err());
    }

    #[test]
    fn quasi_isomorphisms_give_new_isomorphisms() {
        let w = chain2();
        let t = enumerate_ho_isos(&w, 1).unwrap();
        let c = &w.cat;
        let e = c.object("C00_1").unwrap();
        let f = w.from_zero(e).unwrap();
        assert!(w.is_weak_equivalence(f) && !c.is_iso(f));
        let k = t.zeta_class(&w, f).unwrap();
        let from_isos = (0..c.n_morphisms()).filter(|&g| c.is_iso(g)).any(|g| t.zeta_class(&w, g) == Some(k));
        assert!(!from_isos);
    }

    #[test]
    fn saturation() {
        assert!(check_saturation(&pointed_sets_window(1).unwrap()).unwrap().is_empty());
        let mut w = chain2();
        assert!(check_saturation(&w).unwrap().is_empty());
        let e = w.cat.object("C00_1").unwrap();
        let f = w.from_zero(e).unwrap();
        w.unmark_weak_equivalence(f);
        let report = check_saturation(&w).unwrap();
        assert!(report.iter().any(|r| r.starts_with(w.cat.name(f))), "{report:?}");
    }
}

use crate::waldhausen::{MorId, ObjId, WaldhausenWindow, WindowError};

/// Left fraction `A → X ← B` with `a2` a weak equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    pub a1: MorId,
    pub a2: MorId,
}

impl Fraction {
    pub fn new(w: &WaldhausenWindow, a1: MorId, a2: MorId) -> Result<Self, WindowError> {
        let c = &w.cat;
        if c.target(a1) != c.target(a2) {
            return Err(WindowError::Invalid(format!("{} and {} have different targets", c.name(a1), c.name(a2))));
        }
        if !w.is_weak_equivalence(a2) {
            return Err(WindowError::Invalid(format!("{} is not a weak equivalence", c.name(a2))));
        }
        Ok(Fraction { a1, a2 })
    }

    pub fn source(&self, w: &WaldhausenWindow) -> ObjId {
        w.cat.source(self.a1)
    }

    pub fn target(&self, w: &WaldhausenWindow) -> ObjId {
        w.cat.source(self.a2)
    }

    pub fn apex(&self, w: &WaldhausenWindow) -> ObjId {
        w.cat.target(self.a1)
    }

    /// Post-composition of both legs with `u`.
    pub fn push(&self, w: &WaldhausenWindow, u: MorId) -> Fraction {
        Fraction { a1: w.cat.comp(u, self.a1), a2: w.cat.comp(u, self.a2) }
    }

    pub fn describe(&self, w: &WaldhausenWindow) -> String {
        format!("{} / {}", w.cat.name(self.a1), w.cat.name(self.a2))
    }
}

/// `H: IA → B'` with `H i0 = h f` and `H i1 = h g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub h: MorId,
    pub homotopy: MorId,
}

/// A morphism of the homotopy category with the equalities used to obtain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoMorphism {
    pub source: ObjId,
    pub target: ObjId,
    pub representative: Fraction,
    pub witnesses: Vec<String>,
}

/// `ζ(f) = (f, 1)`.
pub fn zeta(w: &WaldhausenWindow, f: MorId) -> HoMorphism {
    let b = w.cat.target(f);
    HoMorphism {
        source: w.cat.source(f),
        target: b,
        representative: Fraction { a1: f, a2: w.cat.identity(b) },
        witnesses: Vec::new(),
    }
}

/// Some `H: IA → B` with `H i0 = f` and `H i1 = g`.
pub fn strictly_homotopic(w: &WaldhausenWindow, f: MorId, g: MorId) -> Result<Option<MorId>, WindowError> {
    let c = &w.cat;
    let a = c.source(f);
    if c.source(g) != a || c.target(g) != c.target(f) {
        return Err(WindowError::Invalid(format!("{} and {} are not parallel", c.name(f), c.name(g))));
    }
    let cy = w.cylinder(a).ok_or_else(|| WindowError::MissingCylinder(c.object_name(a).to_string()))?;
    Ok(c.hom(cy.object, c.target(f))
        .iter()
        .copied()
        .find(|&h| c.comp(h, cy.i0) == f && c.comp(h, cy.i1) == g))
}

/// A weak equivalence `h` out of the common target with `h f`, `h g`
/// strictly homotopic, searched over every weak equivalence.
pub fn homotopic(w: &WaldhausenWindow, f: MorId, g: MorId) -> Result<Option<HomotopyWitness>, WindowError> {
    let c = &w.cat;
    if let Some(homotopy) = strictly_homotopic(w, f, g)? {
        return Ok(Some(HomotopyWitness { h: c.identity(c.target(f)), homotopy }));
    }
    for &h in c.out(c.target(f)) {
        if !w.is_weak_equivalence(h) || c.is_identity(h) {
            continue;
        }
        if let Some(homotopy) = strictly_homotopic(w, c.comp(h, f), c.comp(h, g))? {
            return Ok(Some(HomotopyWitness { h, homotopy }));
        }
    }
    Ok(None)
}

/// Equal, or homotopic when the source has a cylinder.
fn agree(w: &WaldhausenWindow, f: MorId, g: MorId) -> Result<bool, WindowError> {
    if f == g {
        return Ok(true);
    }
    if w.cylinder(w.cat.source(f)).is_none() {
        return Ok(false);
    }
    Ok(homotopic(w, f, g)?.is_some())
}

/// Connecting diagram `X → Z ← Y` for two fractions with the same ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZWitness {
    pub z: ObjId,
    pub from_x: MorId,
    pub from_y: MorId,
    /// Whether the triangles commute on the nose.
    pub strict: bool,
}

/// Searches for `g: X → Z`, `g': Y → Z` with `g α₁ ≃ g' α′₁` and
/// `g α₂ ≃ g' α′₂` weak equivalences, trying strict commutativity before
/// homotopies. `None` means no witness inside the window, not that the
/// morphisms differ.
pub fn fractions_equal(w: &WaldhausenWindow, x: &Fraction, y: &Fraction, budget: u64) -> Result<Option<ZWitness>, WindowError> {
    let c = &w.cat;
    if x.source(w) != y.source(w) || x.target(w) != y.target(w) {
        return Ok(None);
    }
    if x == y {
        let id = c.identity(x.apex(w));
        return Ok(Some(ZWitness { z: x.apex(w), from_x: id, from_y: id, strict: true }));
    }
    let mut spent = 0u64;
    for strict in [true, false] {
        for z in 0..c.n_objects() {
            for &g in c.hom(x.apex(w), z) {
                for &g2 in c.hom(y.apex(w), z) {
                    spent += 1;
                    if spent > budget {
                        return Err(WindowError::Budget("fractions_equal".into()));
                    }
                    let (l1, r1) = (c.comp(g, x.a1), c.comp(g2, y.a1));
                    let (l2, r2) = (c.comp(g, x.a2), c.comp(g2, y.a2));
                    if !w.is_weak_equivalence(l2) || !w.is_weak_equivalence(r2) {
                        continue;
                    }
                    let ok = if strict { l1 == r1 && l2 == r2 } else { agree(w, l1, r1)? && agree(w, l2, r2)? };
                    if ok {
                        return Ok(Some(ZWitness { z, from_x: g, from_y: g2, strict }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A commuting square `u α₂ = v β₁` with `v` a weak equivalence, taken from
/// the recorded pushout when `β₁` is a cofibration.
pub(crate) fn ore_square(w: &WaldhausenWindow, a2: MorId, b1: MorId, search: bool) -> Option<(MorId, MorId)> {
    let c = &w.cat;
    if w.is_cofibration(b1) {
        if let Some(p) = w.pushout(b1, a2) {
            if w.is_weak_equivalence(p.leg_b) {
                return Some((p.leg_x, p.leg_b));
            }
        }
    }
    if !search {
        return None;
    }
    let (x, y) = (c.target(a2), c.target(b1));
    for z in 0..c.n_objects() {
        for v in w.we_hom(y, z) {
            let vb = c.comp(v, b1);
            if let Some(&u) = c.hom(x, z).iter().find(|&&u| c.comp(u, a2) == vb) {
                return Some((u, v));
            }
        }
    }
    None
}

/// `β ∘ α` by the pushout of `β₁` along `α₂`, replacing `β₁` by its
/// mapping-cylinder cofibration first when it is not a cofibration.
pub fn compose_fractions(w: &WaldhausenWindow, alpha: &Fraction, beta: &Fraction) -> Result<Fraction, WindowError> {
    let c = &w.cat;
    if alpha.target(w) != beta.source(w) {
        return Err(WindowError::Invalid("fractions are not composable".into()));
    }
    let beta = if w.is_cofibration(beta.a1) { *beta } else { cylinder_replacement(w, beta)? };
    let p = w.pushout(beta.a1, alpha.a2).ok_or_else(|| {
        WindowError::NotClosed(format!("pushout of {} along {}", c.name(beta.a1), c.name(alpha.a2)))
    })?;
    Fraction::new(w, c.comp(p.leg_x, alpha.a1), c.comp(p.leg_b, beta.a2))
}

/// Rewrites `B → Y ← C` as `B ↣ M ← C` through the mapping cylinder
/// `M = Y ∪_B IB`, where `B ↣ M` is the `i0` end and `s: Y → M` the other leg.
fn cylinder_replacement(w: &WaldhausenWindow, beta: &Fraction) -> Result<Fraction, WindowError> {
    let c = &w.cat;
    let b = beta.source(w);
    let cy = w.cylinder(b).ok_or_else(|| WindowError::NotClosed(format!("cylinder of {}", c.object_name(b))))?;
    let p = w.pushout(cy.i1, beta.a1).ok_or_else(|| {
        WindowError::NotClosed(format!("pushout of {} along {}", c.name(cy.i1), c.name(beta.a1)))
    })?;
    let j = c.comp(p.leg_b, cy.i0);
    let s = p.leg_x;
    if !w.is_cofibration(j) {
        return Err(WindowError::NotClosed(format!("{} is not a cofibration", c.name(j))));
    }
    Fraction::new(w, j, c.comp(s, beta.a2))
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
    fn zero_window_pairs_are_homotopic() {
        let w = pointed_sets_window(1).unwrap();
        let id = w.cat.identity(w.zero);
        let h = strictly_homotopic(&w, id, id).unwrap().unwrap();
        let cy = w.cylinder(w.zero).unwrap();
        assert_eq!(h, w.cat.comp(id, cy.p));
        assert_eq!(homotopic(&w, id, id).unwrap().unwrap().h, id);
    }

    #[test]
    fn missing_cylinder_is_an_error() {
        let w = chain2();
        let a = w.cat.object("C10_0").unwrap();
        let id = w.cat.identity(a);
        assert!(matches!(strictly_homotopic(&w, id, id), Err(WindowError::MissingCylinder(_))));
    }

    #[test]
    fn zeta_of_identity_is_the_identity_fraction() {
        let w = chain2();
        let a = w.cat.object("C01_0").unwrap();
        let z = zeta(&w, w.cat.identity(a));
        assert_eq!(z.representative, Fraction { a1: w.cat.identity(a), a2: w.cat.identity(a) });
        let wit = fractions_equal(&w, &z.representative, &z.representative, 1000).unwrap().unwrap();
        assert!(wit.strict);
        assert_eq!(wit.z, a);
    }

    #[test]
    fn zeta_is_functorial_and_inverts_weak_equivalences() {
        let w = chain2();
        let c = &w.cat;
        let mut composites = 0;
        for f in w.weak_equivalences() {
            let (a, b) = (c.source(f), c.target(f));
            let alpha = zeta(&w, f).representative;
            // ζ(f)⁻¹ ζ(f) = 1
            let inv = Fraction::new(&w, c.identity(b), f).unwrap();
            let back = compose_fractions(&w, &alpha, &inv).unwrap();
            let one = Fraction { a1: c.identity(a), a2: c.identity(a) };
            assert!(fractions_equal(&w, &back, &one, 100_000).unwrap().is_some());
            for g in w.we_hom(b, b).chain((0..c.n_objects()).flat_map(|x| w.we_hom(b, x).collect::<Vec<_>>())) {
                if !w.is_cofibration(g) {
                    continue;
                }
                let gf = compose_fractions(&w, &alpha, &zeta(&w, g).representative).unwrap();
                let direct = zeta(&w, c.comp(g, f)).representative;
                assert!(fractions_equal(&w, &gf, &direct, 100_000).unwrap().is_some());
                composites += 1;
            }
        }
        assert!(composites > 10);
    }

    #[test]
    fn homology_separates_fractions() {
        let w = chain2();
        let c = &w.cat;
        // 0 and the identity of F[0] differ on homology
        let a = c.object("C10_0").unwrap();
        let zero_map = w.zero_map(a, a).unwrap();
        let x = Fraction::new(&w, zero_map, c.identity(a)).unwrap();
        let y = Fraction::new(&w, c.identity(a), c.identity(a)).unwrap();
        assert!(fractions_equal(&w, &x, &y, 1_000_000).unwrap().is_none());
    }
}

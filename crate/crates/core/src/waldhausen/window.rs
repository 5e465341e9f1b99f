use std::collections::BTreeMap;

use super::category::{FiniteCategory, MorId, ObjId};
use super::WindowError;

/// Chosen pushout of a cofibration `f: A ↣ B` along `g: A → X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub object: ObjId,
    /// `B → P`.
    pub leg_b: MorId,
    /// `X → P`, itself a cofibration.
    pub leg_x: MorId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub object: ObjId,
    pub i1: MorId,
    pub i2: MorId,
    pub p1: MorId,
    pub p2: MorId,
}

/// Factorization `A ∨ A ↣ IA → A` of the folding map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub object: ObjId,
    pub i0: MorId,
    pub i1: MorId,
    pub p: MorId,
}

/// A finite fragment of a Waldhausen category with chosen structure.
#[derive(Clone, Debug)]
pub struct WaldhausenWindow {
    pub cat: FiniteCategory,
    pub zero: ObjId,
    cof: Vec<bool>,
    we: Vec<bool>,
    pushouts: BTreeMap<(MorId, MorId), Pushout>,
    coproducts: BTreeMap<(ObjId, ObjId), Coproduct>,
    cylinders: BTreeMap<ObjId, Cylinder>,
}

impl WaldhausenWindow {
    /// Identities are always marked as cofibrations and weak equivalences.
    pub fn new(cat: FiniteCategory, zero: ObjId, cofibrations: &[MorId], weak_equivalences: &[MorId]) -> Self {
        let n = cat.n_morphisms();
        let mut cof = vec![false; n];
        let mut we = vec![false; n];
        for &f in cofibrations {
            cof[f] = true;
        }
        for &f in weak_equivalences {
            we[f] = true;
        }
        for a in 0..cat.n_objects() {
            cof[cat.identity(a)] = true;
            we[cat.identity(a)] = true;
        }
        WaldhausenWindow {
            cat,
            zero,
            cof,
            we,
            pushouts: BTreeMap::new(),
            coproducts: BTreeMap::new(),
            cylinders: BTreeMap::new(),
        }
    }

    pub fn add_pushout(&mut self, f: MorId, g: MorId, row: Pushout) -> Result<(), WindowError> {
        if self.cat.source(f) != self.cat.source(g) {
            return Err(WindowError::Invalid(format!(
                "pushout span {} / {} has different sources",
                self.cat.name(f),
                self.cat.name(g)
            )));
        }
        if self.pushouts.insert((f, g), row).is_some() {
            return Err(WindowError::Duplicate(format!("pushout {} along {}", self.cat.name(f), self.cat.name(g))));
        }
        Ok(())
    }

    /// Replaces a recorded pushout row.
    pub fn set_pushout(&mut self, f: MorId, g: MorId, row: Pushout) {
        self.pushouts.insert((f, g), row);
    }

    pub fn add_coproduct(&mut self, a: ObjId, b: ObjId, row: Coproduct) -> Result<(), WindowError> {
        if self.coproducts.insert((a, b), row).is_some() {
            return Err(WindowError::Duplicate(format!(
                "coproduct {} {}",
                self.cat.object_name(a),
                self.cat.object_name(b)
            )));
        }
        Ok(())
    }

    pub fn add_cylinder(&mut self, a: ObjId, row: Cylinder) -> Result<(), WindowError> {
        if self.cylinders.insert(a, row).is_some() {
            return Err(WindowError::Duplicate(format!("cylinder {}", self.cat.object_name(a))));
        }
        Ok(())
    }

    pub fn is_cofibration(&self, f: MorId) -> bool {
        self.cof[f]
    }

    pub fn is_weak_equivalence(&self, f: MorId) -> bool {
        self.we[f]
    }

    /// Removes `f` from the weak equivalences; used to build deliberately
    /// broken fixtures.
    pub fn unmark_weak_equivalence(&mut self, f: MorId) {
        self.we[f] = false;
    }

    pub fn cofibrations(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.cof.len()).filter(|&f| self.cof[f])
    }

    pub fn weak_equivalences(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.we.len()).filter(|&f| self.we[f])
    }

    /// Weak equivalences `A → B`.
    pub fn we_hom(&self, a: ObjId, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.cat.hom(a, b).iter().copied().filter(|&f| self.we[f])
    }

    pub fn pushout(&self, f: MorId, g: MorId) -> Option<&Pushout> {
        self.pushouts.get(&(f, g))
    }

    pub fn pushouts(&self) -> impl Iterator<Item = (&(MorId, MorId), &Pushout)> {
        self.pushouts.iter()
    }

    pub fn coproduct(&self, a: ObjId, b: ObjId) -> Option<&Coproduct> {
        self.coproducts.get(&(a, b))
    }

    pub fn coproducts(&self) -> impl Iterator<Item = (&(ObjId, ObjId), &Coproduct)> {
        self.coproducts.iter()
    }

    pub fn cylinder(&self, a: ObjId) -> Option<&Cylinder> {
        self.cylinders.get(&a)
    }

    pub fn cylinders(&self) -> impl Iterator<Item = (&ObjId, &Cylinder)> {
        self.cylinders.iter()
    }

    /// The unique morphism `0 → A`.
    pub fn from_zero(&self, a: ObjId) -> Option<MorId> {
        match self.cat.hom(self.zero, a) {
            [f] => Some(*f),
            _ => None,
        }
    }

    /// The unique morphism `A → 0`.
    pub fn to_zero(&self, a: ObjId) -> Option<MorId> {
        match self.cat.hom(a, self.zero) {
            [f] => Some(*f),
            _ => None,
        }
    }

    /// The zero morphism `A → 0 → B`.
    pub fn zero_map(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        let (f, g) = (self.to_zero(a)?, self.from_zero(b)?);
        self.cat.compose(g, f)
    }
}

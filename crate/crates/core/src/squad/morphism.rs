use std::sync::Arc;

use num_bigint::BigInt;

use super::engine::{Pi1, Squad};
use super::expr::{Expr1, Word0};
use super::nil2::{inv, mul, pow, sv_to_dense, BracketLaw, Cocycle, Elem, FreeLaw};
use super::SquadError;
use crate::lattice::{AbHom, IntMatrix};

/// A map of presented squads given on generators.
#[derive(Clone, Debug)]
pub struct SquadMorphism {
    pub source: Arc<Squad>,
    pub target: Arc<Squad>,
    /// Image word of each degree-0 generator of the source.
    pub image0: Vec<Word0>,
    /// Image expression of each degree-1 generator of the source.
    pub image1: Vec<Expr1>,
}

/// A single failed compatibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `∂f(e) ≠ f(∂e)`.
    Boundary { generator: String },
    /// A defining bracket relation of the source does not map to zero.
    Bracket { relation: String },
    Relation0 { index: usize, text: String },
    Relation1 { index: usize, text: String },
}

impl std::fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MorphismViolation::Boundary { generator } => write!(f, "boundary not preserved on {generator}"),
            MorphismViolation::Bracket { relation } => write!(f, "bracket relation {relation} not preserved"),
            MorphismViolation::Relation0 { index, text } => write!(f, "rels0[{index}] = {text} not preserved"),
            MorphismViolation::Relation1 { index, text } => write!(f, "rels1[{index}] = {text} not preserved"),
        }
    }
}

/// Images of the source generators evaluated in the target.
struct Compiled<'a> {
    target: &'a Squad,
    f0: Vec<Elem>,
    ab0: Vec<Vec<i64>>,
    f1: Vec<Elem>,
}

impl<'a> Compiled<'a> {
    fn new(m: &'a SquadMorphism) -> Result<Self, SquadError> {
        let (s, t) = (&*m.source, &*m.target);
        if m.image0.len() != s.n0() || m.image1.len() != s.n1() {
            return Err(SquadError::DimensionMismatch);
        }
        let f0: Vec<Elem> = m.image0.iter().map(|w| t.word_raw(w)).collect::<Result<_, _>>()?;
        let ab0 = f0.iter().map(|x| sv_to_dense(&x.u, t.n0())).collect();
        let f1 = m.image1.iter().map(|e| t.eval_raw(e)).collect::<Result<_, _>>()?;
        Ok(Compiled { target: t, f0, ab0, f1 })
    }

    fn apply0(&self, x: &Elem) -> Result<Elem, SquadError> {
        let law: &FreeLaw = self.target.law0();
        let mut acc = Elem::identity(law.central_dim());
        for &(i, a) in &x.u {
            acc = mul(law, &acc, &pow(law, &self.f0[i as usize], a)?)?;
        }
        // the basis commutator [g_i, g_j] goes to the commutator of the images
        let mut c = vec![0; law.central_dim()];
        let n = self.f0.len();
        for i in 0..n {
            for j in 0..i {
                let q = x.c[FreeLaw::pair_index(i, j)];
                if q != 0 {
                    law.commutator(&self.f0[i].u, &self.f0[j].u, &mut c, q)?;
                }
            }
        }
        mul(law, &acc, &Elem::central(c))
    }

    fn apply1(&self, x: &Elem) -> Result<Elem, SquadError> {
        let law: &BracketLaw = self.target.law1();
        let mut acc = Elem::identity(law.central_dim());
        for &(i, a) in &x.u {
            acc = mul(law, &acc, &pow(law, &self.f1[i as usize], a)?)?;
        }
        let n = self.f0.len();
        let mut c = vec![0; law.central_dim()];
        for (p, &q) in x.c.iter().enumerate() {
            if q != 0 {
                let (k, l) = (p / n, p % n);
                law.add_bracket(&mut c, &self.ab0[k], &self.f0[l].u, q)?;
            }
        }
        mul(law, &acc, &Elem::central(c))
    }
}

impl SquadMorphism {
    pub fn new(source: Arc<Squad>, target: Arc<Squad>, image0: Vec<Word0>, image1: Vec<Expr1>) -> Self {
        SquadMorphism { source, target, image0, image1 }
    }

    /// All compatibility conditions that fail; empty for a genuine morphism.
    pub fn verify(&self) -> Result<Vec<MorphismViolation>, SquadError> {
        let cm = Compiled::new(self)?;
        let (s, t) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        for (i, (name, bd)) in s.presentation().gens1.iter().enumerate() {
            let lhs = t.boundary_raw(&cm.f1[i])?;
            let rhs = cm.apply0(&s.word_raw(bd)?)?;
            if !t.is_trivial0(mul(t.law0(), &lhs, &inv(t.law0(), &rhs)?)?)? {
                out.push(MorphismViolation::Boundary { generator: name.clone() });
            }
        }
        for (text, c) in s.bracket_relations() {
            if !t.is_trivial1(cm.apply1(&Elem::central(c.clone()))?)? {
                out.push(MorphismViolation::Bracket { relation: text.clone() });
            }
        }
        for (index, r) in s.presentation().rels0.iter().enumerate() {
            if !t.is_trivial0(cm.apply0(&s.word_raw(r)?)?)? {
                out.push(MorphismViolation::Relation0 { index, text: r.to_string() });
            }
        }
        for (index, r) in s.presentation().rels1.iter().enumerate() {
            if !t.is_trivial1(cm.apply1(&s.eval_raw(r)?)?)? {
                out.push(MorphismViolation::Relation1 { index, text: r.to_string() });
            }
        }
        Ok(out)
    }

    /// Image of a degree-0 element, canonical in the target.
    pub fn apply0(&self, x: &super::C0Element) -> Result<super::C0Element, SquadError> {
        let cm = Compiled::new(self)?;
        let y = cm.apply0(&self.source.from_c0(x)?)?;
        Ok(self.target.to_c0(self.target.canon0(y)?))
    }

    /// Image of a degree-1 element, canonical in the target.
    pub fn apply1(&self, x: &super::C1Element) -> Result<super::C1Element, SquadError> {
        let cm = Compiled::new(self)?;
        let y = cm.apply1(&self.source.from_c1(x)?)?;
        Ok(self.target.to_c1(self.target.canon1(y)?))
    }

    /// Induced maps on `π₀` and `π₁`. Fails on an invalid morphism.
    pub fn homotopy_group_maps(&self) -> Result<(AbHom, AbHom), SquadError> {
        let bad = self.verify()?;
        if !bad.is_empty() {
            return Err(SquadError::InvalidMorphism(bad.iter().map(ToString::to_string).collect()));
        }
        let cm = Compiled::new(self)?;
        let (s, t) = (&*self.source, &*self.target);
        let cols0: Vec<Vec<BigInt>> =
            cm.ab0.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let m0 = IntMatrix::from_columns(t.n0(), &cols0);
        let pi0 = AbHom::new(s.pi0(), t.pi0(), m0)?;
        let sp: &Pi1 = s.pi1()?;
        let tp: &Pi1 = t.pi1()?;
        let mut cols1 = Vec::with_capacity(sp.generators.len());
        for g in &sp.generators {
            let y = cm.apply1(&s.from_c1(g)?)?;
            cols1.push(t.pi1_coordinates_raw(&y)?);
        }
        let m1 = IntMatrix::from_columns(tp.group.n_gens(), &cols1);
        let pi1 = AbHom::new(sp.group.clone(), tp.group.clone(), m1)?;
        Ok((pi0, pi1))
    }
}

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::expr::{Dim, Expr1, SquadPresentation, Word0};
use super::nil2::{
    inv, mul, pow, sv_from_dense, sv_to_dense, BracketLaw, Cocycle, Elem, FreeLaw, NilEchelon, SVec,
};
use super::SquadError;
use crate::lattice::{hom_kernel, lattice_member, AbHom, FgAbelianGroup, IntMatrix, Lattice, TrackedEchelon};

/// Element of `C₀` in normal form `g₁^{a₁}···g_n^{a_n}·c`; `c` is indexed by
/// basis commutators `[g_i, g_j]`, `i > j`, at position `i(i−1)/2 + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct C0Element {
    pub a: Vec<i64>,
    pub c: Vec<i64>,
}

/// Element of `C₁` as `e₁^{u₁}···e_m^{u_m} + b`; `b` is indexed by ordered
/// pairs `⟨k, l⟩` of degree-0 generators at position `k·n0 + l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct C1Element {
    pub u: Vec<i64>,
    pub b: Vec<i64>,
}

/// Element of either dimension, for dimension-checked comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquadElement {
    Zero(C0Element),
    One(C1Element),
}

/// `π₁` with explicit generators in `C₁`.
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub group: FgAbelianGroup,
    pub generators: Vec<C1Element>,
    lifts: Vec<Elem>,
    quotient_u: FgAbelianGroup,
    /// Canonical `Z^{n1}/U` coordinates of each kernel generator.
    kernel_canon: IntMatrix,
    bker: Lattice,
}

/// A compiled presentation: the quotient groups `C₀`, `C₁` with their
/// structure maps.
///
/// `C₀` is the free class-2 nilpotent group on `gens0` modulo the normal
/// closure of `rels0`. `C₁` is the central extension of `Z^{gens1}` by the
/// bracket group on ordered pairs of degree-0 generators, with commutators
/// `[e_j, e_i] = ⟨∂e_i, ∂e_j⟩`, modulo bilinearity over `rels0`,
/// antisymmetry, `⟨∂e, ∂e⟩ = 0` and the subgroup generated by `rels1`.
#[derive(Debug)]
pub struct Squad {
    pres: SquadPresentation,
    idx0: HashMap<String, usize>,
    idx1: HashMap<String, usize>,
    law0: FreeLaw,
    law1: BracketLaw,
    bd1: Vec<Elem>,
    rels0_ab: Vec<Vec<i64>>,
    /// Central relations of `C₁` with a printable description.
    brels: Vec<(String, Vec<i64>)>,
    n0: NilEchelon,
    n1: NilEchelon,
    pi1: OnceLock<Result<Pi1, SquadError>>,
}

impl Squad {
    pub fn new(pres: SquadPresentation) -> Result<Squad, SquadError> {
        let mut s = Self::skeleton(pres)?;
        let bad = s.ill_formed_relations()?;
        if !bad.is_empty() {
            let texts = bad.iter().map(|&i| s.pres.rels1[i].to_string()).collect();
            return Err(SquadError::IllFormed(texts));
        }
        for k in 0..s.pres.rels1.len() {
            let x = s.eval_raw(&s.pres.rels1[k])?;
            s.n1.insert(&s.law1, x)?;
        }
        Ok(s)
    }

    /// Indices of degree-1 relations whose boundary is not the identity.
    pub fn check_well_formed(pres: &SquadPresentation) -> Result<Vec<usize>, SquadError> {
        Self::skeleton(pres.clone())?.ill_formed_relations()
    }

    fn ill_formed_relations(&self) -> Result<Vec<usize>, SquadError> {
        let mut bad = Vec::new();
        for (k, r) in self.pres.rels1.iter().enumerate() {
            let x = self.eval_raw(r)?;
            let d = self.boundary_raw(&x)?;
            if !self.n0.contains(&self.law0, d)? {
                bad.push(k);
            }
        }
        Ok(bad)
    }

    /// Everything except the degree-1 relations.
    fn skeleton(pres: SquadPresentation) -> Result<Squad, SquadError> {
        let mut idx0 = HashMap::new();
        for (i, g) in pres.gens0.iter().enumerate() {
            if idx0.insert(g.clone(), i).is_some() {
                return Err(SquadError::DuplicateGenerator(g.clone()));
            }
        }
        let mut idx1 = HashMap::new();
        for (i, (g, _)) in pres.gens1.iter().enumerate() {
            if idx1.insert(g.clone(), i).is_some() {
                return Err(SquadError::DuplicateGenerator(g.clone()));
            }
        }
        let n0 = pres.gens0.len();
        let law0 = FreeLaw { n: n0 };
        let m0 = law0.central_dim();
        let word = |w: &Word0| word_elem(&law0, &idx0, w);

        let mut ech0 = NilEchelon::new(m0);
        let mut rels0_ab = Vec::new();
        let mut rels0_raw = Vec::new();
        for r in &pres.rels0 {
            let x = word(r)?;
            rels0_ab.push(sv_to_dense(&x.u, n0));
            rels0_raw.push(x);
        }
        // normal closure: conjugates add the commutators [r, g_i]
        for x in &rels0_raw {
            for i in 0..n0 {
                let mut c = vec![0; m0];
                law0.commutator(&x.u, &vec![(i as u32, 1)], &mut c, 1)?;
                ech0.insert_central(c)?;
            }
        }
        for x in rels0_raw {
            ech0.insert(&law0, x)?;
        }

        let mut bd1 = Vec::new();
        let mut d = Vec::new();
        for (_, b) in &pres.gens1 {
            let x = word(b)?;
            d.push(x.u.clone());
            bd1.push(x);
        }
        let law1 = BracketLaw { n0, d };
        let mb = law1.central_dim();
        let mut brels: Vec<(String, Vec<i64>)> = Vec::new();
        for (r, rho) in pres.rels0.iter().zip(&rels0_ab) {
            for j in 0..n0 {
                let e = vec![(j as u32, 1)];
                let mut c = vec![0; mb];
                law1.add_bracket(&mut c, rho, &e, 1)?;
                brels.push((format!("<{r} | +{}>", pres.gens0[j]), c));
                let mut c = vec![0; mb];
                law1.add_bracket(&mut c, &sv_to_dense(&e, n0), &sv_from_dense(rho), 1)?;
                brels.push((format!("<+{} | {r}>", pres.gens0[j]), c));
            }
        }
        for k in 0..n0 {
            for l in k..n0 {
                let mut c = vec![0; mb];
                c[law1.bracket_index(k, l)] += 1;
                c[law1.bracket_index(l, k)] += 1;
                brels.push((format!("<+{a} | +{b}> + <+{b} | +{a}>", a = pres.gens0[k], b = pres.gens0[l]), c));
            }
        }
        // ⟨∂c, ∂c⟩ = [c, c] = 0 for every degree-1 element; generators suffice.
        for (di, (name, _)) in law1.d.iter().zip(&pres.gens1) {
            let mut c = vec![0; mb];
            law1.add_bracket(&mut c, &sv_to_dense(di, n0), di, 1)?;
            brels.push((format!("<d{name} | d{name}>"), c));
        }
        let mut ech1 = NilEchelon::new(mb);
        for (_, c) in &brels {
            ech1.insert_central(c.clone())?;
        }
        Ok(Squad {
            pres,
            idx0,
            idx1,
            law0,
            law1,
            bd1,
            rels0_ab,
            brels,
            n0: ech0,
            n1: ech1,
            pi1: OnceLock::new(),
        })
    }

    pub fn presentation(&self) -> &SquadPresentation {
        &self.pres
    }

    pub fn n0(&self) -> usize {
        self.pres.gens0.len()
    }

    pub fn n1(&self) -> usize {
        self.pres.gens1.len()
    }

    pub fn gen0_index(&self, name: &str) -> Option<usize> {
        self.idx0.get(name).copied()
    }

    pub fn gen1_index(&self, name: &str) -> Option<usize> {
        self.idx1.get(name).copied()
    }

    pub(crate) fn bracket_relations(&self) -> &[(String, Vec<i64>)] {
        &self.brels
    }

    pub(crate) fn m0(&self) -> usize {
        self.law0.central_dim()
    }

    pub(crate) fn mb(&self) -> usize {
        self.law1.central_dim()
    }

    // ---- raw arithmetic ----

    pub(crate) fn word_raw(&self, w: &Word0) -> Result<Elem, SquadError> {
        word_elem(&self.law0, &self.idx0, w)
    }

    pub(crate) fn eval_raw(&self, e: &Expr1) -> Result<Elem, SquadError> {
        let mb = self.mb();
        Ok(match e {
            Expr1::Zero => Elem::identity(mb),
            Expr1::Gen(n) => {
                let i = *self
                    .idx1
                    .get(n)
                    .ok_or_else(|| SquadError::UnknownSymbol { name: n.clone(), dim: Dim::One })?;
                Elem::generator(i, mb)
            }
            Expr1::Bracket(a, b) => {
                let x = self.word_raw(a)?;
                let y = self.word_raw(b)?;
                Elem::central(self.bracket_vec(&sv_to_dense(&x.u, self.n0()), &y.u)?)
            }
            Expr1::Act(x, w) => {
                let y = self.eval_raw(x)?;
                let g = self.word_raw(w)?;
                self.act_raw(&y, &g.u)?
            }
            Expr1::Neg(x) => inv(&self.law1, &self.eval_raw(x)?)?,
            Expr1::Sum(ts) => {
                let mut acc = Elem::identity(mb);
                for t in ts {
                    acc = mul(&self.law1, &acc, &self.eval_raw(t)?)?;
                }
                acc
            }
        })
    }

    fn bracket_vec(&self, x: &[i64], y: &SVec) -> Result<Vec<i64>, SquadError> {
        let mut c = vec![0; self.mb()];
        self.law1.add_bracket(&mut c, x, y, 1)?;
        Ok(c)
    }

    /// `x^g = x + ⟨g, ∂x⟩`; only the abelianization of `g` matters.
    pub(crate) fn act_raw(&self, x: &Elem, g_ab: &SVec) -> Result<Elem, SquadError> {
        let dx = self.law1.ab_boundary(&x.u)?;
        let c = self.bracket_vec(&sv_to_dense(g_ab, self.n0()), &sv_from_dense(&dx))?;
        mul(&self.law1, x, &Elem::central(c))
    }

    pub(crate) fn boundary_raw(&self, x: &Elem) -> Result<Elem, SquadError> {
        let m0 = self.m0();
        let mut acc = Elem::identity(m0);
        for &(i, ui) in &x.u {
            acc = mul(&self.law0, &acc, &pow(&self.law0, &self.bd1[i as usize], ui)?)?;
        }
        let mut c = vec![0; m0];
        self.boundary_bracket(&x.c, &mut c)?;
        mul(&self.law0, &acc, &Elem::central(c))
    }

    /// `∂⟨k, l⟩ = [g_l, g_k]`.
    fn boundary_bracket(&self, b: &[i64], out: &mut [i64]) -> Result<(), SquadError> {
        let n0 = self.n0();
        for (p, &v) in b.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let (k, l) = (p / n0, p % n0);
            if l > k {
                let q = FreeLaw::pair_index(l, k);
                out[q] = out[q].checked_add(v).ok_or(SquadError::Overflow)?;
            } else if l < k {
                let q = FreeLaw::pair_index(k, l);
                out[q] = out[q].checked_sub(v).ok_or(SquadError::Overflow)?;
            }
        }
        Ok(())
    }

    pub(crate) fn canon0(&self, x: Elem) -> Result<Elem, SquadError> {
        self.n0.canonical(&self.law0, x)
    }

    pub(crate) fn canon1(&self, x: Elem) -> Result<Elem, SquadError> {
        self.n1.canonical(&self.law1, x)
    }

    pub(crate) fn is_trivial0(&self, x: Elem) -> Result<bool, SquadError> {
        self.n0.contains(&self.law0, x)
    }

    pub(crate) fn is_trivial1(&self, x: Elem) -> Result<bool, SquadError> {
        self.n1.contains(&self.law1, x)
    }

    pub(crate) fn law0(&self) -> &FreeLaw {
        &self.law0
    }

    pub(crate) fn law1(&self) -> &BracketLaw {
        &self.law1
    }

    pub(crate) fn to_c0(&self, x: Elem) -> C0Element {
        C0Element { a: sv_to_dense(&x.u, self.n0()), c: x.c }
    }

    pub(crate) fn to_c1(&self, x: Elem) -> C1Element {
        C1Element { u: sv_to_dense(&x.u, self.n1()), b: x.c }
    }

    pub(crate) fn from_c0(&self, x: &C0Element) -> Result<Elem, SquadError> {
        if x.a.len() != self.n0() || x.c.len() != self.m0() {
            return Err(SquadError::DimensionMismatch);
        }
        Ok(Elem { u: sv_from_dense(&x.a), c: x.c.clone() })
    }

    pub(crate) fn from_c1(&self, x: &C1Element) -> Result<Elem, SquadError> {
        if x.u.len() != self.n1() || x.b.len() != self.mb() {
            return Err(SquadError::DimensionMismatch);
        }
        Ok(Elem { u: sv_from_dense(&x.u), c: x.b.clone() })
    }

    // ---- public element operations (all results canonical) ----

    pub fn normalize0(&self, w: &Word0) -> Result<C0Element, SquadError> {
        let x = self.word_raw(w)?;
        Ok(self.to_c0(self.canon0(x)?))
    }

    pub fn eval1(&self, e: &Expr1) -> Result<C1Element, SquadError> {
        let x = self.eval_raw(e)?;
        Ok(self.to_c1(self.canon1(x)?))
    }

    pub fn boundary(&self, x: &C1Element) -> Result<C0Element, SquadError> {
        let d = self.boundary_raw(&self.from_c1(x)?)?;
        Ok(self.to_c0(self.canon0(d)?))
    }

    pub fn mul0(&self, x: &C0Element, y: &C0Element) -> Result<C0Element, SquadError> {
        let z = mul(&self.law0, &self.from_c0(x)?, &self.from_c0(y)?)?;
        Ok(self.to_c0(self.canon0(z)?))
    }

    pub fn inv0(&self, x: &C0Element) -> Result<C0Element, SquadError> {
        let z = inv(&self.law0, &self.from_c0(x)?)?;
        Ok(self.to_c0(self.canon0(z)?))
    }

    pub fn mul1(&self, x: &C1Element, y: &C1Element) -> Result<C1Element, SquadError> {
        let z = mul(&self.law1, &self.from_c1(x)?, &self.from_c1(y)?)?;
        Ok(self.to_c1(self.canon1(z)?))
    }

    pub fn inv1(&self, x: &C1Element) -> Result<C1Element, SquadError> {
        let z = inv(&self.law1, &self.from_c1(x)?)?;
        Ok(self.to_c1(self.canon1(z)?))
    }

    /// `⟨x, y⟩`, through the abelianizations.
    pub fn bracket(&self, x: &C0Element, y: &C0Element) -> Result<C1Element, SquadError> {
        let c = self.bracket_vec(&self.from_c0(x)?.u.iter().fold(vec![0; self.n0()], |mut v, &(i, a)| {
            v[i as usize] = a;
            v
        }), &self.from_c0(y)?.u)?;
        Ok(self.to_c1(self.canon1(Elem::central(c))?))
    }

    /// Right action `x^g = x + ⟨g, ∂x⟩`.
    pub fn act(&self, x: &C1Element, g: &C0Element) -> Result<C1Element, SquadError> {
        let z = self.act_raw(&self.from_c1(x)?, &self.from_c0(g)?.u)?;
        Ok(self.to_c1(self.canon1(z)?))
    }

    pub fn identity0(&self) -> C0Element {
        self.to_c0(Elem::identity(self.m0()))
    }

    pub fn identity1(&self) -> C1Element {
        self.to_c1(Elem::identity(self.mb()))
    }

    pub fn generator0(&self, i: usize) -> C0Element {
        self.to_c0(Elem::generator(i, self.m0()))
    }

    pub fn generator1(&self, i: usize) -> Result<C1Element, SquadError> {
        Ok(self.to_c1(self.canon1(Elem::generator(i, self.mb()))?))
    }

    pub fn equal0(&self, x: &C0Element, y: &C0Element) -> Result<bool, SquadError> {
        let z = mul(&self.law0, &self.from_c0(x)?, &inv(&self.law0, &self.from_c0(y)?)?)?;
        self.is_trivial0(z)
    }

    pub fn equal1(&self, x: &C1Element, y: &C1Element) -> Result<bool, SquadError> {
        let z = mul(&self.law1, &self.from_c1(x)?, &inv(&self.law1, &self.from_c1(y)?)?)?;
        self.is_trivial1(z)
    }

    /// Dimension-checked equality.
    pub fn equal(&self, dim: Dim, x: &SquadElement, y: &SquadElement) -> Result<bool, SquadError> {
        match (dim, x, y) {
            (Dim::Zero, SquadElement::Zero(a), SquadElement::Zero(b)) => self.equal0(a, b),
            (Dim::One, SquadElement::One(a), SquadElement::One(b)) => self.equal1(a, b),
            _ => Err(SquadError::DimensionMismatch),
        }
    }

    /// Equality of two expressions in `C₁`, without canonicalizing either.
    pub fn expr_equal(&self, a: &Expr1, b: &Expr1) -> Result<bool, SquadError> {
        let z = mul(&self.law1, &self.eval_raw(a)?, &inv(&self.law1, &self.eval_raw(b)?)?)?;
        self.is_trivial1(z)
    }

    // ---- homotopy groups ----

    fn ab_relation_columns(&self) -> Vec<Vec<BigInt>> {
        self.rels0_ab.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// `π₀ = C₀/∂C₁`, abelian: degree-0 generators modulo abelianized
    /// `rels0` and abelianized generator boundaries.
    pub fn pi0(&self) -> FgAbelianGroup {
        let n0 = self.n0();
        let mut cols = self.ab_relation_columns();
        for d in &self.law1.d {
            cols.push(sv_to_dense(d, n0).into_iter().map(BigInt::from).collect());
        }
        FgAbelianGroup::from_relation_columns(n0, &cols)
    }

    pub fn pi1(&self) -> Result<&Pi1, SquadError> {
        self.pi1.get_or_init(|| self.compute_pi1()).as_ref().map_err(Clone::clone)
    }

    fn compute_pi1(&self) -> Result<Pi1, SquadError> {
        let (n0, n1, m0, mb) = (self.n0(), self.n1(), self.m0(), self.mb());
        // (a) u-vectors with trivial abelianized boundary, modulo the relation vectors
        let u_rels: Vec<Vec<BigInt>> =
            self.n1.rows().iter().map(|r| sv_to_dense(&r.u, n1).into_iter().map(BigInt::from).collect()).collect();
        let quotient_u = FgAbelianGroup::from_relation_columns(n1, &u_rels);
        let target = FgAbelianGroup::from_relation_columns(n0, &self.ab_relation_columns());
        let mut dmat = IntMatrix::zeros(n0, n1);
        for (i, di) in self.law1.d.iter().enumerate() {
            for &(k, v) in di {
                dmat.set(k as usize, i, BigInt::from(v));
            }
        }
        let dmap = AbHom::new(quotient_u.clone(), target, dmat)?;
        let (kgrp, kincl) = hom_kernel(&dmap)?;
        let k = kgrp.n_gens();

        // ∂ on brackets together with the central relations of C₀
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(mb);
        for p in 0..mb {
            let mut e = vec![0; mb];
            e[p] = 1;
            let mut out = vec![0; m0];
            self.boundary_bracket(&e, &mut out)?;
            cols.push(out.into_iter().map(BigInt::from).collect());
        }
        for row in self.n0.central().basis() {
            cols.push(row.iter().map(|&x| BigInt::from(x)).collect());
        }
        let solver = TrackedEchelon::from_columns(m0, &cols);
        let mut bker = Lattice::new(mb);
        for v in solver.kernel() {
            bker.insert(v[..mb].to_vec());
        }
        bker.normalize();

        // (b) lift each kernel generator to an element with trivial boundary
        let mut lifts = Vec::with_capacity(k);
        for j in 0..k {
            let u: Vec<i64> =
                (0..n1).map(|i| big_to_i64(kincl.matrix.get(i, j))).collect::<Result<_, _>>()?;
            let u = sv_from_dense(&u);
            let p = self.boundary_raw(&Elem { u: u.clone(), c: vec![0; mb] })?;
            let r = self.n0.reduce_vector(&self.law0, p)?;
            if !r.u.is_empty() {
                return Err(SquadError::UnresolvedKernel("kernel vector has nontrivial abelian boundary".into()));
            }
            let rhs: Vec<BigInt> = r.c.iter().map(|&x| BigInt::from(-x)).collect();
            let sol = solver
                .solve(&rhs)
                .ok_or_else(|| SquadError::UnresolvedKernel("no bracket part cancels the collection term".into()))?;
            let b: Vec<i64> = sol[..mb].iter().map(big_to_i64).collect::<Result<_, _>>()?;
            lifts.push(Elem { u, c: b });
        }

        // (c, d) relations: kernel relations pushed through the lifts, then the central lattice
        let r = bker.rank();
        let mut rel_cols = Vec::new();
        for rho in kgrp.relations().columns() {
            let rho_i: Vec<i64> = rho.iter().map(big_to_i64).collect::<Result<_, _>>()?;
            let s = self.lift_product(&lifts, &rho_i)?;
            let y = self.n1.reduce_vector(&self.law1, s)?;
            if !y.u.is_empty() {
                return Err(SquadError::UnresolvedKernel("kernel relation does not reduce".into()));
            }
            let beta = bker_coords(&bker, &y.c)?;
            let mut col = rho.clone();
            col.extend(beta.into_iter().map(|x| -x));
            rel_cols.push(col);
        }
        for l in self.n1.central().basis() {
            let mut col = vec![BigInt::zero(); k];
            col.extend(bker_coords(&bker, l)?);
            rel_cols.push(col);
        }
        let group = FgAbelianGroup::from_relation_columns(k + r, &rel_cols);

        let mut generators: Vec<C1Element> = lifts.iter().map(|x| self.to_c1(x.clone())).collect();
        for v in bker.basis() {
            let c: Vec<i64> = v.iter().map(big_to_i64).collect::<Result<_, _>>()?;
            generators.push(self.to_c1(Elem::central(c)));
        }
        let canon = quotient_u.canonical();
        let kernel_canon = canon.proj.mul(&kincl.matrix)?;
        Ok(Pi1 { group, generators, lifts, quotient_u, kernel_canon, bker })
    }

    fn lift_product(&self, lifts: &[Elem], n: &[i64]) -> Result<Elem, SquadError> {
        let mut acc = Elem::identity(self.mb());
        for (x, &e) in lifts.iter().zip(n) {
            if e != 0 {
                acc = mul(&self.law1, &acc, &pow(&self.law1, x, e)?)?;
            }
        }
        Ok(acc)
    }

    /// Coordinates of a kernel element with respect to `pi1().generators`.
    pub(crate) fn pi1_coordinates_raw(&self, x: &Elem) -> Result<Vec<BigInt>, SquadError> {
        let pi1 = self.pi1()?;
        let canon = pi1.quotient_u.canonical();
        let u: Vec<BigInt> = sv_to_dense(&x.u, self.n1()).into_iter().map(BigInt::from).collect();
        let y = canon.coordinates(&u);
        let mut m = pi1.kernel_canon.clone();
        let mut extra = Vec::new();
        for (i, d) in canon.invariants.iter().enumerate() {
            if !d.is_zero() {
                let mut col = vec![BigInt::zero(); canon.invariants.len()];
                col[i] = d.clone();
                extra.push(col);
            }
        }
        m = m.hcat(&IntMatrix::from_columns(canon.invariants.len(), &extra))?;
        let k = pi1.lifts.len();
        let sol = lattice_member(&m, &y)?
            .ok_or_else(|| SquadError::UnresolvedKernel("element is not in the kernel of the boundary".into()))?;
        let n: Vec<i64> = sol[..k].iter().map(big_to_i64).collect::<Result<_, _>>()?;
        let s = self.lift_product(&pi1.lifts, &n)?;
        let z = mul(&self.law1, x, &inv(&self.law1, &s)?)?;
        let z = self.n1.reduce_vector(&self.law1, z)?;
        if !z.u.is_empty() {
            return Err(SquadError::UnresolvedKernel("residual vector part after lifting".into()));
        }
        let mut out: Vec<BigInt> = n.into_iter().map(BigInt::from).collect();
        out.extend(bker_coords(&pi1.bker, &z.c)?);
        Ok(out)
    }

    /// Coordinates of an element of `ker ∂` in the generators of `π₁`.
    pub fn pi1_coordinates(&self, x: &C1Element) -> Result<Vec<BigInt>, SquadError> {
        let e = self.from_c1(x)?;
        if !self.is_trivial0(self.boundary_raw(&e)?)? {
            return Err(SquadError::UnresolvedKernel("element has nontrivial boundary".into()));
        }
        self.pi1_coordinates_raw(&e)
    }

    /// `k: π₀ ⊗ Z/2 → π₁`, `x ⊗ 1 ↦ ⟨x, x⟩`, on the degree-0 generators.
    pub fn k_invariant(&self) -> Result<AbHom, SquadError> {
        let n0 = self.n0();
        let pi0 = self.pi0();
        let mut two = IntMatrix::zeros(n0, n0);
        for i in 0..n0 {
            two.set(i, i, BigInt::from(2));
        }
        let domain = FgAbelianGroup::new(n0, pi0.relations().hcat(&two)?)?;
        let pi1 = self.pi1()?;
        let mut cols = Vec::with_capacity(n0);
        for i in 0..n0 {
            let mut c = vec![0; self.mb()];
            c[self.law1.bracket_index(i, i)] = 1;
            cols.push(self.pi1_coordinates_raw(&Elem::central(c))?);
        }
        let matrix = IntMatrix::from_columns(pi1.group.n_gens(), &cols);
        let k = AbHom::new(domain, pi1.group.clone(), matrix)?;
        if !k.is_well_defined() {
            return Err(SquadError::UnresolvedKernel("k-invariant is not well defined".into()));
        }
        Ok(k)
    }
}

fn bker_coords(bker: &Lattice, c: &[i64]) -> Result<Vec<BigInt>, SquadError> {
    let v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
    bker.coordinates(&v)
        .ok_or_else(|| SquadError::UnresolvedKernel("central part lies outside the bracket kernel".into()))
}

pub(crate) fn big_to_i64(x: &BigInt) -> Result<i64, SquadError> {
    x.to_i64().ok_or(SquadError::Overflow)
}

pub(crate) fn word_elem(law: &FreeLaw, idx: &HashMap<String, usize>, w: &Word0) -> Result<Elem, SquadError> {
    let m = law.central_dim();
    let mut acc = Elem::identity(m);
    for l in w.letters() {
        let i = *idx.get(&l.name).ok_or_else(|| SquadError::UnknownSymbol { name: l.name.clone(), dim: Dim::Zero })?;
        let g = Elem::generator(i, m);
        let g = if l.inverse { inv(law, &g)? } else { g };
        acc = mul(law, &acc, &g)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::squad::{parse_expr, parse_sqpres, parse_word};

    fn squad(text: &str) -> Squad {
        Squad::new(parse_sqpres(text).unwrap()).unwrap()
    }

    #[test]
    fn free_on_one_generator() {
        let s = squad("gens0:\n  e\n");
        assert_eq!(s.pi0().invariant_factors().to_string(), "Z");
        assert_eq!(s.pi1().unwrap().group.invariant_factors().to_string(), "Z/2");
        let k = s.k_invariant().unwrap();
        assert!(!k.canonical_matrix().is_zero());
    }

    #[test]
    fn free_on_two_generators() {
        let s = squad("gens0:\n  a\n  b\n");
        assert_eq!(s.pi0().invariant_factors().to_string(), "Z^2");
        assert_eq!(s.pi1().unwrap().group.invariant_factors().to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn loop_generator_is_free() {
        let s = squad("gens1:\n  x := 0\n");
        assert!(s.pi0().is_trivial());
        assert_eq!(s.pi1().unwrap().group.invariant_factors().to_string(), "Z");
    }

    #[test]
    fn cone_is_contractible() {
        let s = squad("gens0:\n  e\ngens1:\n  x := +e\n");
        assert!(s.pi0().is_trivial());
        assert!(s.pi1().unwrap().group.is_trivial());
    }

    #[test]
    fn moore_space_mod_two() {
        // x := 2e gives π₀ = Z/2 and π₁ = Z/2 generated by ⟨e, e⟩
        let s = squad("gens0:\n  e\ngens1:\n  x := +e +e\n");
        assert_eq!(s.pi0().invariant_factors().to_string(), "Z/2");
        let p = s.pi1().unwrap();
        assert_eq!(p.group.invariant_factors().to_string(), "Z/2");
        assert!(!s.k_invariant().unwrap().canonical_matrix().is_zero());
    }

    #[test]
    fn ill_formed_relation_is_rejected() {
        let p = parse_sqpres("gens0:\n  e\ngens1:\n  x := +e\nrels1:\n  x\n").unwrap();
        assert_eq!(Squad::check_well_formed(&p).unwrap(), vec![0]);
        assert!(matches!(Squad::new(p), Err(SquadError::IllFormed(_))));
    }

    #[test]
    fn stable_quadratic_module_identities() {
        let s = squad("gens0:\n  a\n  b\ngens1:\n  x := +a -b\n  y := +b +b\n");
        let x = s.eval1(&parse_expr("x").unwrap()).unwrap();
        let y = s.eval1(&parse_expr("y").unwrap()).unwrap();
        // ⟨∂x, ∂y⟩ = [y, x]
        let lhs = s.bracket(&s.boundary(&x).unwrap(), &s.boundary(&y).unwrap()).unwrap();
        let yx = s.mul1(&s.mul1(&y, &x).unwrap(), &s.inv1(&s.mul1(&x, &y).unwrap()).unwrap()).unwrap();
        assert!(s.equal1(&lhs, &yx).unwrap());
        // ∂⟨a, b⟩ = [b, a]
        let a = s.normalize0(&parse_word("+a").unwrap()).unwrap();
        let b = s.normalize0(&parse_word("+b").unwrap()).unwrap();
        let dab = s.boundary(&s.bracket(&a, &b).unwrap()).unwrap();
        let ba = s.normalize0(&parse_word("+b +a -b -a").unwrap()).unwrap();
        assert!(s.equal0(&dab, &ba).unwrap());
        // ⟨a, b⟩ + ⟨b, a⟩ = 0
        let sum = s.mul1(&s.bracket(&a, &b).unwrap(), &s.bracket(&b, &a).unwrap()).unwrap();
        assert!(s.equal1(&sum, &s.identity1()).unwrap());
        let d = SquadElement::Zero(a);
        assert_eq!(s.equal(Dim::One, &d, &d), Err(SquadError::DimensionMismatch));
    }

    #[test]
    fn pi1_coordinates_of_generators() {
        let s = squad("gens0:\n  a\n  b\ngens1:\n  x := 0\n");
        let p = s.pi1().unwrap().clone();
        for (i, g) in p.generators.iter().enumerate() {
            let c = s.pi1_coordinates(g).unwrap();
            let mut e = vec![BigInt::zero(); c.len()];
            e[i] = BigInt::from(1);
            assert!(p.group.equal(&c, &e).unwrap());
        }
    }
}

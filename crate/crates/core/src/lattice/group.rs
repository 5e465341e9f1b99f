use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::{axpy, Lattice, TrackedEchelon};
use super::snf::smith_with_left_inverse;
use super::{IntMatrix, LatticeError};

/// `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with `tᵢ | tᵢ₊₁` and every `tᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |a, t| a * t))
    }
}

impl fmt::Display for InvariantFactors {
    /// Renders as e.g. `Z^2 + Z/2 + Z/6`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Canonical decomposition of a group together with the coordinate change.
///
/// `proj` (k × n) sends generator coordinates to canonical coordinates, and
/// `incl` (n × k) sends canonical generators back. Canonical coordinate `i`
/// lives in `Z/invariants[i]` (with `0` meaning `Z`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalGroup {
    pub invariants: Vec<BigInt>,
    pub proj: IntMatrix,
    pub incl: IntMatrix,
}

impl CanonicalGroup {
    /// Canonical coordinates of `v`, each reduced into `[0, d)` for torsion slots.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.proj.mul_vec(v).expect("coordinate length");
        for (yi, d) in y.iter_mut().zip(&self.invariants) {
            if !d.is_zero() {
                *yi = yi.mod_floor(d);
            }
        }
        y
    }
}

/// Finitely generated abelian group `Z^n_gens / (column span of relations)`.
#[derive(Clone)]
pub struct FgAbelianGroup {
    n_gens: usize,
    relations: IntMatrix,
    canonical: OnceLock<CanonicalGroup>,
    hnf: OnceLock<Lattice>,
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n_gens == other.n_gens && self.relations == other.relations
    }
}

impl Eq for FgAbelianGroup {}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FgAbelianGroup")
            .field("n_gens", &self.n_gens)
            .field("relations", &self.relations)
            .finish()
    }
}

impl FgAbelianGroup {
    pub fn new(n_gens: usize, relations: IntMatrix) -> Result<Self, LatticeError> {
        if relations.rows() != n_gens {
            return Err(LatticeError::DimensionMismatch { expected: n_gens, found: relations.rows() });
        }
        Ok(FgAbelianGroup { n_gens, relations, canonical: OnceLock::new(), hnf: OnceLock::new() })
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0)).expect("shape")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Cyclic group `Z/n` (`n = 0` gives `Z`).
    pub fn cyclic(n: i64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[vec![n]])).expect("shape")
    }

    pub fn from_relation_columns(n_gens: usize, columns: &[Vec<BigInt>]) -> Self {
        Self::new(n_gens, IntMatrix::from_columns(n_gens, columns)).expect("shape")
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn canonical(&self) -> &CanonicalGroup {
        self.canonical.get_or_init(|| canonicalize(self.n_gens, &self.relations))
    }

    fn relation_lattice(&self) -> &Lattice {
        self.hnf.get_or_init(|| Lattice::from_generators(self.n_gens, self.relations.columns()))
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        let inv = &self.canonical().invariants;
        InvariantFactors {
            free_rank: inv.iter().filter(|d| d.is_zero()).count(),
            torsion: inv.iter().filter(|d| !d.is_zero()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical().invariants.is_empty()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), LatticeError> {
        if v.len() != self.n_gens {
            return Err(LatticeError::DimensionMismatch { expected: self.n_gens, found: v.len() });
        }
        Ok(())
    }

    /// True iff `v` is zero in the group.
    pub fn is_zero_element(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        self.check_len(v)?;
        Ok(self.relation_lattice().contains(v))
    }

    /// `v ≡ w` iff `v − w` lies in the relation lattice.
    pub fn equal(&self, v: &[BigInt], w: &[BigInt]) -> Result<bool, LatticeError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let d: Vec<BigInt> = v.iter().zip(w).map(|(a, b)| a - b).collect();
        Ok(self.relation_lattice().contains(&d))
    }

    /// Representative reduced against the Hermite basis of the relations;
    /// equal classes give identical vectors.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        self.check_len(v)?;
        Ok(self.relation_lattice().reduced(v))
    }

    /// Order of the element `v`, `None` when it has infinite order.
    pub fn element_order(&self, v: &[BigInt]) -> Result<Option<BigInt>, LatticeError> {
        self.check_len(v)?;
        let c = self.canonical();
        let y = c.coordinates(v);
        let mut order = BigInt::one();
        for (yi, d) in y.iter().zip(&c.invariants) {
            if yi.is_zero() {
                continue;
            }
            if d.is_zero() {
                return Ok(None);
            }
            let o = d / yi.gcd(d);
            order = order.lcm(&o);
        }
        Ok(Some(order))
    }
}

/// `G / ⟨extra columns⟩`, presented by concatenating the relation matrices.
pub fn quotient(g: &FgAbelianGroup, extra: &IntMatrix) -> Result<FgAbelianGroup, LatticeError> {
    if extra.rows() != g.n_gens() {
        return Err(LatticeError::DimensionMismatch { expected: g.n_gens(), found: extra.rows() });
    }
    FgAbelianGroup::new(g.n_gens(), g.relations().hcat(extra)?)
}

/// Sparse Tietze elimination followed by a dense Smith form on what is left.
fn canonicalize(n: usize, relations: &IntMatrix) -> CanonicalGroup {
    let mut rels: Vec<BTreeMap<usize, BigInt>> = Vec::new();
    for j in 0..relations.cols() {
        let col: BTreeMap<usize, BigInt> = (0..n)
            .filter(|&i| !relations.get(i, j).is_zero())
            .map(|i| (i, relations.get(i, j).clone()))
            .collect();
        if !col.is_empty() {
            rels.push(col);
        }
    }
    let mut alive_rel = vec![true; rels.len()];
    let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (r, col) in rels.iter().enumerate() {
        for &g in col.keys() {
            occ[g].insert(r);
        }
    }
    // expr[g] expresses an eliminated generator in the remaining ones.
    let mut expr: Vec<Option<BTreeMap<usize, BigInt>>> = vec![None; n];
    let mut expr_occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];

    loop {
        // Pick the unit entry whose generator appears least often, to limit fill-in.
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, col) in rels.iter().enumerate() {
            if !alive_rel[r] {
                continue;
            }
            for (&g, c) in col {
                if c.abs().is_one() {
                    let cost = occ[g].len() + expr_occ[g].len();
                    if best.map_or(true, |(_, _, bc)| cost < bc) {
                        best = Some((r, g, cost));
                    }
                }
            }
        }
        let Some((r, g, _)) = best else { break };
        let pivot_rel = rels[r].clone();
        let u = pivot_rel[&g].clone();
        alive_rel[r] = false;
        for &h in pivot_rel.keys() {
            occ[h].remove(&r);
        }
        // Substitute g := -u·Σ_{h≠g} c_h h into every relation and expression.
        let touched: Vec<usize> = occ[g].iter().copied().collect();
        for r2 in touched {
            let factor = -(&rels[r2][&g] * &u);
            apply_update(&mut rels[r2], &pivot_rel, &factor, r2, &mut occ);
        }
        let touched_e: Vec<usize> = expr_occ[g].iter().copied().collect();
        for e in touched_e {
            let ex = expr[e].as_mut().expect("expression");
            let factor = -(&ex[&g] * &u);
            apply_update(ex, &pivot_rel, &factor, e, &mut expr_occ);
        }
        let mut ex: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&h, c) in &pivot_rel {
            if h != g {
                ex.insert(h, -(c * &u));
            }
        }
        for &h in ex.keys() {
            expr_occ[h].insert(g);
        }
        expr[g] = Some(ex);
    }

    let survivors: Vec<usize> = (0..n).filter(|&g| expr[g].is_none()).collect();
    let pos: BTreeMap<usize, usize> = survivors.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let m = survivors.len();

    // Projection from original coordinates onto survivor coordinates.
    let mut proj_s = IntMatrix::zeros(m, n);
    for g in 0..n {
        match &expr[g] {
            None => proj_s.set(pos[&g], g, BigInt::one()),
            Some(ex) => {
                for (h, c) in ex {
                    proj_s.set(pos[h], g, c.clone());
                }
            }
        }
    }
    let remaining: Vec<Vec<BigInt>> = rels
        .iter()
        .zip(&alive_rel)
        .filter(|(col, &alive)| alive && !col.is_empty())
        .map(|(col, _)| {
            let mut v = vec![BigInt::zero(); m];
            for (h, c) in col {
                v[pos[h]] = c.clone();
            }
            v
        })
        .collect();
    let small = IntMatrix::from_columns(m, &remaining);
    let (form, uinv) = smith_with_left_inverse(&small);
    let diag_len = m.min(remaining.len());

    let mut invariants = Vec::new();
    let mut keep = Vec::new();
    for i in 0..m {
        let d = if i < diag_len { form.s.get(i, i).clone() } else { BigInt::zero() };
        if d.is_one() {
            continue;
        }
        keep.push(i);
        invariants.push(d);
    }
    // Free factors come last so torsion keeps its divisibility order first.
    let mut order: Vec<usize> = (0..keep.len()).collect();
    order.sort_by_key(|&k| invariants[k].is_zero());
    let keep: Vec<usize> = order.iter().map(|&k| keep[k]).collect();
    let invariants: Vec<BigInt> = order.iter().map(|&k| invariants[k].clone()).collect();

    let k = keep.len();
    let mut proj = IntMatrix::zeros(k, n);
    let mut incl = IntMatrix::zeros(n, k);
    for (new_i, &i) in keep.iter().enumerate() {
        // proj row = U[i, :] · proj_s
        for s in 0..m {
            let u = form.u.get(i, s);
            if u.is_zero() {
                continue;
            }
            for g in 0..n {
                let p = proj_s.get(s, g);
                if !p.is_zero() {
                    *proj.get_mut(new_i, g) += u * p;
                }
            }
        }
        // incl column = survivors embedding of U⁻¹[:, i]
        for s in 0..m {
            let x = uinv.get(s, i);
            if !x.is_zero() {
                incl.set(survivors[s], new_i, x.clone());
            }
        }
    }
    CanonicalGroup { invariants, proj, incl }
}

fn apply_update(
    target: &mut BTreeMap<usize, BigInt>,
    pivot: &BTreeMap<usize, BigInt>,
    factor: &BigInt,
    owner: usize,
    occ: &mut [BTreeSet<usize>],
) {
    for (&h, c) in pivot {
        let entry = target.entry(h).or_insert_with(BigInt::zero);
        *entry += factor * c;
        if entry.is_zero() {
            target.remove(&h);
            occ[h].remove(&owner);
        } else {
            occ[h].insert(owner);
        }
    }
}

/// Homomorphism given by an integer matrix on generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub domain: FgAbelianGroup,
    pub codomain: FgAbelianGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix: IntMatrix) -> Result<Self, LatticeError> {
        if matrix.rows() != codomain.n_gens() || matrix.cols() != domain.n_gens() {
            return Err(LatticeError::DimensionMismatch {
                expected: codomain.n_gens() * domain.n_gens(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        Ok(AbHom { domain, codomain, matrix })
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        AbHom { domain: g.clone(), codomain: g.clone(), matrix: IntMatrix::identity(g.n_gens()) }
    }

    pub fn is_well_defined(&self) -> bool {
        (0..self.domain.relations().cols()).all(|j| {
            let img = self.matrix.mul_vec(&self.domain.relations().column(j)).expect("shape");
            self.codomain.is_zero_element(&img).expect("shape")
        })
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        self.matrix.mul_vec(v)
    }

    /// The map in canonical coordinates of domain and codomain.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let cg = self.domain.canonical();
        let ch = self.codomain.canonical();
        let m = ch.proj.mul(&self.matrix).and_then(|x| x.mul(&cg.incl)).expect("shapes");
        let mut m = m;
        for (i, d) in ch.invariants.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for j in 0..m.cols() {
                let v = m.get(i, j).mod_floor(d);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn cokernel(&self) -> FgAbelianGroup {
        quotient(&self.codomain, &self.matrix).expect("shape")
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        hom_kernel(self).map(|(k, _)| k.is_trivial()).unwrap_or(false)
    }

    pub fn is_iso(&self) -> bool {
        self.is_well_defined() && self.is_surjective() && self.is_injective()
    }

    pub fn compose(&self, after: &AbHom) -> Result<AbHom, LatticeError> {
        AbHom::new(self.domain.clone(), after.codomain.clone(), after.matrix.mul(&self.matrix)?)
    }
}

/// Kernel of `f` with its inclusion into the domain.
pub fn hom_kernel(f: &AbHom) -> Result<(FgAbelianGroup, AbHom), LatticeError> {
    if !f.is_well_defined() {
        return Err(LatticeError::IllDefinedHom);
    }
    let cg = f.domain.canonical();
    let ch = f.codomain.canonical();
    let fm = f.canonical_matrix();
    let kg = cg.invariants.len();
    let kh = ch.invariants.len();
    // x lies in the kernel iff F'x ∈ diag(b)·Z^{kh}: kernel of [F' | diag(b)].
    let mut columns: Vec<Vec<BigInt>> = fm.columns();
    for (j, b) in ch.invariants.iter().enumerate() {
        if !b.is_zero() {
            let mut c = vec![BigInt::zero(); kh];
            c[j] = b.clone();
            columns.push(c);
        }
    }
    let kernel = TrackedEchelon::from_columns(kh, &columns);
    let mut kx = Lattice::new(kg);
    for v in kernel.kernel() {
        kx.insert(v[..kg].to_vec());
    }
    for (i, a) in cg.invariants.iter().enumerate() {
        if !a.is_zero() {
            let mut c = vec![BigInt::zero(); kg];
            c[i] = a.clone();
            kx.insert(c);
        }
    }
    kx.normalize();
    let basis: Vec<Vec<BigInt>> = kx.basis().to_vec();
    let mut rel_cols = Vec::new();
    for (i, a) in cg.invariants.iter().enumerate() {
        if !a.is_zero() {
            let mut c = vec![BigInt::zero(); kg];
            c[i] = a.clone();
            rel_cols.push(kx.coordinates(&c).expect("torsion relation lies in kernel"));
        }
    }
    let k = FgAbelianGroup::from_relation_columns(basis.len(), &rel_cols);
    let mut incl = IntMatrix::zeros(f.domain.n_gens(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        let col = cg.incl.mul_vec(b)?;
        for (i, x) in col.into_iter().enumerate() {
            incl.set(i, j, x);
        }
    }
    let inclusion = AbHom::new(k.clone(), f.domain.clone(), incl)?;
    Ok((k, inclusion))
}

/// `Some(x)` with `M·x = v` when `v` is in the column lattice of `M`.
pub fn lattice_member(m: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if v.len() != m.rows() {
        return Err(LatticeError::DimensionMismatch { expected: m.rows(), found: v.len() });
    }
    Ok(TrackedEchelon::from_columns(m.rows(), &m.columns()).solve(v))
}

/// Invariant factors of a group.
pub fn invariant_factors(g: &FgAbelianGroup) -> InvariantFactors {
    g.invariant_factors()
}

/// Adds `q·w` into `v`; exposed for callers assembling relation vectors.
pub fn add_scaled(v: &mut [BigInt], q: &BigInt, w: &[BigInt]) {
    axpy(v, q, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn inv(free: usize, tors: &[i64]) -> InvariantFactors {
        InvariantFactors { free_rank: free, torsion: bv(tors) }
    }

    #[test]
    fn cyclic_two() {
        assert_eq!(FgAbelianGroup::cyclic(2).invariant_factors(), inv(0, &[2]));
        assert_eq!(FgAbelianGroup::free(1).invariant_factors(), inv(1, &[]));
    }

    #[test]
    fn diag_two_three_is_six() {
        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(g.invariant_factors(), inv(0, &[6]));
    }

    #[test]
    fn quotient_examples() {
        let z = FgAbelianGroup::free(1);
        assert_eq!(quotient(&z, &IntMatrix::zeros(1, 0)).unwrap(), z);
        assert_eq!(quotient(&z, &IntMatrix::from_rows(&[vec![2]])).unwrap().invariant_factors(), inv(0, &[2]));
        let z2 = FgAbelianGroup::free(2);
        let q = quotient(&z2, &IntMatrix::from_rows(&[vec![1], vec![1]])).unwrap();
        assert_eq!(q.invariant_factors(), inv(1, &[]));
    }

    #[test]
    fn canonical_coordinates_respect_equality() {
        let g = FgAbelianGroup::new(3, IntMatrix::from_rows(&[vec![2, 0], vec![1, 4], vec![0, 2]])).unwrap();
        let c = g.canonical();
        let v = bv(&[1, 2, 3]);
        let w: Vec<BigInt> = v.iter().zip(bv(&[2, 1, 0])).map(|(a, b)| a + b).collect();
        assert_eq!(c.coordinates(&v), c.coordinates(&w));
        assert!(g.equal(&v, &w).unwrap());
    }

    #[test]
    fn kernel_examples() {
        let z = FgAbelianGroup::free(1);
        let times2 = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(hom_kernel(&times2).unwrap().0.is_trivial());
        let z2 = FgAbelianGroup::cyclic(2);
        let red = AbHom::new(z.clone(), z2, IntMatrix::from_rows(&[vec![1]])).unwrap();
        let (k, incl) = hom_kernel(&red).unwrap();
        assert_eq!(k.invariant_factors(), inv(1, &[]));
        assert_eq!(incl.matrix.get(0, 0).abs(), BigInt::from(2));
        let id = AbHom::identity(&FgAbelianGroup::cyclic(6));
        assert!(hom_kernel(&id).unwrap().0.is_trivial());
        assert!(id.is_iso());
    }

    #[test]
    fn zero_map_kernel_is_domain() {
        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![4], vec![0]])).unwrap();
        let h = FgAbelianGroup::free(1);
        let zero = AbHom::new(g.clone(), h, IntMatrix::zeros(1, 2)).unwrap();
        let (k, _) = hom_kernel(&zero).unwrap();
        assert_eq!(k.invariant_factors(), g.invariant_factors());
    }

    #[test]
    fn ill_defined_hom_is_rejected() {
        let z2 = FgAbelianGroup::cyclic(2);
        let z = FgAbelianGroup::free(1);
        let bad = AbHom::new(z2, z, IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert!(matches!(hom_kernel(&bad), Err(LatticeError::IllDefinedHom)));
    }

    #[test]
    fn element_orders() {
        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]])).unwrap();
        assert_eq!(g.element_order(&bv(&[1, 1])).unwrap(), Some(BigInt::from(12)));
        assert_eq!(g.element_order(&bv(&[2, 3])).unwrap(), Some(BigInt::from(2)));
        assert_eq!(FgAbelianGroup::free(1).element_order(&bv(&[3])).unwrap(), None);
    }

    #[test]
    fn membership_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 3]]);
        let x = lattice_member(&m, &bv(&[1])).unwrap().unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, BigInt::from(1));
        assert!(lattice_member(&IntMatrix::from_rows(&[vec![2]]), &bv(&[3])).unwrap().is_none());
        assert_eq!(lattice_member(&m, &bv(&[0])).unwrap(), Some(bv(&[0, 0])));
        assert!(lattice_member(&m, &bv(&[1, 2])).is_err());
    }
}

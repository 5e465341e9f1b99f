use super::field::{FpMatrix, PrimeField};
use super::ChainError;

/// Cochain complex `A^lo → … → A^hi` over a prime field; `d(n)` raises
/// degree by one and everything outside `lo..=hi` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedComplex {
    field: PrimeField,
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[i]`: `A^(lo+i) → A^(lo+i+1)`.
    diffs: Vec<FpMatrix>,
}

impl BoundedComplex {
    /// `diffs` lists `d^lo, …, d^(hi-1)`.
    pub fn new(field: PrimeField, lo: i32, dims: Vec<usize>, diffs: Vec<FpMatrix>) -> Result<Self, ChainError> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(ChainError::Shape("one differential per pair of adjacent degrees".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(ChainError::Shape(format!("d^{} has shape {}x{}", lo + i as i32, d.rows(), d.cols())));
            }
            if d.entries().iter().any(|&x| x >= field.characteristic()) {
                return Err(ChainError::Shape("entries must be reduced modulo p".into()));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&field, &diffs[i]).is_zero() {
                return Err(ChainError::NotAComplex(lo + i as i32));
            }
        }
        Ok(BoundedComplex { field, lo, dims, diffs })
    }

    pub fn zero(field: PrimeField, lo: i32, hi: i32) -> Self {
        let n = (hi - lo + 1) as usize;
        let diffs = (1..n).map(|_| FpMatrix::zeros(0, 0)).collect();
        BoundedComplex { field, lo, dims: vec![0; n], diffs }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^n: A^n → A^(n+1)`.
    pub fn d(&self, n: i32) -> FpMatrix {
        if n < self.lo || n >= self.hi() {
            FpMatrix::zeros(self.dim(n + 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    /// The same complex over the degree range `lo..=hi`, which must contain
    /// every nonzero degree.
    pub fn pad(&self, lo: i32, hi: i32) -> Result<Self, ChainError> {
        if self.degrees().any(|n| self.dim(n) > 0 && (n < lo || n > hi)) {
            return Err(ChainError::Range { lo, hi });
        }
        let dims = (lo..=hi).map(|n| self.dim(n)).collect();
        let diffs = (lo..hi).map(|n| self.d(n)).collect();
        Ok(BoundedComplex { field: self.field, lo, dims, diffs })
    }

    /// Complex in normal form: `A^k = F^(r_(k-1)) ⊕ F^(h_k) ⊕ F^(r_k)` with
    /// the last block of each degree mapped identically onto the first block
    /// of the next.
    pub fn standard(field: PrimeField, lo: i32, h: &[usize], r: &[usize]) -> Result<Self, ChainError> {
        let n = h.len();
        if r.len() != n || n == 0 || r[n - 1] != 0 {
            return Err(ChainError::Shape("normal form needs one (h, r) per degree and r = 0 on top".into()));
        }
        let prev = |k: usize| if k == 0 { 0 } else { r[k - 1] };
        let dims: Vec<usize> = (0..n).map(|k| prev(k) + h[k] + r[k]).collect();
        let diffs = (0..n - 1)
            .map(|k| {
                let mut d = FpMatrix::zeros(dims[k + 1], dims[k]);
                for t in 0..r[k] {
                    d.set(t, prev(k) + h[k] + t, 1);
                }
                d
            })
            .collect();
        Ok(BoundedComplex { field, lo, dims, diffs })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ChainError> {
        same_range(self, other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let diffs = (self.lo..self.hi())
            .map(|n| {
                FpMatrix::blocks(
                    &[self.dim(n + 1), other.dim(n + 1)],
                    &[self.dim(n), other.dim(n)],
                    &[vec![Some(self.d(n)), None], vec![None, Some(other.d(n))]],
                )
            })
            .collect();
        Ok(BoundedComplex { field: self.field, lo: self.lo, dims, diffs })
    }
}

fn same_range(a: &BoundedComplex, b: &BoundedComplex) -> Result<(), ChainError> {
    if a.lo != b.lo || a.hi() != b.hi() || a.field != b.field {
        return Err(ChainError::Shape("complexes live over different degree ranges or fields".into()));
    }
    Ok(())
}

/// Chain map between complexes over the same degree range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: BoundedComplex,
    pub target: BoundedComplex,
    /// One matrix per degree from `lo` to `hi`.
    pub maps: Vec<FpMatrix>,
}

impl ChainMap {
    pub fn new(source: BoundedComplex, target: BoundedComplex, maps: Vec<FpMatrix>) -> Result<Self, ChainError> {
        same_range(&source, &target)?;
        if maps.len() != source.dims.len() {
            return Err(ChainError::Shape("one matrix per degree".into()));
        }
        for (n, m) in source.degrees().zip(&maps) {
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(ChainError::Shape(format!("f^{n} has the wrong shape")));
            }
        }
        let f = ChainMap { source, target, maps };
        if let Some(n) = f.commutation_failure() {
            return Err(ChainError::NotAChainMap(n));
        }
        Ok(f)
    }

    pub fn identity(a: &BoundedComplex) -> Self {
        let maps = a.degrees().map(|n| FpMatrix::identity(a.dim(n))).collect();
        ChainMap { source: a.clone(), target: a.clone(), maps }
    }

    pub fn at(&self, n: i32) -> FpMatrix {
        let lo = self.source.lo;
        if n < lo || n > self.source.hi() {
            FpMatrix::zeros(self.target.dim(n), self.source.dim(n))
        } else {
            self.maps[(n - lo) as usize].clone()
        }
    }

    fn commutation_failure(&self) -> Option<i32> {
        let k = self.source.field;
        let (a, b) = (&self.source, &self.target);
        (a.lo..a.hi()).find(|&n| b.d(n).mul(&k, &self.at(n)) != self.at(n + 1).mul(&k, &a.d(n)))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        let k = self.source.field;
        let maps = self.source.degrees().map(|n| self.at(n).mul(&k, &first.at(n))).collect();
        ChainMap { source: first.source.clone(), target: self.target.clone(), maps }
    }

    pub fn is_levelwise_injective(&self) -> bool {
        let k = self.source.field;
        self.source.degrees().all(|n| self.at(n).rank(&k) == self.source.dim(n))
    }

    /// Mapping cone, with `cone^n = A^(n+1) ⊕ B^n`.
    pub fn cone(&self) -> BoundedComplex {
        let k = self.source.field;
        let (a, b) = (&self.source, &self.target);
        let (lo, hi) = (a.lo - 1, a.hi());
        let dims: Vec<usize> = (lo..=hi).map(|n| a.dim(n + 1) + b.dim(n)).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let neg_d = a.d(n + 1).scale(&k, k.neg(1));
                FpMatrix::blocks(
                    &[a.dim(n + 2), b.dim(n + 1)],
                    &[a.dim(n + 1), b.dim(n)],
                    &[vec![Some(neg_d), None], vec![Some(self.at(n + 1)), Some(b.d(n))]],
                )
            })
            .collect();
        BoundedComplex { field: k, lo, dims, diffs }
    }
}

/// `dim ker d^n − dim im d^(n-1)` for each degree from `lo` to `hi`.
pub fn homology_ranks(a: &BoundedComplex) -> Vec<usize> {
    let k = a.field;
    a.degrees()
        .map(|n| a.dim(n) - a.d(n).rank(&k) - a.d(n - 1).rank(&k))
        .collect()
}

/// A chain map is a quasi-isomorphism exactly when its cone is acyclic.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    homology_ranks(&f.cone()).iter().all(|&h| h == 0)
}

/// The cylinder `IA` with `(IA)^n = A^n ⊕ A^(n+1) ⊕ A^n` and differential
/// `[[d, -1, 0], [0, -d, 0], [0, 1, d]]`, over the range `lo-1..=hi`.
#[derive(Clone, Debug)]
pub struct CylinderComplex {
    pub complex: BoundedComplex,
    pub i0: ChainMap,
    pub i1: ChainMap,
    pub p: ChainMap,
}

pub fn cylinder_complex(a: &BoundedComplex) -> CylinderComplex {
    let k = a.field;
    let (lo, hi) = (a.lo - 1, a.hi());
    let one = |n: usize| FpMatrix::identity(n);
    let minus = |m: FpMatrix| m.scale(&k, k.neg(1));
    let sizes = |n: i32| [a.dim(n), a.dim(n + 1), a.dim(n)];
    let dims: Vec<usize> = (lo..=hi).map(|n| sizes(n).iter().sum()).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let m = a.dim(n + 1);
            FpMatrix::blocks(
                &sizes(n + 1),
                &sizes(n),
                &[
                    vec![Some(a.d(n)), Some(minus(one(m))), None],
                    vec![None, Some(minus(a.d(n + 1))), None],
                    vec![None, Some(one(m)), Some(a.d(n))],
                ],
            )
        })
        .collect();
    let ia = BoundedComplex { field: k, lo, dims, diffs };
    let pa = a.pad(lo, hi).expect("padding to a larger range");
    let inc = |slot: usize| {
        let maps = (lo..=hi)
            .map(|n| {
                let s = sizes(n);
                let mut grid = vec![vec![None]; 3];
                grid[slot][0] = Some(one(a.dim(n)));
                FpMatrix::blocks(&s, &[a.dim(n)], &grid)
            })
            .collect();
        ChainMap { source: pa.clone(), target: ia.clone(), maps }
    };
    let p = ChainMap {
        source: ia.clone(),
        target: pa.clone(),
        maps: (lo..=hi)
            .map(|n| FpMatrix::blocks(&[a.dim(n)], &sizes(n), &[vec![Some(one(a.dim(n))), None, Some(one(a.dim(n)))]]))
            .collect(),
    };
    CylinderComplex { i0: inc(0), i1: inc(2), p, complex: ia }
}

/// The pushout `(B ⊕ X) / {(f a, -g a)}` of a levelwise injective `f`
/// along `g`, with its legs from `B` and `X`.
pub fn pushout_along_mono(f: &ChainMap, g: &ChainMap) -> Result<(BoundedComplex, ChainMap, ChainMap), ChainError> {
    if f.source != g.source {
        return Err(ChainError::Shape("pushout span with different sources".into()));
    }
    if !f.is_levelwise_injective() {
        return Err(ChainError::NotMono);
    }
    let k = f.source.field;
    let (b, x) = (&f.target, &g.target);
    let s = b.direct_sum(x)?;
    let mut qs = Vec::new();
    let mut sections = Vec::new();
    for n in s.degrees() {
        let rel = FpMatrix::blocks(
            &[b.dim(n), x.dim(n)],
            &[f.source.dim(n)],
            &[vec![Some(f.at(n))], vec![Some(g.at(n).scale(&k, k.neg(1)))]],
        );
        // rows of q span the annihilator of the relations
        let q_rows = rel.transpose().kernel(&k);
        let q = FpMatrix::from_columns(s.dim(n), &q_rows).transpose();
        sections.push(right_inverse(&k, &q));
        qs.push(q);
    }
    let lo = s.lo;
    let idx = |n: i32| (n - lo) as usize;
    let dims: Vec<usize> = qs.iter().map(FpMatrix::rows).collect();
    let diffs = (s.lo..s.hi()).map(|n| qs[idx(n + 1)].mul(&k, &s.d(n)).mul(&k, &sections[idx(n)])).collect();
    let p = BoundedComplex::new(k, lo, dims, diffs)?;
    let leg = |off: usize, src: &BoundedComplex| {
        let maps = src
            .degrees()
            .map(|n| {
                let q = &qs[idx(n)];
                let mut m = FpMatrix::zeros(q.rows(), src.dim(n));
                for i in 0..q.rows() {
                    for j in 0..src.dim(n) {
                        m.set(i, j, q.get(i, off_at(off, b, n) + j));
                    }
                }
                m
            })
            .collect();
        ChainMap::new(src.clone(), p.clone(), maps)
    };
    let leg_b = leg(0, b)?;
    let leg_x = leg(1, x)?;
    Ok((p, leg_b, leg_x))
}

fn off_at(which: usize, b: &BoundedComplex, n: i32) -> usize {
    if which == 0 {
        0
    } else {
        b.dim(n)
    }
}

/// Some `s` with `q s = 1` for `q` of full row rank.
fn right_inverse(k: &PrimeField, q: &FpMatrix) -> FpMatrix {
    let (r, c) = (q.rows(), q.cols());
    if r == 0 {
        return FpMatrix::zeros(c, 0);
    }
    let aug = FpMatrix::blocks(&[r], &[c, r], &[vec![Some(q.clone()), Some(FpMatrix::identity(r))]]);
    let (red, pivots) = aug.rref(k);
    // pivots all lie in the first c columns since q has full row rank
    let mut s = FpMatrix::zeros(c, r);
    for (row, &pc) in pivots.iter().enumerate().take(r) {
        for j in 0..r {
            s.set(pc, j, red.get(row, c + j));
        }
    }
    s
}

/// Normal form data: `A ≅ standard(h, r)` through `phi[k]`, whose inverse
/// has the adapted basis as columns.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub h: Vec<usize>,
    pub r: Vec<usize>,
    pub phi: Vec<FpMatrix>,
}

/// Basis change to normal form. Degree `k` gets the basis `w ∪ c ∪ v`:
/// `w` the images of the previous degree's `v`, `c` a complement of `w` in
/// the cycles, and `v` unit vectors whose images form a basis of `im d^k`.
pub fn normal_form(a: &BoundedComplex) -> NormalForm {
    let k = a.field;
    let mut h = Vec::new();
    let mut r = Vec::new();
    let mut phi = Vec::new();
    let mut w_prev: Vec<Vec<u32>> = Vec::new();
    for n in a.degrees() {
        let d = a.d(n);
        let pivots = d.rref(&k).1;
        let v: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&c| {
                let mut e = vec![0; a.dim(n)];
                e[c] = 1;
                e
            })
            .collect();
        let w_next: Vec<Vec<u32>> = pivots.iter().map(|&c| d.column(c)).collect();
        let mut basis = w_prev.clone();
        let mut rank = basis.len();
        for z in d.kernel(&k) {
            let mut trial = basis.clone();
            trial.push(z.clone());
            let tr = FpMatrix::from_columns(a.dim(n), &trial).rank(&k);
            if tr > rank {
                basis = trial;
                rank = tr;
            }
        }
        h.push(basis.len() - w_prev.len());
        r.push(v.len());
        basis.extend(v);
        let m = FpMatrix::from_columns(a.dim(n), &basis);
        phi.push(m.inverse(&k).expect("adapted basis is a basis"));
        w_prev = w_next;
    }
    NormalForm { h, r, phi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn acyclic_two_term_complex() {
        let a = BoundedComplex::new(f2(), 0, vec![1, 1], vec![FpMatrix::identity(1)]).unwrap();
        assert_eq!(homology_ranks(&a), vec![0, 0]);
        assert_eq!(homology_ranks(&BoundedComplex::zero(f2(), 0, 1)), vec![0, 0]);
        let z = ChainMap::new(a.clone(), a.clone(), vec![FpMatrix::zeros(1, 1), FpMatrix::zeros(1, 1)]).unwrap();
        assert!(is_quasi_iso(&z));
    }

    #[test]
    fn rejects_non_complexes() {
        let d = FpMatrix::identity(1);
        assert!(matches!(
            BoundedComplex::new(f2(), 0, vec![1, 1, 1], vec![d.clone(), d]),
            Err(ChainError::NotAComplex(0))
        ));
    }

    #[test]
    fn cylinder_of_point() {
        let a = BoundedComplex::new(f2(), 0, vec![1], vec![]).unwrap();
        let cy = cylinder_complex(&a);
        assert_eq!(cy.complex.dim(0), 2);
        assert_eq!(cy.complex.dim(-1), 1);
        assert_eq!(cy.complex.d(-1).column(0), vec![1, 1]);
        assert_eq!(homology_ranks(&cy.complex), vec![0, 1]);
        assert!(is_quasi_iso(&cy.p));
        assert_eq!(cy.p.after(&cy.i0), ChainMap::identity(&cy.p.target));
    }

    #[test]
    fn normal_form_is_idempotent_on_standard_complexes() {
        let k = PrimeField::new(3).unwrap();
        let s = BoundedComplex::standard(k, 0, &[1, 2, 0], &[1, 1, 0]).unwrap();
        let nf = normal_form(&s);
        assert_eq!(nf.h, vec![1, 2, 0]);
        assert_eq!(nf.r, vec![1, 1, 0]);
        for (n, m) in s.degrees().zip(&nf.phi) {
            assert_eq!(*m, FpMatrix::identity(s.dim(n)));
        }
    }

    #[test]
    fn pushout_of_inclusion_along_zero_is_quotient() {
        let k = f2();
        let pt = BoundedComplex::new(k, 0, vec![1, 0], vec![FpMatrix::zeros(0, 1)]).unwrap();
        let two = pt.direct_sum(&pt).unwrap();
        let i1 = ChainMap::new(pt.clone(), two.clone(), vec![FpMatrix::from_rows(2, 1, vec![1, 0]), FpMatrix::zeros(0, 0)]).unwrap();
        let zero = BoundedComplex::zero(k, 0, 1);
        let t = ChainMap::new(pt.clone(), zero, vec![FpMatrix::zeros(0, 1), FpMatrix::zeros(0, 0)]).unwrap();
        let (p, leg_b, _) = pushout_along_mono(&i1, &t).unwrap();
        assert_eq!(p.dim(0), 1);
        assert!(leg_b.after(&i1).maps.iter().all(FpMatrix::is_zero));
    }
}

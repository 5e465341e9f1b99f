use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sublattice of `Z^dim` kept as a row-echelon (Hermite) basis with
/// positive pivots.
///
/// Reduction of a vector against the basis leaves the entry at every pivot
/// column in `[0, pivot)`, which is a unique representative of its coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

pub(crate) fn first_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// v += q * w, skipping zero entries of w.
pub(crate) fn axpy(v: &mut [BigInt], q: &BigInt, w: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a += q * b;
        }
    }
}

/// Returns (g, s, t, a/g, b/g) with g = s·a + t·b > 0.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        s = -s;
        t = -t;
    }
    let ag = a / &g;
    let bg = b / &g;
    (g, s, t, ag, bg)
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_generators<I: IntoIterator<Item = Vec<BigInt>>>(dim: usize, gens: I) -> Self {
        let mut l = Lattice::new(dim);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_value(&self, k: usize) -> &BigInt {
        &self.rows[k][self.pivots[k]]
    }

    /// Adds a generator; returns true when the lattice grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim, "lattice dimension mismatch");
        let mut grew = false;
        while let Some(c) = first_nonzero(&v) {
            match self.pivots.binary_search(&c) {
                Err(pos) => {
                    if v[c].is_negative() {
                        for x in v.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    self.rows.insert(pos, v);
                    self.pivots.insert(pos, c);
                    self.reduce_row_against_later(pos);
                    return true;
                }
                Ok(pos) => {
                    let a = self.rows[pos][c].clone();
                    let b = v[c].clone();
                    if b.is_multiple_of(&a) {
                        let q = -(&b / &a);
                        axpy(&mut v, &q, &self.rows[pos]);
                        continue;
                    }
                    // Replace the pivot row by a gcd combination; keep the
                    // complementary (pivot-free) combination for further reduction.
                    let (_, s, t, ag, bg) = xgcd(&a, &b);
                    let row = &self.rows[pos];
                    let mut new_row = vec![BigInt::zero(); self.dim];
                    let mut rest = vec![BigInt::zero(); self.dim];
                    for k in c..self.dim {
                        let (r, x) = (&row[k], &v[k]);
                        if r.is_zero() && x.is_zero() {
                            continue;
                        }
                        new_row[k] = &s * r + &t * x;
                        rest[k] = &ag * x - &bg * r;
                    }
                    self.rows[pos] = new_row;
                    self.reduce_row_against_later(pos);
                    grew = true;
                    v = rest;
                }
            }
        }
        grew
    }

    fn reduce_row_against_later(&mut self, pos: usize) {
        let (head, tail) = self.rows.split_at_mut(pos + 1);
        let row = &mut head[pos];
        for (k, later) in tail.iter().enumerate() {
            let c = self.pivots[pos + 1 + k];
            if row[c].is_zero() {
                continue;
            }
            let q = -row[c].div_floor(&later[c]);
            axpy(row, &q, later);
        }
    }

    /// Brings every row into fully reduced Hermite form, so two equal
    /// lattices have identical bases.
    pub fn normalize(&mut self) {
        for pos in (0..self.rows.len()).rev() {
            self.reduce_row_against_later(pos);
        }
    }

    /// Canonical coset representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &mut [BigInt]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let q = -v[c].div_floor(&row[c]);
            axpy(v, &q, row);
        }
    }

    pub fn reduced(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Coefficients of `v` with respect to [`Lattice::basis`], when `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut w = v.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.rows.len()];
        for (k, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if w[c].is_zero() {
                continue;
            }
            if !w[c].is_multiple_of(&row[c]) {
                return None;
            }
            let q = &w[c] / &row[c];
            axpy(&mut w, &-&q, row);
            coeffs[k] = q;
        }
        if w.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Product of the pivots when the lattice has full rank, i.e. its index.
    pub fn index(&self) -> Option<BigInt> {
        if self.rows.len() != self.dim {
            return None;
        }
        Some(self.rows.iter().zip(&self.pivots).fold(BigInt::one(), |acc, (r, &c)| acc * &r[c]))
    }
}

/// Row echelon form over Z that remembers how each row was built from the
/// pushed generators. Used for integer kernels and for solving `M·x = v`.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    dim: usize,
    n_gens: usize,
    rows: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    pivots: Vec<usize>,
    kernel: Vec<Vec<BigInt>>,
    pushed: usize,
}

impl TrackedEchelon {
    /// `dim` is the ambient dimension, `n_gens` the number of generators that will be pushed.
    pub fn new(dim: usize, n_gens: usize) -> Self {
        TrackedEchelon { dim, n_gens, rows: Vec::new(), pivots: Vec::new(), kernel: Vec::new(), pushed: 0 }
    }

    pub fn from_columns(dim: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut e = TrackedEchelon::new(dim, columns.len());
        for c in columns {
            e.push(c.clone());
        }
        e
    }

    pub fn push(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "echelon dimension mismatch");
        assert!(self.pushed < self.n_gens, "more generators than announced");
        let mut coeff = vec![BigInt::zero(); self.n_gens];
        coeff[self.pushed] = BigInt::one();
        self.pushed += 1;
        loop {
            let Some(c) = first_nonzero(&v) else {
                self.kernel.push(coeff);
                return;
            };
            match self.pivots.binary_search(&c) {
                Err(pos) => {
                    if v[c].is_negative() {
                        negate(&mut v);
                        negate(&mut coeff);
                    }
                    self.rows.insert(pos, (v, coeff));
                    self.pivots.insert(pos, c);
                    return;
                }
                Ok(pos) => {
                    let a = self.rows[pos].0[c].clone();
                    let b = v[c].clone();
                    if b.is_multiple_of(&a) {
                        let q = -(&b / &a);
                        let (rv, rc) = &self.rows[pos];
                        axpy(&mut v, &q, rv);
                        axpy(&mut coeff, &q, rc);
                        continue;
                    }
                    let (_, s, t, ag, bg) = xgcd(&a, &b);
                    let (rv, rc) = &self.rows[pos];
                    let new_v = lincomb(&s, rv, &t, &v);
                    let new_c = lincomb(&s, rc, &t, &coeff);
                    let rest_v = lincomb(&-&bg, rv, &ag, &v);
                    let rest_c = lincomb(&-&bg, rc, &ag, &coeff);
                    self.rows[pos] = (new_v, new_c);
                    v = rest_v;
                    coeff = rest_c;
                }
            }
        }
    }

    /// Basis of the integer relations among the pushed generators.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.kernel
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Some `x` with `Σ xᵢ·genᵢ = target`, if the target lies in the span.
    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut w = target.to_vec();
        let mut x = vec![BigInt::zero(); self.n_gens];
        for ((rv, rc), &c) in self.rows.iter().zip(&self.pivots) {
            if w[c].is_zero() {
                continue;
            }
            if !w[c].is_multiple_of(&rv[c]) {
                return None;
            }
            let q = &w[c] / &rv[c];
            axpy(&mut w, &-&q, rv);
            axpy(&mut x, &q, rc);
        }
        w.iter().all(Zero::is_zero).then_some(x)
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn lincomb(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter()
        .zip(y)
        .map(|(p, q)| match (p.is_zero(), q.is_zero()) {
            (true, true) => BigInt::zero(),
            (false, true) => a * p,
            (true, false) => b * q,
            (false, false) => a * p + b * q,
        })
        .collect()
}

/// Basis of `{x : M·x = 0}` given the columns of `M` (each of length `dim`).
pub fn integer_kernel(dim: usize, columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    TrackedEchelon::from_columns(dim, columns).kernel().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduction_is_canonical() {
        let l = Lattice::from_generators(2, vec![v(&[2, 1]), v(&[0, 3])]);
        let a = l.reduced(&v(&[5, 7]));
        let b = l.reduced(&v(&[5 + 2, 7 + 1 + 3]));
        assert_eq!(a, b);
        assert!(l.contains(&v(&[4, 5])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn gcd_merge_of_pivots() {
        let l = Lattice::from_generators(1, vec![v(&[6]), v(&[10])]);
        assert_eq!(l.basis(), &[v(&[2])]);
        assert_eq!(l.index(), Some(BigInt::from(2)));
    }

    #[test]
    fn coordinates_reconstruct() {
        let l = Lattice::from_generators(3, vec![v(&[1, 2, 3]), v(&[0, 4, 1]), v(&[2, 0, 5])]);
        let target = v(&[3, 6, 9]);
        let c = l.coordinates(&target).unwrap();
        let mut acc = vec![BigInt::zero(); 3];
        for (q, row) in c.iter().zip(l.basis()) {
            axpy(&mut acc, q, row);
        }
        assert_eq!(acc, target);
    }

    #[test]
    fn kernel_of_small_matrix() {
        // columns (1,2), (2,4), (0,1): kernel spanned by (2,-1,0)
        let k = integer_kernel(2, &[v(&[1, 2]), v(&[2, 4]), v(&[0, 1])]);
        assert_eq!(k.len(), 1);
        let x = &k[0];
        assert_eq!(x[2], BigInt::zero());
        assert_eq!(&x[0] + &x[1] * 2, BigInt::zero());
        assert!(x[0].abs() == BigInt::from(2));
    }

    #[test]
    fn solve_finds_bezout() {
        let e = TrackedEchelon::from_columns(1, &[v(&[2]), v(&[3])]);
        let x = e.solve(&v(&[1])).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, BigInt::from(1));
        let e2 = TrackedEchelon::from_columns(1, &[v(&[2])]);
        assert!(e2.solve(&v(&[3])).is_none());
    }
}

//! Class-2 nilpotent groups given as central extensions `Z^n ×_Γ Z^m`.
//!
//! An element is a pair `(u, c)`: a sparse exponent vector over the
//! generators and a dense central part. The product is
//! `(u, c)(u', c') = (u + u', c + c' + Γ(u, u'))` for a bilinear cocycle `Γ`.
//! Arithmetic is checked `i64`; overflow is reported, never wrapped.

use std::cmp::Ordering;

use super::SquadError;

/// Sparse integer vector: sorted by index, no zero entries.
pub type SVec = Vec<(u32, i64)>;

pub(crate) fn ck(v: Option<i64>) -> Result<i64, SquadError> {
    v.ok_or(SquadError::Overflow)
}

pub(crate) fn cmul(a: i64, b: i64) -> Result<i64, SquadError> {
    ck(a.checked_mul(b))
}

pub(crate) fn cadd(a: i64, b: i64) -> Result<i64, SquadError> {
    ck(a.checked_add(b))
}

/// `a + q·b` on sparse vectors.
pub fn sv_axpy(a: &SVec, q: i64, b: &SVec) -> Result<SVec, SquadError> {
    if q == 0 {
        return Ok(a.clone());
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, cmul(q, b[j].1)?));
                j += 1;
            }
            Ordering::Equal => {
                let v = cadd(a[i].1, cmul(q, b[j].1)?)?;
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

pub fn sv_scale(a: &SVec, q: i64) -> Result<SVec, SquadError> {
    if q == 0 {
        return Ok(Vec::new());
    }
    a.iter().map(|&(i, x)| Ok((i, cmul(q, x)?))).collect()
}

pub fn sv_from_dense(v: &[i64]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, &x)| (i as u32, x)).collect()
}

pub fn sv_to_dense(v: &SVec, n: usize) -> Vec<i64> {
    let mut d = vec![0; n];
    for &(i, x) in v {
        d[i as usize] = x;
    }
    d
}

pub fn sv_get(v: &SVec, i: u32) -> i64 {
    v.binary_search_by_key(&i, |e| e.0).map(|k| v[k].1).unwrap_or(0)
}

/// `v += q·w` on dense vectors.
pub fn dense_axpy(v: &mut [i64], q: i64, w: &[i64]) -> Result<(), SquadError> {
    if q == 0 {
        return Ok(());
    }
    for (a, &b) in v.iter_mut().zip(w) {
        if b != 0 {
            *a = cadd(*a, cmul(q, b)?)?;
        }
    }
    Ok(())
}

/// Bilinear cocycle defining the group law.
pub trait Cocycle {
    fn central_dim(&self) -> usize;
    /// `c += q·Γ(u, v)`.
    fn add_gamma(&self, c: &mut [i64], u: &SVec, v: &SVec, q: i64) -> Result<(), SquadError>;
}

/// Free class-2 nilpotent group on `n` generators: `Γ(a, a')` has entry
/// `a_i·a'_j` at the basis commutator `[g_i, g_j]`, `i > j`.
#[derive(Clone, Debug)]
pub struct FreeLaw {
    pub n: usize,
}

impl FreeLaw {
    pub fn pair_index(i: usize, j: usize) -> usize {
        debug_assert!(i > j);
        i * (i - 1) / 2 + j
    }

    /// Bilinear commutator `[x, y]` of abelianized elements, as a central vector.
    pub fn commutator(&self, x: &SVec, y: &SVec, out: &mut [i64], q: i64) -> Result<(), SquadError> {
        for &(k, xk) in x {
            for &(l, yl) in y {
                let (k, l) = (k as usize, l as usize);
                let v = cmul(q, cmul(xk, yl)?)?;
                match k.cmp(&l) {
                    Ordering::Greater => {
                        let p = Self::pair_index(k, l);
                        out[p] = cadd(out[p], v)?;
                    }
                    Ordering::Less => {
                        let p = Self::pair_index(l, k);
                        out[p] = cadd(out[p], -v)?;
                    }
                    Ordering::Equal => {}
                }
            }
        }
        Ok(())
    }
}

impl Cocycle for FreeLaw {
    fn central_dim(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    fn add_gamma(&self, c: &mut [i64], u: &SVec, v: &SVec, q: i64) -> Result<(), SquadError> {
        if q == 0 {
            return Ok(());
        }
        for &(i, ui) in u {
            for &(j, vj) in v {
                if j >= i {
                    break;
                }
                let p = Self::pair_index(i as usize, j as usize);
                c[p] = cadd(c[p], cmul(q, cmul(ui, vj)?)?)?;
            }
        }
        Ok(())
    }
}

/// Law of `C₁`: generator commutators are brackets of boundaries,
/// `Γ(u, u') = Σ_{i>j} u_i·u'_j·⟨d_j, d_i⟩`, with `d_i` the abelianized
/// boundary of the i-th degree-1 generator. The central part lives on the
/// ordered pairs `⟨k, l⟩` (index `k·n0 + l`).
#[derive(Clone, Debug)]
pub struct BracketLaw {
    pub n0: usize,
    pub d: Vec<SVec>,
}

impl BracketLaw {
    pub fn bracket_index(&self, k: usize, l: usize) -> usize {
        k * self.n0 + l
    }

    /// `out += q·⟨x, y⟩` for abelianized degree-0 vectors.
    pub fn add_bracket(&self, out: &mut [i64], x: &[i64], y: &SVec, q: i64) -> Result<(), SquadError> {
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0 {
                continue;
            }
            let f = cmul(q, xk)?;
            for &(l, yl) in y {
                let p = k * self.n0 + l as usize;
                out[p] = cadd(out[p], cmul(f, yl)?)?;
            }
        }
        Ok(())
    }

    /// Abelianized boundary `D·u` of a degree-1 exponent vector.
    pub fn ab_boundary(&self, u: &SVec) -> Result<Vec<i64>, SquadError> {
        let mut out = vec![0; self.n0];
        for &(i, ui) in u {
            for &(k, dk) in &self.d[i as usize] {
                let k = k as usize;
                out[k] = cadd(out[k], cmul(ui, dk)?)?;
            }
        }
        Ok(out)
    }
}

impl Cocycle for BracketLaw {
    fn central_dim(&self) -> usize {
        self.n0 * self.n0
    }

    fn add_gamma(&self, c: &mut [i64], u: &SVec, v: &SVec, q: i64) -> Result<(), SquadError> {
        if q == 0 || u.is_empty() || v.is_empty() {
            return Ok(());
        }
        // prefix = Σ_{j<i} v_j d_j, advanced as i walks through u.
        let mut prefix = vec![0i64; self.n0];
        let mut jv = 0;
        for &(i, ui) in u {
            while jv < v.len() && v[jv].0 < i {
                let (j, vj) = v[jv];
                for &(k, dk) in &self.d[j as usize] {
                    let k = k as usize;
                    prefix[k] = cadd(prefix[k], cmul(vj, dk)?)?;
                }
                jv += 1;
            }
            self.add_bracket(c, &prefix, &self.d[i as usize], cmul(q, ui)?)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub u: SVec,
    pub c: Vec<i64>,
}

impl Elem {
    pub fn identity(m: usize) -> Self {
        Elem { u: Vec::new(), c: vec![0; m] }
    }

    pub fn generator(i: usize, m: usize) -> Self {
        Elem { u: vec![(i as u32, 1)], c: vec![0; m] }
    }

    pub fn central(c: Vec<i64>) -> Self {
        Elem { u: Vec::new(), c }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_empty() && self.c.iter().all(|&x| x == 0)
    }
}

pub fn mul<G: Cocycle>(g: &G, x: &Elem, y: &Elem) -> Result<Elem, SquadError> {
    let mut c = x.c.clone();
    dense_axpy(&mut c, 1, &y.c)?;
    g.add_gamma(&mut c, &x.u, &y.u, 1)?;
    Ok(Elem { u: sv_axpy(&x.u, 1, &y.u)?, c })
}

/// `x^n = (n·u, n·c + C(n,2)·Γ(u,u))`, valid for negative `n` too.
pub fn pow<G: Cocycle>(g: &G, x: &Elem, n: i64) -> Result<Elem, SquadError> {
    let mut c = vec![0; x.c.len()];
    dense_axpy(&mut c, n, &x.c)?;
    let binom = cmul(n, n - 1)? / 2;
    g.add_gamma(&mut c, &x.u, &x.u, binom)?;
    Ok(Elem { u: sv_scale(&x.u, n)?, c })
}

pub fn inv<G: Cocycle>(g: &G, x: &Elem) -> Result<Elem, SquadError> {
    pow(g, x, -1)
}

/// Row-echelon (Hermite) lattice over `i64` with positive pivots.
#[derive(Clone, Debug, Default)]
pub struct SmallLattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl SmallLattice {
    pub fn new(dim: usize) -> Self {
        SmallLattice { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn insert(&mut self, mut v: Vec<i64>) -> Result<bool, SquadError> {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v)?;
        let mut grew = false;
        while let Some(c) = v.iter().position(|&x| x != 0) {
            match self.pivots.binary_search(&c) {
                Err(pos) => {
                    if v[c] < 0 {
                        for x in v.iter_mut() {
                            *x = -*x;
                        }
                    }
                    self.rows.insert(pos, v);
                    self.pivots.insert(pos, c);
                    self.tidy(pos)?;
                    // earlier rows may now be reducible in column c
                    for k in (0..pos).rev() {
                        self.tidy(k)?;
                    }
                    return Ok(true);
                }
                Ok(pos) => {
                    let a = self.rows[pos][c];
                    let b = v[c];
                    if b % a == 0 {
                        dense_axpy(&mut v, -(b / a), &self.rows[pos])?;
                        continue;
                    }
                    let (g, s, t) = egcd(a, b);
                    let (ag, bg) = (a / g, b / g);
                    let row = self.rows[pos].clone();
                    let mut new_row = vec![0; self.dim];
                    let mut rest = vec![0; self.dim];
                    for k in c..self.dim {
                        new_row[k] = cadd(cmul(s, row[k])?, cmul(t, v[k])?)?;
                        rest[k] = cadd(cmul(ag, v[k])?, -cmul(bg, row[k])?)?;
                    }
                    self.rows[pos] = new_row;
                    self.tidy(pos)?;
                    for k in (0..pos).rev() {
                        self.tidy(k)?;
                    }
                    grew = true;
                    v = rest;
                    self.reduce(&mut v)?;
                }
            }
        }
        Ok(grew)
    }

    /// Reduces row `pos` against all later rows, keeping entries above pivots in `[0, p)`.
    fn tidy(&mut self, pos: usize) -> Result<(), SquadError> {
        let (head, tail) = self.rows.split_at_mut(pos + 1);
        let row = &mut head[pos];
        for (k, later) in tail.iter().enumerate() {
            let c = self.pivots[pos + 1 + k];
            if row[c] == 0 {
                continue;
            }
            let q = row[c].div_euclid(later[c]);
            dense_axpy(row, -q, later)?;
        }
        Ok(())
    }

    pub fn reduce(&self, v: &mut [i64]) -> Result<(), SquadError> {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c] == 0 {
                continue;
            }
            let q = v[c].div_euclid(row[c]);
            dense_axpy(v, -q, row)?;
        }
        Ok(())
    }
}

/// `(g, s, t)` with `g = s·a + t·b > 0`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Echelon form of a subgroup `N` of a class-2 group, assuming `N` is
/// abelian modulo its central part (true for normal closures of central
/// relations once the commutator lattice has been inserted first).
#[derive(Clone, Debug)]
pub struct NilEchelon {
    rows: Vec<Elem>,
    pivots: Vec<u32>,
    central: SmallLattice,
}

impl NilEchelon {
    pub fn new(central_dim: usize) -> Self {
        NilEchelon { rows: Vec::new(), pivots: Vec::new(), central: SmallLattice::new(central_dim) }
    }

    pub fn rows(&self) -> &[Elem] {
        &self.rows
    }

    pub fn central(&self) -> &SmallLattice {
        &self.central
    }

    pub fn insert_central(&mut self, c: Vec<i64>) -> Result<(), SquadError> {
        self.central.insert(c)?;
        Ok(())
    }

    pub fn insert<G: Cocycle>(&mut self, g: &G, mut x: Elem) -> Result<(), SquadError> {
        loop {
            let Some(&(col, b)) = x.u.first() else {
                self.central.insert(x.c)?;
                return Ok(());
            };
            match self.pivots.binary_search(&col) {
                Err(pos) => {
                    if b < 0 {
                        x = inv(g, &x)?;
                    }
                    self.central.reduce(&mut x.c)?;
                    self.rows.insert(pos, x);
                    self.pivots.insert(pos, col);
                    return Ok(());
                }
                Ok(pos) => {
                    let row = &self.rows[pos];
                    let a = row.u[0].1;
                    if b % a == 0 {
                        x = mul(g, &x, &pow(g, row, -(b / a))?)?;
                        continue;
                    }
                    let (gcd, s, t) = egcd(a, b);
                    let (ag, bg) = (a / gcd, b / gcd);
                    let mut new_row = mul(g, &pow(g, row, s)?, &pow(g, &x, t)?)?;
                    let rest = mul(g, &pow(g, &x, ag)?, &pow(g, row, -bg)?)?;
                    self.central.reduce(&mut new_row.c)?;
                    self.rows[pos] = new_row;
                    x = rest;
                }
            }
        }
    }

    /// Right-multiplies by pivot-row powers so every pivot entry of the
    /// vector part lands in `[0, pivot)`.
    pub fn reduce_vector<G: Cocycle>(&self, g: &G, mut x: Elem) -> Result<Elem, SquadError> {
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let v = sv_get(&x.u, col);
            if v == 0 {
                continue;
            }
            let q = v.div_euclid(row.u[0].1);
            if q != 0 {
                x = mul(g, &x, &pow(g, row, -q)?)?;
            }
        }
        Ok(x)
    }

    /// Canonical representative of the coset `xN`.
    pub fn canonical<G: Cocycle>(&self, g: &G, x: Elem) -> Result<Elem, SquadError> {
        let mut y = self.reduce_vector(g, x)?;
        self.central.reduce(&mut y.c)?;
        Ok(y)
    }

    pub fn contains<G: Cocycle>(&self, g: &G, x: Elem) -> Result<bool, SquadError> {
        Ok(self.canonical(g, x)?.is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_law_commutator_sign() {
        let law = FreeLaw { n: 2 };
        let g = Elem::generator(0, 1);
        let h = Elem::generator(1, 1);
        let x = [g.clone(), h.clone(), inv(&law, &g).unwrap(), inv(&law, &h).unwrap()]
            .iter()
            .try_fold(Elem::identity(1), |acc, y| mul(&law, &acc, y))
            .unwrap();
        assert!(x.u.is_empty());
        assert_eq!(x.c, vec![-1]);
    }

    #[test]
    fn power_matches_repeated_product() {
        let law = FreeLaw { n: 3 };
        let x = Elem { u: vec![(0, 2), (2, -1)], c: vec![1, 0, 3] };
        let mut acc = Elem::identity(3);
        for _ in 0..5 {
            acc = mul(&law, &acc, &x).unwrap();
        }
        assert_eq!(pow(&law, &x, 5).unwrap(), acc);
        let back = mul(&law, &pow(&law, &x, -3).unwrap(), &pow(&law, &x, 3).unwrap()).unwrap();
        assert!(back.is_identity());
    }

    #[test]
    fn egcd_is_bezout() {
        for (a, b) in [(6, 10), (-4, 6), (7, -3), (0, 5)] {
            let (g, s, t) = egcd(a, b);
            assert!(g > 0);
            assert_eq!(s * a + t * b, g);
        }
    }

    #[test]
    fn small_lattice_is_canonical() {
        let mut l = SmallLattice::new(2);
        l.insert(vec![2, 1]).unwrap();
        l.insert(vec![0, 3]).unwrap();
        let mut a = vec![5, 7];
        let mut b = vec![7, 11];
        l.reduce(&mut a).unwrap();
        l.reduce(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn echelon_membership() {
        let law = FreeLaw { n: 2 };
        let mut e = NilEchelon::new(1);
        // subgroup generated by g^2, h^3 and the commutator
        e.insert_central(vec![1]).unwrap();
        e.insert(&law, pow(&law, &Elem::generator(0, 1), 2).unwrap()).unwrap();
        e.insert(&law, pow(&law, &Elem::generator(1, 1), 3).unwrap()).unwrap();
        let x = Elem { u: vec![(0, 4), (1, -3)], c: vec![7] };
        assert!(e.contains(&law, x).unwrap());
        assert!(!e.contains(&law, Elem::generator(0, 1)).unwrap());
    }
}

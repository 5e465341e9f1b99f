use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: `u * m * v == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries of `s`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Computes `(U, S, V)` with `U·M·V = S`, `S` diagonal with a divisibility chain
/// of nonnegative entries and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (form, _) = reduce(m, true);
    form
}

/// Like [`smith_normal_form`] but also returns `U⁻¹`, which the group code
/// needs to map canonical generators back to the original ones.
pub(crate) fn smith_with_left_inverse(m: &IntMatrix) -> (SmithForm, IntMatrix) {
    let (form, uinv) = reduce(m, true);
    (form, uinv.expect("tracking enabled"))
}

/// Diagonal of the Smith form without building the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    reduce(m, false).0.diagonal()
}

struct Transforms {
    u: IntMatrix,
    uinv: IntMatrix,
    v: IntMatrix,
}

impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.uinv.swap_cols(a, b);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.u.add_row_multiple(dst, src, q);
        self.uinv.add_col_multiple(src, dst, &-q);
    }
    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
        self.uinv.negate_col(i);
    }
}

fn reduce(m: &IntMatrix, track: bool) -> (SmithForm, Option<IntMatrix>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut tr = track.then(|| Transforms {
        u: IntMatrix::identity(rows),
        uinv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    });

    let n = rows.min(cols);
    for t in 0..n {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = smallest_in_block(&s, t) else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        if let Some(tr) = tr.as_mut() {
            tr.swap_rows(t, pi);
            tr.v.swap_cols(t, pj);
        }
        loop {
            // Bring the smallest nonzero of row t / column t to the pivot slot.
            let mut best: Option<(bool, usize)> = None;
            let mut best_abs = s.get(t, t).abs();
            for i in t + 1..rows {
                let a = s.get(i, t);
                if !a.is_zero() && (best_abs.is_zero() || a.abs() < best_abs) {
                    best_abs = a.abs();
                    best = Some((true, i));
                }
            }
            for j in t + 1..cols {
                let a = s.get(t, j);
                if !a.is_zero() && (best_abs.is_zero() || a.abs() < best_abs) {
                    best_abs = a.abs();
                    best = Some((false, j));
                }
            }
            match best {
                Some((true, i)) => {
                    s.swap_rows(t, i);
                    if let Some(tr) = tr.as_mut() {
                        tr.swap_rows(t, i);
                    }
                }
                Some((false, j)) => {
                    s.swap_cols(t, j);
                    if let Some(tr) = tr.as_mut() {
                        tr.v.swap_cols(t, j);
                    }
                }
                None => {}
            }
            let p = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = nearest_quotient(s.get(i, t), &p);
                let neg = -q;
                s.add_row_multiple(i, t, &neg);
                if let Some(tr) = tr.as_mut() {
                    tr.add_row(i, t, &neg);
                }
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = nearest_quotient(s.get(t, j), &p);
                let neg = -q;
                s.add_col_multiple(j, t, &neg);
                if let Some(tr) = tr.as_mut() {
                    tr.v.add_col_multiple(j, t, &neg);
                }
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce p | every trailing entry.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    if let Some(tr) = tr.as_mut() {
                        tr.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            if let Some(tr) = tr.as_mut() {
                tr.negate_row(t);
            }
        }
    }

    match tr {
        Some(Transforms { u, uinv, v }) => (SmithForm { u, s, v }, Some(uinv)),
        None => (
            SmithForm { u: IntMatrix::zeros(0, 0), s, v: IntMatrix::zeros(0, 0) },
            None,
        ),
    }
}

fn smallest_in_block(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in t..s.rows() {
        for j in t..s.cols() {
            let a = s.get(i, j);
            if !a.is_zero() && (best.is_none() || a.abs() < best_abs) {
                best_abs = a.abs();
                best = Some((i, j));
            }
        }
    }
    best
}

/// Quotient rounding to the nearest integer, so remainders satisfy |r| ≤ |p|/2.
pub(crate) fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(p);
    let twice: BigInt = &r * 2;
    // The floor remainder has the sign of p; stepping the quotient up moves it toward zero.
    if twice.abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) {
        let f = smith_normal_form(m);
        let prod = f.u.mul(m).unwrap().mul(&f.v).unwrap();
        assert_eq!(prod, f.s);
        assert!(f.s.is_diagonal());
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn zero_one_by_one() {
        let m = IntMatrix::from_rows(&[vec![0]]);
        assert_eq!(smith_normal_form(&m).s, m);
    }

    #[test]
    fn identity_stays_identity() {
        let m = IntMatrix::identity(2);
        let f = smith_normal_form(&m);
        assert_eq!(f.s, m);
        check(&m);
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check(&m);
    }

    #[test]
    fn rectangular_and_divisibility_fix() {
        check(&IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0]]));
        check(&IntMatrix::from_rows(&[vec![6, 4], vec![10, 14], vec![2, 2]]));
        let f = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn left_inverse_is_tracked() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, 8, 10], vec![1, 1, 7]]);
        let (f, uinv) = smith_with_left_inverse(&m);
        assert_eq!(f.u.mul(&uinv).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn diagonal_only_matches_full() {
        let m = IntMatrix::from_rows(&[vec![12, 18, 6], vec![4, 2, 8]]);
        assert_eq!(smith_diagonal(&m), smith_normal_form(&m).diagonal());
    }
}

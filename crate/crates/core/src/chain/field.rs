use std::fmt;

use super::ChainError;

/// The field `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, ChainError> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p > 46_337 {
            return Err(ChainError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (a % self.p, self.p - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduces a signed integer into `0..p`.
    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }
}

/// Dense matrix over a prime field, entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        FpMatrix { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, k: &PrimeField, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = FpMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = k.add(out.get(i, j), k.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, k: &PrimeField, v: &[u32]) -> Vec<u32> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| k.add(acc, k.mul(self.get(i, j), v[j]))))
            .collect()
    }

    pub fn add(&self, k: &PrimeField, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect();
        FpMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &PrimeField, c: u32) -> FpMatrix {
        FpMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| k.mul(a, c)).collect() }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Block matrix `[[a, b], [c, d]]`-style assembly from a grid of blocks;
    /// `None` entries are zero blocks.
    pub fn blocks(row_sizes: &[usize], col_sizes: &[usize], grid: &[Vec<Option<FpMatrix>>]) -> FpMatrix {
        let mut out = FpMatrix::zeros(row_sizes.iter().sum(), col_sizes.iter().sum());
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = &grid[bi][bj] {
                    assert_eq!((b.rows, b.cols), (rs, cs), "block has the wrong shape");
                    for i in 0..rs {
                        for j in 0..cs {
                            out.set(r0 + i, c0 + j, b.get(i, j));
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, k: &PrimeField) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(piv, j));
                m.set(r, j, b);
                m.set(piv, j, a);
            }
            let inv = k.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = k.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, k: &PrimeField) -> usize {
        self.rref(k).1.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self, k: &PrimeField) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self, k: &PrimeField) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(FpMatrix::zeros(0, 0));
        }
        let aug = FpMatrix::blocks(&[n], &[n, n], &[vec![Some(self.clone()), Some(FpMatrix::identity(n))]]);
        let (r, pivots) = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = FpMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let k = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
        }
        assert_eq!(k.from_i64(-1), 6);
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn kernel_and_inverse() {
        let k = PrimeField::new(3).unwrap();
        let m = FpMatrix::from_rows(2, 3, vec![1, 2, 0, 0, 1, 1]);
        for v in m.kernel(&k) {
            assert!(m.mul_vec(&k, &v).iter().all(|&x| x == 0));
        }
        assert_eq!(m.kernel(&k).len(), 1);
        let a = FpMatrix::from_rows(2, 2, vec![1, 1, 0, 2]);
        let ai = a.inverse(&k).unwrap();
        assert_eq!(a.mul(&k, &ai), FpMatrix::identity(2));
        assert!(FpMatrix::from_rows(2, 2, vec![1, 2, 2, 1]).inverse(&k).is_none());
    }
}

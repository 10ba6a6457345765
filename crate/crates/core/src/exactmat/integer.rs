use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MatrixError;

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `left · m · right = diag(diagonal)`; only the left transform and its
/// inverse are kept, which is what cokernel computations need.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub left_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), c, "ragged rows");
                r.iter().map(|&v| BigInt::from(v))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols: c,
            data,
        }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(BigInt::zero(), |acc, c| acc + self.get(r, c) * &v[c])
            })
            .collect()
    }

    /// Invariant factors d₁ | d₂ | … of the Smith normal form (zeros omitted).
    pub fn smith_normal_form(&self) -> Vec<BigInt> {
        self.smith_decomposition().invariant_factors()
    }

    pub fn smith_decomposition(&self) -> SmithDecomposition {
        let mut w = Work {
            a: self.clone(),
            left: Self::identity(self.rows),
            left_inv: Self::identity(self.rows),
        };
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = w.min_abs_entry(t) else {
                break;
            };
            w.swap_rows(t, pi);
            w.a.swap_cols(t, pj);
            loop {
                if w.clear_column(t) || w.clear_row(t) {
                    continue;
                }
                if let Some(i) = w.indivisible_row(t) {
                    w.add_row(i, t);
                    continue;
                }
                break;
            }
            if w.a.get(t, t).is_negative() {
                w.negate_row(t);
            }
        }
        let diagonal = (0..n).map(|i| w.a.get(i, i).clone()).collect();
        SmithDecomposition {
            diagonal,
            left: w.left,
            left_inv: w.left_inv,
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    fn swap_row_data(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// row[dst] += f · row[src]
    fn axpy_row(&mut self, src: usize, dst: usize, f: &BigInt) {
        for c in 0..self.cols {
            let v = f * self.get(src, c);
            if !v.is_zero() {
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += f · col[src]
    fn axpy_col(&mut self, src: usize, dst: usize, f: &BigInt) {
        for r in 0..self.rows {
            let v = f * self.get(r, src);
            if !v.is_zero() {
                self.data[r * self.cols + dst] += v;
            }
        }
    }
}

struct Work {
    a: IntegerMatrix,
    left: IntegerMatrix,
    left_inv: IntegerMatrix,
}

impl Work {
    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                if best.as_ref().map_or(true, |(_, b)| av < *b) {
                    best = Some(((i, j), av));
                }
            }
        }
        best.map(|(ij, _)| ij)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_row_data(a, b);
        self.left.swap_row_data(a, b);
        self.left_inv.swap_cols(a, b);
    }

    /// row[dst] += f · row[src], mirrored on the transforms.
    fn row_axpy(&mut self, src: usize, dst: usize, f: &BigInt) {
        self.a.axpy_row(src, dst, f);
        self.left.axpy_row(src, dst, f);
        self.left_inv.axpy_col(dst, src, &-f);
    }

    fn add_row(&mut self, src: usize, dst: usize) {
        self.row_axpy(src, dst, &BigInt::one());
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.a.cols {
            let v = -self.a.get(r, c);
            self.a.set(r, c, v);
        }
        for c in 0..self.left.cols {
            let v = -self.left.get(r, c);
            self.left.set(r, c, v);
        }
        for i in 0..self.left_inv.rows {
            let v = -self.left_inv.get(i, r);
            self.left_inv.set(i, r, v);
        }
    }

    /// Eliminates below the pivot; returns true if the pivot had to move.
    fn clear_column(&mut self, t: usize) -> bool {
        for i in t + 1..self.a.rows {
            if self.a.get(i, t).is_zero() {
                continue;
            }
            let q = self.a.get(i, t).div_floor(self.a.get(t, t));
            self.row_axpy(t, i, &-q);
            if !self.a.get(i, t).is_zero() {
                self.swap_rows(t, i);
                return true;
            }
        }
        false
    }

    fn clear_row(&mut self, t: usize) -> bool {
        for j in t + 1..self.a.cols {
            if self.a.get(t, j).is_zero() {
                continue;
            }
            let q = self.a.get(t, j).div_floor(self.a.get(t, t));
            self.a.axpy_col(t, j, &-q);
            if !self.a.get(t, j).is_zero() {
                self.a.swap_cols(t, j);
                return true;
            }
        }
        false
    }

    fn indivisible_row(&self, t: usize) -> Option<usize> {
        let p = self.a.get(t, t);
        (t + 1..self.a.rows)
            .find(|&i| (t + 1..self.a.cols).any(|j| !self.a.get(i, j).is_multiple_of(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let m = IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]);
        assert_eq!(m.smith_normal_form(), ints(&[2, 4]));
        // gcd of 1x1 minors is 1, |det| = 6, so the factors are 1 and 6.
        let m = IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(m.smith_normal_form(), ints(&[1, 6]));
        assert!(IntegerMatrix::zeros(3, 2).smith_normal_form().is_empty());
    }

    /// gcd of all k×k minors, by brute force over row/column subsets.
    fn minor_gcd(m: &IntegerMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        fn det(rows: &[Vec<BigInt>]) -> BigInt {
            if rows.is_empty() {
                return BigInt::one();
            }
            let n = rows.len();
            let mut acc = BigInt::zero();
            for c in 0..n {
                let minor: Vec<Vec<BigInt>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &rows[0][c] * det(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m.get(r, c).clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        g
    }

    proptest! {
        #[test]
        fn factors_match_minor_gcds(r in 1usize..4, c in 1usize..4, v in proptest::collection::vec(-6i64..7, 9)) {
            let m = IntegerMatrix::new(r, c, ints(&v[..r * c])).unwrap();
            let sd = m.smith_decomposition();
            let f = sd.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let mut prod = BigInt::one();
            for k in 1..=r.min(c) {
                let g = minor_gcd(&m, k);
                if k <= f.len() {
                    prod *= &f[k - 1];
                    prop_assert_eq!(&prod, &g);
                } else {
                    prop_assert!(g.is_zero());
                }
            }
            prop_assert_eq!(sd.left.mul(&sd.left_inv), IntegerMatrix::identity(r));
        }
    }
}

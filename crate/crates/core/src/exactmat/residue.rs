use super::{ext_gcd, gcd_u64, inv_mod, mul_mod, MatrixError};

/// Matrix over ℤ/m for an arbitrary modulus m ≥ 2.
///
/// ℤ/m is a principal ideal ring, so the matrix can be brought to diagonal
/// form by unimodular row and column operations; that diagonal form is the
/// basis for kernels and linear solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Generators of `ker A ⊆ (ℤ/m)^n` with their additive orders, plus the
/// coordinate map that writes a kernel element in those generators.
#[derive(Clone, Debug)]
pub struct ResidueKernel {
    modulus: u64,
    generators: Vec<Vec<u64>>,
    orders: Vec<u64>,
    /// For each generator: which transformed coordinate carries it and the
    /// multiplier m / order.
    slots: Vec<(usize, u64)>,
    w_inv: Vec<Vec<u64>>,
}

impl ResidueKernel {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of kernel elements, if it fits in a u128.
    pub fn size(&self) -> Option<u128> {
        self.orders
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }

    /// Coordinates `c` with `x = Σ cᵢ·genᵢ` (cᵢ mod orderᵢ), or `None` when
    /// `x` is not in the kernel.
    pub fn coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let y: Vec<u64> = self
            .w_inv
            .iter()
            .map(|row| row.iter().zip(x).fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, m)) % m))
            .collect();
        // non-generator slots must vanish
        let mut coords = Vec::with_capacity(self.slots.len());
        let mut used = vec![false; y.len()];
        for &(slot, mult) in &self.slots {
            used[slot] = true;
            if y[slot] % mult != 0 {
                return None;
            }
            coords.push((y[slot] / mult) % (m / mult));
        }
        if y.iter().zip(&used).any(|(&v, &u)| !u && v != 0) {
            return None;
        }
        Some(coords)
    }
}

struct Diagonalized {
    diag: Vec<u64>,
    w: Vec<Vec<u64>>,
    w_inv: Vec<Vec<u64>>,
    rhs: Option<Vec<u64>>,
}

impl ResidueMatrix {
    pub fn new(modulus: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, MatrixError> {
        if modulus < 2 {
            return Err(MatrixError::BadModulus(modulus));
        }
        if data.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self {
            modulus,
            rows,
            cols,
            data: data.into_iter().map(|x| x % modulus).collect(),
        })
    }

    pub fn from_signed(modulus: u64, rows: usize, cols: usize, data: &[i64]) -> Result<Self, MatrixError> {
        if modulus < 2 {
            return Err(MatrixError::BadModulus(modulus));
        }
        let m = modulus as i64;
        Self::new(
            modulus,
            rows,
            cols,
            data.iter().map(|&x| x.rem_euclid(m) as u64).collect(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        (0..self.rows)
            .map(|r| (0..self.cols).fold(0, |acc, c| (acc + mul_mod(self.get(r, c), v[c], m)) % m))
            .collect()
    }

    pub fn kernel(&self) -> ResidueKernel {
        let m = self.modulus;
        let d = self.diagonalize(None);
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        let mut slots = Vec::new();
        for i in 0..self.cols {
            let order = match d.diag.get(i) {
                Some(&s) => gcd_u64(s, m),
                None => m,
            };
            if order == 1 {
                continue;
            }
            let mult = m / order;
            generators.push((0..self.cols).map(|r| mul_mod(d.w[r][i], mult, m)).collect());
            orders.push(order);
            slots.push((i, mult));
        }
        ResidueKernel {
            modulus: m,
            generators,
            orders,
            slots,
            w_inv: d.w_inv,
        }
    }

    /// Some `x` with `A·x ≡ b (mod m)`, or `None`.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let m = self.modulus;
        let d = self.diagonalize(Some(b.iter().map(|x| x % m).collect()));
        let rhs = d.rhs.expect("rhs carried through");
        let mut y = vec![0u64; self.cols];
        for (i, &c) in rhs.iter().enumerate() {
            let s = d.diag.get(i).copied().unwrap_or(0);
            let g = gcd_u64(s, m);
            if c % g != 0 {
                return Ok(None);
            }
            if s == 0 {
                continue;
            }
            let mg = m / g;
            if mg == 1 {
                continue;
            }
            let inv = inv_mod((s / g) % mg, mg).expect("coprime after division by gcd");
            y[i] = mul_mod((c / g) % mg, inv, mg);
        }
        let x = (0..self.cols)
            .map(|r| {
                (0..self.cols).fold(0, |acc, k| (acc + mul_mod(d.w[r][k], y[k], m)) % m)
            })
            .collect();
        Ok(Some(x))
    }

    fn diagonalize(&self, rhs: Option<Vec<u64>>) -> Diagonalized {
        let m = self.modulus;
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<u64>> = (0..rows)
            .map(|r| self.data[r * cols..(r + 1) * cols].to_vec())
            .collect();
        let mut rhs = rhs;
        let ident = |n: usize| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
                .collect()
        };
        let mut w = ident(cols);
        let mut w_inv = ident(cols);
        let mut diag = Vec::new();

        // lin(x, y) = (p·x + q·y) mod m for signed coefficients
        let lin = |p: i128, x: u64, q: i128, y: u64| -> u64 {
            (p * x as i128 + q * y as i128).rem_euclid(m as i128) as u64
        };

        for t in 0..rows.min(cols) {
            // pivot: entry generating the largest ideal, first in scan order
            let mut best: Option<(u64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 {
                        let g = gcd_u64(v, m);
                        if best.map_or(true, |(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            a.swap(t, pi);
            if let Some(r) = rhs.as_mut() {
                r.swap(t, pi);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in w.iter_mut() {
                    row.swap(t, pj);
                }
                w_inv.swap(t, pj);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    let (p, b) = (a[t][t], a[i][t]);
                    if b == 0 {
                        continue;
                    }
                    if b % p == 0 {
                        let q = (b / p) as i128;
                        for j in t..cols {
                            a[i][j] = lin(1, a[i][j], -q, a[t][j]);
                        }
                        if let Some(r) = rhs.as_mut() {
                            r[i] = lin(1, r[i], -q, r[t]);
                        }
                    } else {
                        let (g, s, u) = ext_gcd(p as i128, b as i128);
                        let (pg, bg) = (p as i128 / g, b as i128 / g);
                        for j in t..cols {
                            let (x, y) = (a[t][j], a[i][j]);
                            a[t][j] = lin(s, x, u, y);
                            a[i][j] = lin(-bg, x, pg, y);
                        }
                        if let Some(r) = rhs.as_mut() {
                            let (x, y) = (r[t], r[i]);
                            r[t] = lin(s, x, u, y);
                            r[i] = lin(-bg, x, pg, y);
                        }
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    let (p, b) = (a[t][t], a[t][j]);
                    if b == 0 {
                        continue;
                    }
                    if b % p == 0 {
                        let q = (b / p) as i128;
                        for row in a.iter_mut() {
                            row[j] = lin(1, row[j], -q, row[t]);
                        }
                        for row in w.iter_mut() {
                            row[j] = lin(1, row[j], -q, row[t]);
                        }
                        for k in 0..cols {
                            w_inv[t][k] = lin(1, w_inv[t][k], q, w_inv[j][k]);
                        }
                    } else {
                        let (g, s, u) = ext_gcd(p as i128, b as i128);
                        let (pg, bg) = (p as i128 / g, b as i128 / g);
                        for row in a.iter_mut().chain(w.iter_mut()) {
                            let (x, y) = (row[t], row[j]);
                            row[t] = lin(s, x, u, y);
                            row[j] = lin(-bg, x, pg, y);
                        }
                        for k in 0..cols {
                            let (x, y) = (w_inv[t][k], w_inv[j][k]);
                            w_inv[t][k] = lin(pg, x, bg, y);
                            w_inv[j][k] = lin(-u, x, s, y);
                        }
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            diag.push(a[t][t]);
        }
        Diagonalized {
            diag,
            w,
            w_inv,
            rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_two_mod_four() {
        // 2x ≡ 0 (mod 4) has solutions {0, 2}
        let a = ResidueMatrix::new(4, 1, 1, vec![2]).unwrap();
        let k = a.kernel();
        assert_eq!(k.orders(), &[2]);
        assert_eq!(k.generators(), &[vec![2]]);
        assert_eq!(k.coordinates(&[2]), Some(vec![1]));
        assert_eq!(k.coordinates(&[1]), None);
    }

    #[test]
    fn solve_respects_divisibility() {
        let a = ResidueMatrix::new(6, 1, 1, vec![4]).unwrap();
        assert!(a.solve(&[3]).unwrap().is_none());
        let x = a.solve(&[2]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![2]);
    }

    /// All vectors of (ℤ/m)^n, brute force.
    fn all_vectors(m: u64, n: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                }))
                .collect();
        }
        out
    }

    proptest! {
        #[test]
        fn kernel_matches_enumeration(m in prop::sample::select(vec![2u64, 4, 6, 8, 9, 12]),
                                      r in 1usize..4, c in 1usize..4,
                                      data in proptest::collection::vec(0u64..12, 9)) {
            let a = ResidueMatrix::new(m, r, c, data[..r * c].to_vec()).unwrap();
            let k = a.kernel();
            let brute: Vec<Vec<u64>> = all_vectors(m, c)
                .into_iter()
                .filter(|v| a.mul_vec(v).iter().all(|&x| x == 0))
                .collect();
            prop_assert_eq!(k.size().unwrap(), brute.len() as u128);
            for g in k.generators() {
                prop_assert!(a.mul_vec(g).iter().all(|&x| x == 0));
            }
            for v in &brute {
                let coords = k.coordinates(v);
                prop_assert!(coords.is_some());
                let coords = coords.unwrap();
                let mut rebuilt = vec![0u64; c];
                for (g, &cf) in k.generators().iter().zip(&coords) {
                    for (x, &gv) in rebuilt.iter_mut().zip(g) {
                        *x = (*x + cf * gv) % m;
                    }
                }
                prop_assert_eq!(&rebuilt, v);
            }
        }

        #[test]
        fn solve_matches_enumeration(m in prop::sample::select(vec![4u64, 6, 8]),
                                     r in 1usize..3, c in 1usize..4,
                                     data in proptest::collection::vec(0u64..8, 9),
                                     b in proptest::collection::vec(0u64..8, 3)) {
            let a = ResidueMatrix::new(m, r, c, data[..r * c].to_vec()).unwrap();
            let b: Vec<u64> = b[..r].iter().map(|x| x % m).collect();
            let exists = all_vectors(m, c).iter().any(|v| a.mul_vec(v) == b);
            match a.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
                None => prop_assert!(!exists),
            }
        }
    }
}

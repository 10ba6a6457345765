use super::{inv_mod, is_prime, mul_mod, BitMatrix, MatrixError};

/// Matrix over the prime field ℤ/p. Entries are always reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn new(modulus: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, MatrixError> {
        if !is_prime(modulus) {
            return Err(MatrixError::NotPrime(modulus));
        }
        if data.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        let data = data.into_iter().map(|x| x % modulus).collect();
        Ok(Self {
            modulus,
            rows,
            cols,
            data,
        })
    }

    /// Reduces a signed integer matrix modulo `p`.
    pub fn from_signed(modulus: u64, rows: usize, cols: usize, data: &[i64]) -> Result<Self, MatrixError> {
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

    fn to_bits(&self) -> BitMatrix {
        BitMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) == 1)
    }

    /// Exact rank; modulus 2 is routed through the packed-bit representation.
    pub fn rank(&self) -> usize {
        if self.modulus == 2 {
            self.to_bits().rank()
        } else {
            self.clone().rref().len()
        }
    }

    /// Rank by the generic field elimination, regardless of modulus.
    pub fn rank_generic(&self) -> usize {
        self.clone().rref().len()
    }

    fn rref(&mut self) -> Vec<usize> {
        let p = self.modulus;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(r * cols + j, piv * cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p).expect("nonzero element of a field");
            for j in c..cols {
                self.data[r * cols + j] = mul_mod(self.data[r * cols + j], inv, p);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = mul_mod(f, self.data[r * cols + j], p);
                    let v = &mut self.data[i * cols + j];
                    *v = (*v + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Null-space basis with the free-column normalization of
    /// [`RationalMatrix::kernel_basis`](super::RationalMatrix::kernel_basis).
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        if self.modulus == 2 {
            return self
                .to_bits()
                .kernel_basis()
                .into_iter()
                .map(|v| v.into_iter().map(u64::from).collect())
                .collect();
        }
        self.kernel_basis_generic()
    }

    pub fn kernel_basis_generic(&self) -> Vec<Vec<u64>> {
        let p = self.modulus;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let p = self.modulus;
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0u64, |acc, c| (acc + mul_mod(self.get(r, c), v[c], p)) % p)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            PrimeFieldMatrix::new(4, 1, 1, vec![1]),
            Err(MatrixError::NotPrime(4))
        );
    }

    #[test]
    fn rank_over_different_fields() {
        // [[1,1],[1,-1]] has determinant -2: singular mod 2, regular mod 3.
        let d = [1, 1, 1, -1];
        assert_eq!(PrimeFieldMatrix::from_signed(2, 2, 2, &d).unwrap().rank(), 1);
        assert_eq!(PrimeFieldMatrix::from_signed(3, 2, 2, &d).unwrap().rank(), 2);
    }

    proptest! {
        #[test]
        fn bit_path_matches_generic(r in 1usize..12, c in 1usize..80, seed in any::<u64>()) {
            let mut s = seed;
            let data: Vec<u64> = (0..r * c).map(|_| {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                s & 1
            }).collect();
            let m = PrimeFieldMatrix::new(2, r, c, data).unwrap();
            prop_assert_eq!(m.rank(), m.rank_generic());
            prop_assert_eq!(m.kernel_basis(), m.kernel_basis_generic());
        }

        #[test]
        fn rank_nullity_mod_p(p in prop::sample::select(vec![3u64, 5, 7]), r in 1usize..6, c in 1usize..6,
                              data in proptest::collection::vec(0u64..7, 36)) {
            let m = PrimeFieldMatrix::new(p, r, c, data[..r * c].to_vec()).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), c);
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }
    }
}

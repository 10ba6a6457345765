/// Matrix over GF(2) with rows packed into 64-bit words.
///
/// Row operations are word-parallel XORs, which is what makes the large
/// ℤ/2 coboundary matrices cheap to eliminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
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

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let w = self.words;
            for k in 0..w {
                self.data.swap(a * w + k, b * w + k);
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Null-space basis, one vector per free column (1 there, 0 at the other
    /// free columns).
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![false; self.cols];
                v[f] = true;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| v[c] && self.get(r, c)).count() % 2 == 1)
            .collect()
    }
}

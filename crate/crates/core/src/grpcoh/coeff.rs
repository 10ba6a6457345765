use std::fmt;

use super::GroupError;

/// The finite abelian group ⊕ᵢ ℤ/mᵢ, written additively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianCoefficients {
    orders: Vec<u64>,
}

impl AbelianCoefficients {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        if orders.is_empty() {
            return Err(GroupError::Coefficients("at least one cyclic factor is required".into()));
        }
        if let Some(&m) = orders.iter().find(|&&m| m < 2) {
            return Err(GroupError::Coefficients(format!("cyclic factor order {m} is below 2")));
        }
        Ok(Self { orders })
    }

    pub fn cyclic(m: u64) -> Self {
        Self::new(vec![m]).expect("order at least 2")
    }

    /// `z<m>`, `klein4`, products such as `z2xz3`, or a list like `[2,2]`.
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let t = spec.trim().to_ascii_lowercase();
        if t == "klein4" || t == "v4" {
            return Self::new(vec![2, 2]);
        }
        let bad = || GroupError::Coefficients(format!("cannot parse coefficient group {spec:?}"));
        let orders: Vec<u64> = if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            inner
                .split(',')
                .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            t.split('x')
                .map(|s| s.trim().strip_prefix('z').and_then(|r| r.parse::<u64>().ok()).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Self::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn is_valid(&self, a: &[u64]) -> bool {
        a.len() == self.orders.len() && a.iter().zip(&self.orders).all(|(x, m)| x < m)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(x, m)| (m - x) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    /// Mixed-radix index, first factor most significant.
    pub fn encode(&self, a: &[u64]) -> u64 {
        a.iter().zip(&self.orders).fold(0, |acc, (x, m)| acc * m + x)
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, m) in out.iter_mut().zip(&self.orders).rev() {
            *slot = idx % m;
            idx /= m;
        }
        out
    }

    /// Reduces arbitrary integers into a valid element.
    pub fn reduce(&self, a: &[i64]) -> Vec<u64> {
        a.iter()
            .zip(&self.orders)
            .map(|(x, &m)| x.rem_euclid(m as i64) as u64)
            .collect()
    }
}

impl fmt::Display for AbelianCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| format!("z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_encode() {
        let a = AbelianCoefficients::parse("z2xz3").unwrap();
        assert_eq!(a.orders(), &[2, 3]);
        assert_eq!(a.size(), 6);
        for i in 0..6 {
            assert_eq!(a.encode(&a.decode(i)), i);
        }
        assert_eq!(AbelianCoefficients::parse("klein4").unwrap().orders(), &[2, 2]);
        assert_eq!(AbelianCoefficients::parse("[4, 2]").unwrap().orders(), &[4, 2]);
        assert!(AbelianCoefficients::parse("z1").is_err());
        assert!(AbelianCoefficients::parse("q8").is_err());
        assert_eq!(a.sub(&[0, 1], &[1, 2]), vec![1, 2]);
        assert_eq!(a.to_string(), "z2xz3");
    }
}

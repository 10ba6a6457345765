use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Polynomial over ℚ in pairs (cₖ, sₖ) standing for cosh 2πtₖ and sinh 2πtₖ,
/// kept reduced by cₖ² = 1 + sₖ² so every monomial has cₖ-degree ≤ 1.
/// Equal functions therefore have equal normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigPoly {
    vars: usize,
    /// monomial exponents (c₀, s₀, c₁, s₁, …) → coefficient
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl TrigPoly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, v: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; 2 * vars], v);
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// cosh 2πtₖ
    pub fn cosh(vars: usize, k: usize) -> Self {
        let mut e = vec![0; 2 * vars];
        e[2 * k] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigRational::one());
        p
    }

    /// sinh 2πtₖ
    pub fn sinh(vars: usize, k: usize) -> Self {
        let mut e = vec![0; 2 * vars];
        e[2 * k + 1] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, v) = self.terms.iter().next().expect("one term");
                e.iter().all(|&x| x == 0).then(|| v.clone())
            }
            _ => None,
        }
    }

    /// Adds v·monomial, reducing cₖ² → 1 + sₖ² first.
    fn add_term(&mut self, mut e: Vec<u32>, v: BigRational) {
        if v.is_zero() {
            return;
        }
        if let Some(k) = (0..self.vars).find(|&k| e[2 * k] >= 2) {
            e[2 * k] -= 2;
            self.add_term(e.clone(), v.clone());
            e[2 * k + 1] += 2;
            self.add_term(e, v);
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += v;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Substitutes tₖ ↦ −tₖ.
    pub fn negate_var(&self, k: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, v) in &self.terms {
            let sign = if e[2 * k + 1] % 2 == 1 { -v.clone() } else { v.clone() };
            out.add_term(e.clone(), sign);
        }
        out
    }

    /// Evaluates at real parameters.
    pub fn eval(&self, ts: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        let two_pi = 2.0 * std::f64::consts::PI;
        self.terms
            .iter()
            .map(|(e, v)| {
                let mut x = v.to_f64().expect("finite");
                for k in 0..self.vars {
                    x *= (two_pi * ts[k]).cosh().powi(e[2 * k] as i32);
                    x *= (two_pi * ts[k]).sinh().powi(e[2 * k + 1] as i32);
                }
                x
            })
            .sum()
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), -v.clone())).collect(),
        }
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero(self.vars);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{v}")?;
            for k in 0..self.vars {
                for (name, deg) in [("c", e[2 * k]), ("s", e[2 * k + 1])] {
                    if deg > 0 {
                        write!(f, "·{name}{k}")?;
                        if deg > 1 {
                            write!(f, "^{deg}")?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// 4×4 matrix of trig polynomials.
pub type TrigMatrix = [[TrigPoly; 4]; 4];

pub fn trig_identity(vars: usize) -> TrigMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { TrigPoly::one(vars) } else { TrigPoly::zero(vars) }))
}

pub fn trig_mul(a: &TrigMatrix, b: &TrigMatrix) -> TrigMatrix {
    let vars = a[0][0].vars;
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(TrigPoly::zero(vars), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
    })
}

pub fn trig_transpose(a: &TrigMatrix) -> TrigMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Boost along x₁ with parameter tₖ: cosh on the diagonal of the (x₀,x₁)
/// block and −sinh off it.
pub fn symbolic_boost(vars: usize, k: usize) -> TrigMatrix {
    let mut m = trig_identity(vars);
    m[0][0] = TrigPoly::cosh(vars, k);
    m[1][1] = TrigPoly::cosh(vars, k);
    m[0][1] = -&TrigPoly::sinh(vars, k);
    m[1][0] = -&TrigPoly::sinh(vars, k);
    m
}

/// cosh and sinh of 2π(t₀ + t₁) by the addition formulas.
pub fn symbolic_boost_of_sum() -> TrigMatrix {
    let (c0, s0, c1, s1) = (TrigPoly::cosh(2, 0), TrigPoly::sinh(2, 0), TrigPoly::cosh(2, 1), TrigPoly::sinh(2, 1));
    let ch = &(&c0 * &c1) + &(&s0 * &s1);
    let sh = &(&s0 * &c1) + &(&c0 * &s1);
    let mut m = trig_identity(2);
    m[0][0] = ch.clone();
    m[1][1] = ch;
    m[0][1] = -&sh;
    m[1][0] = -&sh;
    m
}

//! Chevalley–Eilenberg cohomology with trivial real coefficients.
//!
//! Cochains of degree k are written in the basis `e^I` of Λᵏ𝔤* indexed by
//! strictly increasing index tuples `I`, ordered lexicographically. The
//! differential is
//!
//! ```text
//! (dω)(x₀,…,x_k) = Σ_{i<j} (−1)^{i+j} ω([xᵢ,xⱼ], x₀,…,x̂ᵢ,…,x̂ⱼ,…,x_k)
//! ```
//!
//! so `d₀ = 0` and `(d₁f)(x, y) = −f([x, y])`.
//!
//! Only the H² factor of the kernel of the universal covering map is
//! computable here; the π₁ factor of a Lie group is topological and is not.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactmat::RationalMatrix;
use crate::liealg::{LieAlgebra, LieError, StructureConstants};

/// Lexicographic list of strictly increasing k-tuples from `0..n`.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Matrix of `d_k : Λᵏ𝔤* → Λᵏ⁺¹𝔤*`; rows indexed by (k+1)-tuples, columns by k-tuples.
pub fn ce_differential(g: &LieAlgebra, k: usize) -> Result<RationalMatrix, LieError> {
    differential_of(g.constants(), k)
}

fn differential_of(c: &StructureConstants, k: usize) -> Result<RationalMatrix, LieError> {
    let n = c.dim();
    if k > n {
        return Err(LieError::DegreeOutOfRange { degree: k, dim: n });
    }
    let rows = wedge_basis(n, k + 1);
    let cols = wedge_basis(n, k);
    let col_index: HashMap<&[usize], usize> =
        cols.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (r, out) in rows.iter().enumerate() {
        for a in 0..out.len() {
            for b in a + 1..out.len() {
                let sign_ab = if (a + b) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = out
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != a && p != b)
                    .map(|(_, &x)| x)
                    .collect();
                for l in 0..n {
                    let coeff = c.get(out[a], out[b], l);
                    if coeff.is_zero() || rest.contains(&l) {
                        continue;
                    }
                    // sorting (l, rest…) moves l past the smaller entries of rest
                    let below = rest.iter().filter(|&&x| x < l).count();
                    let sign = if below % 2 == 0 { sign_ab } else { -sign_ab };
                    let mut tuple = rest.clone();
                    tuple.insert(below, l);
                    let col = col_index[tuple.as_slice()];
                    let v = if sign > 0 { coeff.clone() } else { -coeff.clone() };
                    m.add_at(r, col, &v);
                }
            }
        }
    }
    Ok(m)
}

/// The cochain complex with its differentials in degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct CEComplex {
    algebra: Arc<LieAlgebra>,
    differentials: Vec<RationalMatrix>,
}

impl CEComplex {
    /// Degrees up to 3 are enough for H²; larger `max_degree` is allowed but
    /// the cochain spaces grow like binom(dim, k).
    pub fn new(g: &Arc<LieAlgebra>, max_degree: usize) -> Result<Self, LieError> {
        let top = max_degree.min(g.dim());
        let differentials = (0..=top)
            .map(|k| ce_differential(g, k))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            algebra: Arc::clone(g),
            differentials,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn differential(&self, k: usize) -> Option<&RationalMatrix> {
        self.differentials.get(k)
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        binomial(self.algebra.dim(), k)
    }

    /// Whether `d_{k+1} · d_k = 0` for every stored pair.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).map(|p| p.is_zero()).unwrap_or(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub degree: usize,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
}

pub fn lie_cohomology(g: &LieAlgebra, k: usize) -> Result<CohomologyReport, LieError> {
    let n = g.dim();
    let dk = ce_differential(g, k)?;
    let dim_z = binomial(n, k) - dk.rank();
    let dim_b = if k == 0 { 0 } else { ce_differential(g, k - 1)?.rank() };
    Ok(CohomologyReport {
        algebra: g.name().to_string(),
        degree: k,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b,
    })
}

/// `dim ker d_k − rank d_{k−1}`.
pub fn lie_cohomology_dim(g: &LieAlgebra, k: usize) -> Result<usize, LieError> {
    lie_cohomology(g, k).map(|r| r.dim_h)
}

/// Antisymmetric bilinear form on 𝔤, stored by its values ω(xᵢ, xⱼ), i < j,
/// in lexicographic pair order.
#[derive(Clone, Debug, PartialEq)]
pub struct LieCocycle2 {
    algebra: Arc<LieAlgebra>,
    coeffs: Vec<BigRational>,
}

impl LieCocycle2 {
    pub fn new(g: &Arc<LieAlgebra>, coeffs: Vec<BigRational>) -> Result<Self, LieError> {
        let expected = binomial(g.dim(), 2);
        if coeffs.len() != expected {
            return Err(LieError::Length {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Self {
            algebra: Arc::clone(g),
            coeffs,
        })
    }

    pub fn zero(g: &Arc<LieAlgebra>) -> Self {
        Self {
            algebra: Arc::clone(g),
            coeffs: vec![BigRational::zero(); binomial(g.dim(), 2)],
        }
    }

    /// From values on selected pairs; unlisted pairs are zero and `(j, i)`
    /// entries are read as `−ω(xᵢ, xⱼ)`.
    pub fn from_pairs(g: &Arc<LieAlgebra>, pairs: &[((usize, usize), BigRational)]) -> Result<Self, LieError> {
        let mut w = Self::zero(g);
        let idx: HashMap<Vec<usize>, usize> = wedge_basis(g.dim(), 2)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        for ((i, j), v) in pairs {
            let (key, val) = match i.cmp(j) {
                std::cmp::Ordering::Less => (vec![*i, *j], v.clone()),
                std::cmp::Ordering::Greater => (vec![*j, *i], -v.clone()),
                std::cmp::Ordering::Equal => {
                    return Err(LieError::Parse(format!("ω(x{i}, x{i}) must vanish")))
                }
            };
            let at = *idx
                .get(&key)
                .ok_or_else(|| LieError::Parse(format!("pair ({i}, {j}) out of range")))?;
            w.coeffs[at] = val;
        }
        Ok(w)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    /// ω(xᵢ, xⱼ) for any ordered pair.
    pub fn value(&self, i: usize, j: usize) -> BigRational {
        let n = self.algebra.dim();
        let pair_index = |a: usize, b: usize| a * n - a * (a + 1) / 2 + (b - a - 1);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => -self.coeffs[pair_index(j, i)].clone(),
            std::cmp::Ordering::Equal => BigRational::zero(),
        }
    }

    /// First basis triple on which d₂ω is nonzero.
    pub fn closedness_violation(&self) -> Option<(usize, usize, usize)> {
        let d2 = ce_differential(&self.algebra, 2).ok()?;
        let dw = d2.mul_vec(&self.coeffs).expect("shape");
        let triples = wedge_basis(self.algebra.dim(), 3);
        dw.iter()
            .position(|v| !v.is_zero())
            .map(|r| (triples[r][0], triples[r][1], triples[r][2]))
    }

    pub fn is_closed(&self) -> bool {
        self.closedness_violation().is_none()
    }
}

/// Structure constants of 𝔤 ⊕ ℝz with `[x, y]' = [x, y] + ω(x, y)·z`,
/// without checking ω.
pub fn central_extension_constants(w: &LieCocycle2) -> StructureConstants {
    let g = w.algebra();
    let n = g.dim();
    let mut labels = g.labels().to_vec();
    labels.push(central_label(g));
    let mut sc = StructureConstants::zero(labels);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = g.constants().get(i, j, k);
                if !c.is_zero() {
                    sc.set(i, j, k, c.clone());
                }
            }
            sc.set(i, j, n, w.value(i, j));
        }
    }
    sc
}

fn central_label(g: &LieAlgebra) -> String {
    let mut z = "z".to_string();
    while g.labels().contains(&z) {
        z.push('\'');
    }
    z
}

/// Central extension of 𝔤 by a closed 2-cochain. The new basis vector `z`
/// (last) is central.
pub fn lie_central_extension(w: &LieCocycle2) -> Result<LieAlgebra, LieError> {
    if let Some((i, j, k)) = w.closedness_violation() {
        return Err(LieError::NotClosed(i, j, k));
    }
    let g = w.algebra();
    LieAlgebra::new(format!("{}+z", g.name()), central_extension_constants(w))
}

/// φ ∈ 𝔤* with `d₁φ = ω`, if ω is exact. In the basis `x' = x − φ(x)·z` the
/// extension is then the direct sum 𝔤 ⊕ ℝ.
pub fn exact_primitive(w: &LieCocycle2) -> Option<Vec<BigRational>> {
    let d1 = ce_differential(w.algebra(), 1).ok()?;
    d1.solve(w.coeffs()).expect("shape")
}

/// Rewrites the extension in the basis `x' = x − φ(x)z, z' = z` and checks
/// that every bracket loses its z-component.
pub fn splits_with(w: &LieCocycle2, phi: &[BigRational]) -> bool {
    let g = w.algebra();
    let n = g.dim();
    let ext = central_extension_constants(w);
    // [x'_i, x'_j] = [x_i, x_j]_ext = Σ c^k x_k + ω_ij z = Σ c^k x'_k + (Σ c^k φ_k + ω_ij) z
    (0..n).all(|i| {
        (0..n).all(|j| {
            let mut zc = ext.get(i, j, n).clone();
            for (k, p) in phi.iter().enumerate() {
                zc += ext.get(i, j, k) * p;
            }
            zc.is_zero()
        })
    })
}

/// Generic unit vector helper for tests and examples.
pub fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat;
    use crate::liealg::{derived_subalgebra, is_perfect, LieElement};

    fn alg(name: &str) -> Arc<LieAlgebra> {
        LieAlgebra::builtin(name).unwrap()
    }

    #[test]
    fn abelian_differentials_vanish() {
        let g = alg("abelian4");
        for k in 0..=4 {
            assert!(ce_differential(&g, k).unwrap().is_zero());
        }
    }

    #[test]
    fn poincare2_d2_is_zero_row() {
        let d2 = ce_differential(&alg("poincare2"), 2).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (1, 3));
        assert!(d2.is_zero());
    }

    #[test]
    fn poincare2_d1_on_dual_of_p0() {
        // basis J01, P0, P1; [J01, P1] = -P0, so (d₁P0*)(J01, P1) = -P0*([J01,P1]) = 1
        let g = alg("poincare2");
        let d1 = ce_differential(&g, 1).unwrap();
        let image = d1.mul_vec(&unit(3, 1)).unwrap();
        // pair order: (J01,P0), (J01,P1), (P0,P1)
        assert_eq!(image, vec![rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn degree_out_of_range() {
        assert_eq!(
            ce_differential(&alg("sl2"), 4).unwrap_err(),
            LieError::DegreeOutOfRange { degree: 4, dim: 3 }
        );
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(lie_cohomology_dim(&alg("poincare4"), 2).unwrap(), 0);
        assert_eq!(lie_cohomology_dim(&alg("abelian2"), 2).unwrap(), 1);
        let r = lie_cohomology(&alg("poincare2"), 2).unwrap();
        assert_eq!((r.dim_z, r.dim_b, r.dim_h), (3, 2, 1));
        assert_eq!(lie_cohomology_dim(&alg("sl2"), 1).unwrap(), 0);
        assert_eq!(lie_cohomology_dim(&alg("sl2"), 2).unwrap(), 0);
        assert_eq!(lie_cohomology_dim(&alg("heisenberg"), 0).unwrap(), 1);
    }

    #[test]
    fn d_squared_and_h1_annihilates_derived() {
        for name in ["poincare2", "poincare3", "poincare4", "lorentz4", "sl2", "heisenberg", "abelian3"] {
            let g = alg(name);
            let cx = CEComplex::new(&g, 4).unwrap();
            assert!(cx.squares_to_zero(), "{name}");
            let h1 = lie_cohomology_dim(&g, 1).unwrap();
            assert_eq!(h1, g.dim() - derived_subalgebra(&g).dim(), "{name}");
            assert_eq!(h1 == 0, is_perfect(&g));
        }
    }

    #[test]
    fn heisenberg_from_abelian() {
        let g = alg("abelian2");
        let w = LieCocycle2::from_pairs(&g, &[((0, 1), rat(1))]).unwrap();
        let h = Arc::new(lie_central_extension(&w).unwrap());
        assert_eq!(h.dim(), 3);
        let z = LieElement::basis(&h, 2);
        let d = derived_subalgebra(&h);
        assert_eq!(d.basis(), vec![z.clone()]);
        // z is central
        for i in 0..3 {
            assert!(crate::liealg::bracket(&LieElement::basis(&h, i), &z).unwrap().is_zero());
        }
    }

    #[test]
    fn zero_cocycle_gives_direct_sum() {
        let g = alg("sl2");
        let e = lie_central_extension(&LieCocycle2::zero(&g)).unwrap();
        assert_eq!(e.dim(), 4);
        assert_eq!(lie_cohomology_dim(&e, 1).unwrap(), 1);
    }

    #[test]
    fn non_closed_form_rejected_and_breaks_jacobi() {
        let g = alg("poincare4");
        // ω = J01* ∧ J02*
        let w = LieCocycle2::from_pairs(&g, &[((0, 1), rat(1))]).unwrap();
        let v = w.closedness_violation().expect("not closed");
        assert!(matches!(lie_central_extension(&w), Err(LieError::NotClosed(a, b, c)) if (a, b, c) == v));
        assert!(!central_extension_constants(&w).jacobi_defect().defect.is_zero());
    }

    #[test]
    fn poincare4_closed_forms_are_exact() {
        let g = alg("poincare4");
        let z2 = ce_differential(&g, 2).unwrap().kernel_basis();
        assert_eq!(z2.len(), ce_differential(&g, 1).unwrap().rank());
        for s in 0..z2.len() {
            // a basis vector plus a fixed combination of the next two
            let mut coeffs = z2[s].clone();
            for (t, f) in [(1, 3), (2, -2)] {
                for (c, v) in coeffs.iter_mut().zip(&z2[(s + t) % z2.len()]) {
                    *c += v * rat(f);
                }
            }
            let w = LieCocycle2::new(&g, coeffs).unwrap();
            assert!(w.is_closed());
            let phi = exact_primitive(&w).expect("H² = 0");
            assert!(splits_with(&w, &phi));
            lie_central_extension(&w).unwrap();
        }
    }

    #[test]
    fn abelian_cocycle_is_not_exact() {
        let g = alg("abelian2");
        let w = LieCocycle2::from_pairs(&g, &[((1, 0), rat(-1))]).unwrap();
        assert_eq!(w.value(0, 1), rat(1));
        assert!(exact_primitive(&w).is_none());
    }
}

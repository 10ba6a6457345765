//! Tomita–Takesaki theory for *-subalgebras of M_d(ℂ).
//!
//! Everything here is double precision. Antilinear maps are stored as a
//! matrix U acting by v ↦ U·conj(v). Algebras keep a basis orthonormal for
//! the trace pairing ⟨a,b⟩ = tr(a*b).

mod io;
mod tomita;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub use io::{
    analyze, parse_input, ModularDefects, ModularInput, ModularReport, Refusal, DEFAULT_KMS_SAMPLES, DEFAULT_TIMES,
};
pub use tomita::{kms_defect, kms_defect_with, modular_flow_defect, tomita, ModularTriple, TripleDefects};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Relative threshold below which a singular value or residual counts as zero
/// when building spans.
const SPAN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("no generators given")]
    Empty,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("state has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("vector is not cyclic for the algebra (rank {rank} < {dim})")]
    NotCyclic { rank: usize, dim: usize },
    #[error("vector is not separating: a nonzero element of the algebra annihilates it")]
    NotSeparating { annihilator: Vec<Vec<[f64; 2]>> },
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// ⟨a,b⟩ = tr(a*b)
pub fn trace_pairing(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Numerical rank with a threshold relative to the largest singular value.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Orthonormal basis of the right null space. Rows are zero-padded so the
/// SVD returns a full set of right singular vectors.
fn null_space(m: &CMatrix, rel_tol: f64) -> Vec<CVector> {
    let n = m.ncols();
    let padded = if m.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sv = &svd.singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    (0..n)
        .filter(|&i| sv[i] <= rel_tol * max.max(1.0))
        .map(|i| v_t.row(i).adjoint())
        .collect()
}

/// A unital *-subalgebra of M_d(ℂ) given by an orthonormal basis.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    d: usize,
    basis: Vec<CMatrix>,
}

impl MatrixAlgebra {
    pub fn scalars(d: usize) -> Self {
        Self {
            d,
            basis: vec![CMatrix::identity(d, d) / c((d as f64).sqrt())],
        }
    }

    pub fn full(d: usize) -> Self {
        let basis = (0..d * d)
            .map(|k| {
                let mut e = CMatrix::zeros(d, d);
                e[(k / d, k % d)] = c(1.0);
                e
            })
            .collect();
        Self { d, basis }
    }

    /// Orthonormalizes `elements` without checking closure.
    pub fn from_spanning_set(d: usize, elements: &[CMatrix]) -> Self {
        let mut alg = Self { d, basis: Vec::new() };
        for e in elements {
            alg.try_extend(e);
        }
        alg
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Distance from x to the span, relative to ‖x‖.
    pub fn residual(&self, x: &CMatrix) -> f64 {
        let nx = frobenius(x);
        if nx == 0.0 {
            return 0.0;
        }
        frobenius(&self.project_out(x)) / nx
    }

    pub fn contains(&self, x: &CMatrix, tol: f64) -> bool {
        self.residual(x) <= tol
    }

    pub fn contains_algebra(&self, other: &MatrixAlgebra, tol: f64) -> bool {
        other.basis.iter().all(|b| self.contains(b, tol))
    }

    fn project_out(&self, x: &CMatrix) -> CMatrix {
        let mut r = x.clone();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for b in &self.basis {
                let k = trace_pairing(b, &r);
                r -= b * k;
            }
        }
        r
    }

    fn try_extend(&mut self, x: &CMatrix) -> bool {
        let nx = frobenius(x);
        if nx == 0.0 {
            return false;
        }
        let r = self.project_out(x);
        let nr = frobenius(&r);
        if nr <= SPAN_TOLERANCE * nx {
            return false;
        }
        self.basis.push(r / c(nr));
        true
    }

    /// Largest relative residual of products and adjoints of basis elements,
    /// and of the identity.
    pub fn closure_defect(&self) -> f64 {
        let mut worst = self.residual(&CMatrix::identity(self.d, self.d));
        for a in &self.basis {
            worst = worst.max(self.residual(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.residual(&(a * b)));
            }
        }
        worst
    }

    pub fn is_star_closed(&self, tol: f64) -> bool {
        self.basis.iter().all(|a| self.contains(&a.adjoint(), tol))
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.contains(&CMatrix::identity(self.d, self.d), tol)
    }

    /// Subspace equality by mutual containment.
    pub fn same_as(&self, other: &MatrixAlgebra, tol: f64) -> bool {
        self.dim() == other.dim() && self.contains_algebra(other, tol) && other.contains_algebra(self, tol)
    }

    /// An element of the algebra from coefficients in the basis.
    pub fn element(&self, coeffs: &[Complex64]) -> CMatrix {
        self.basis
            .iter()
            .zip(coeffs)
            .fold(CMatrix::zeros(self.d, self.d), |acc, (b, &k)| acc + b * k)
    }
}

/// Smallest unital *-algebra containing the generators.
pub fn algebra_closure(generators: &[CMatrix]) -> Result<MatrixAlgebra, ModularError> {
    let first = generators.first().ok_or(ModularError::Empty)?;
    let d = first.nrows();
    if let Some(g) = generators.iter().find(|g| g.nrows() != d || g.ncols() != d) {
        return Err(ModularError::Shape(format!("expected {d}x{d}, got {}x{}", g.nrows(), g.ncols())));
    }
    let mut alg = MatrixAlgebra { d, basis: Vec::new() };
    alg.try_extend(&CMatrix::identity(d, d));
    for g in generators {
        alg.try_extend(g);
        alg.try_extend(&g.adjoint());
    }
    loop {
        let n = alg.dim();
        let mut grew = false;
        for i in 0..n {
            for j in 0..n {
                let p = &alg.basis[i] * &alg.basis[j];
                grew |= alg.try_extend(&p);
                grew |= alg.try_extend(&p.adjoint());
            }
        }
        if !grew || alg.dim() == d * d {
            break;
        }
    }
    Ok(alg)
}

/// {x : [x, b] = 0 for every basis element b}.
pub fn commutant(m: &MatrixAlgebra) -> MatrixAlgebra {
    let d = m.d;
    let k = m.basis.len();
    let mut sys = CMatrix::zeros(k * d * d, d * d);
    for col in 0..d * d {
        let mut e = CMatrix::zeros(d, d);
        e[(col / d, col % d)] = c(1.0);
        for (bi, b) in m.basis.iter().enumerate() {
            let comm = &e * b - b * &e;
            for (t, v) in comm.iter().enumerate() {
                sys[(bi * d * d + t, col)] = *v;
            }
        }
    }
    let null = null_space(&sys, SPAN_TOLERANCE);
    let elems: Vec<CMatrix> = null
        .iter()
        .map(|v| CMatrix::from_fn(d, d, |r, cc| v[r * d + cc]))
        .collect();
    MatrixAlgebra::from_spanning_set(d, &elems)
}

/// Columns xᵢΩ for the basis of M.
fn orbit_matrix(m: &MatrixAlgebra, omega: &CVector) -> CMatrix {
    let cols: Vec<CVector> = m.basis.iter().map(|b| b * omega).collect();
    CMatrix::from_columns(&cols)
}

/// MΩ spans ℂᵈ.
pub fn is_cyclic(m: &MatrixAlgebra, omega: &CVector) -> bool {
    numerical_rank(&orbit_matrix(m, omega), SPAN_TOLERANCE) == m.d
}

/// Result of both separation tests: x ↦ xΩ injective on M, and Ω cyclic for M′.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation {
    pub direct: bool,
    pub via_commutant: bool,
    /// A unit-norm element of M with xΩ ≈ 0 when the direct test fails.
    pub annihilator: Option<CMatrix>,
}

impl Separation {
    pub fn holds(&self) -> bool {
        self.direct && self.via_commutant
    }
}

pub fn separation(m: &MatrixAlgebra, omega: &CVector) -> Separation {
    let x = orbit_matrix(m, omega);
    let direct = numerical_rank(&x, SPAN_TOLERANCE) == m.dim();
    let annihilator = if direct {
        None
    } else {
        null_space(&x, SPAN_TOLERANCE).first().map(|v| {
            let coeffs: Vec<Complex64> = v.iter().copied().collect();
            m.element(&coeffs)
        })
    };
    let via_commutant = is_cyclic(&commutant(m), omega);
    Separation {
        direct,
        via_commutant,
        annihilator,
    }
}

pub fn is_separating(m: &MatrixAlgebra, omega: &CVector) -> bool {
    separation(m, omega).holds()
}

/// The algebra M_a ⊗ 1_b on ℂᵃ⊗ℂᵇ.
pub fn left_factor(a: usize, b: usize) -> MatrixAlgebra {
    let id = CMatrix::identity(b, b);
    let gens: Vec<CMatrix> = MatrixAlgebra::full(a).basis.iter().map(|e| kron(e, &id)).collect();
    MatrixAlgebra::from_spanning_set(a * b, &gens)
}

/// √p e₁⊗e₁ + √(1−p) e₂⊗e₂ in ℂ²⊗ℂ².
pub fn two_qubit_state(p: f64) -> CVector {
    let mut v = CVector::zeros(4);
    v[0] = c(p.sqrt());
    v[3] = c((1.0 - p).sqrt());
    v
}

pub(crate) fn to_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures() {
        assert_eq!(algebra_closure(&[CMatrix::identity(3, 3)]).unwrap().dim(), 1);
        // one self-adjoint generator only gives polynomials in it
        let h = CMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(1.0), c(-1.0)]);
        assert_eq!(algebra_closure(&[h]).unwrap().dim(), 2);
        let e12 = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert_eq!(algebra_closure(&[e12]).unwrap().dim(), 4);
        let diag = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(2.0), c(2.0)]));
        assert_eq!(algebra_closure(&[diag]).unwrap().dim(), 2);
        let m = left_factor(2, 2);
        assert_eq!(m.dim(), 4);
        assert!(m.closure_defect() < 1e-12);
        assert!(algebra_closure(&[]).is_err());
        let bad = [CMatrix::identity(2, 2), CMatrix::identity(3, 3)];
        assert!(matches!(algebra_closure(&bad), Err(ModularError::Shape(_))));
    }

    #[test]
    fn commutants() {
        let m = left_factor(2, 2);
        let mc = commutant(&m);
        assert_eq!(mc.dim(), 4);
        // 1 ⊗ M₂
        let id = CMatrix::identity(2, 2);
        for e in MatrixAlgebra::full(2).basis() {
            assert!(mc.contains(&kron(&id, e), 1e-12));
        }
        assert!(commutant(&mc).same_as(&m, 1e-10));
        assert_eq!(commutant(&MatrixAlgebra::full(3)).dim(), 1);
        assert_eq!(commutant(&MatrixAlgebra::scalars(3)).dim(), 9);
    }

    #[test]
    fn cyclic_and_separating() {
        let m = left_factor(2, 2);
        let ent = two_qubit_state(0.5);
        assert!(is_cyclic(&m, &ent) && is_separating(&m, &ent));
        let prod = two_qubit_state(1.0);
        let s = separation(&m, &prod);
        assert!(!s.direct && !s.via_commutant);
        let x = s.annihilator.unwrap();
        assert!((&x * &prod).norm() < 1e-12 && frobenius(&x) > 0.5);
        let full = MatrixAlgebra::full(2);
        let v = CVector::from_vec(vec![c(0.6), c(0.8)]);
        assert!(is_cyclic(&full, &v) && !is_separating(&full, &v));
    }
}

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    c, commutant, frobenius, is_cyclic, numerical_rank, separation, to_pairs, CMatrix, CVector, MatrixAlgebra,
    ModularError, SPAN_TOLERANCE,
};

/// S, Δ and J for a cyclic separating vector.
///
/// With X = [bᵢΩ] and Y = [bᵢ*Ω] over a basis of M, S = A∘conj with
/// A = Y·conj(X⁻¹). Then Δ = S*S = Aᵀ·conj(A) and J = S·Δ^{-1/2} is
/// A·conj(Δ^{-1/2}) composed with conjugation.
#[derive(Clone, Debug)]
pub struct ModularTriple {
    s: CMatrix,
    delta: CMatrix,
    j: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
    condition: f64,
}

/// Deviations from the defining identities of a modular triple.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleDefects {
    /// max ‖S xΩ − x*Ω‖ over basis elements
    pub s_action: f64,
    /// ‖S − JΔ^{1/2}‖
    pub polar: f64,
    /// ‖J² − 1‖
    pub j_squared: f64,
    /// ‖JΔJ − Δ⁻¹‖
    pub j_delta_j: f64,
    /// ‖ΔΩ − Ω‖
    pub delta_omega: f64,
    /// ‖JΩ − Ω‖
    pub j_omega: f64,
}

impl TripleDefects {
    pub fn max(&self) -> f64 {
        [self.s_action, self.polar, self.j_squared, self.j_delta_j, self.delta_omega, self.j_omega]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn tomita(m: &MatrixAlgebra, omega: &CVector) -> Result<ModularTriple, ModularError> {
    let d = m.ambient_dim();
    if omega.len() != d {
        return Err(ModularError::Shape(format!("state has length {}, expected {d}", omega.len())));
    }
    let norm = omega.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(ModularError::NotUnit(norm));
    }
    let sep = separation(m, omega);
    if !sep.holds() {
        let annihilator = sep.annihilator.map(|a| to_pairs(&a)).unwrap_or_default();
        return Err(ModularError::NotSeparating { annihilator });
    }
    if !is_cyclic(m, omega) {
        let cols: Vec<CVector> = m.basis().iter().map(|b| b * omega).collect();
        return Err(ModularError::NotCyclic {
            rank: numerical_rank(&CMatrix::from_columns(&cols), SPAN_TOLERANCE),
            dim: d,
        });
    }
    let xs: Vec<CVector> = m.basis().iter().map(|b| b * omega).collect();
    let ys: Vec<CVector> = m.basis().iter().map(|b| b.adjoint() * omega).collect();
    let x = CMatrix::from_columns(&xs);
    let y = CMatrix::from_columns(&ys);
    let sv = x.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_inv = x.try_inverse().ok_or(ModularError::NotCyclic { rank: d - 1, dim: d })?;
    let a = &y * x_inv.conjugate();
    let delta = a.transpose() * a.conjugate();
    let delta = (&delta + delta.adjoint()) * c(0.5);
    let eig = delta.clone().symmetric_eigen();
    let eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let eigenvectors = eig.eigenvectors;
    let mut t = ModularTriple {
        s: a,
        delta,
        j: CMatrix::zeros(d, d),
        eigenvalues,
        eigenvectors,
        condition: smax / smin,
    };
    let inv_sqrt = t.delta_power(-0.5);
    t.j = &t.s * inv_sqrt.conjugate();
    Ok(t)
}

impl ModularTriple {
    pub fn delta(&self) -> &CMatrix {
        &self.delta
    }

    /// U with J v = U·conj(v).
    pub fn j_unitary(&self) -> &CMatrix {
        &self.j
    }

    /// A with S v = A·conj(v).
    pub fn s_matrix(&self) -> &CMatrix {
        &self.s
    }

    /// Eigenvalues of Δ in increasing order.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut ev = self.eigenvalues.clone();
        ev.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        ev
    }

    /// Condition number of the orbit matrix [xᵢΩ].
    pub fn condition(&self) -> f64 {
        self.condition
    }

    fn spectral(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let v = &self.eigenvectors;
        let diag = CMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| f(l)),
        ));
        v * diag * v.adjoint()
    }

    /// Δ^r for real r.
    pub fn delta_power(&self, r: f64) -> CMatrix {
        self.spectral(|l| c(l.powf(r)))
    }

    /// Δ^{it}
    pub fn delta_it(&self, t: f64) -> CMatrix {
        self.spectral(|l| Complex64::from_polar(1.0, t * l.ln()))
    }

    pub fn apply_j(&self, v: &CVector) -> CVector {
        &self.j * v.conjugate()
    }

    pub fn apply_s(&self, v: &CVector) -> CVector {
        &self.s * v.conjugate()
    }

    /// Matrix of the linear map x ↦ JxJ.
    pub fn conjugate_by_j(&self, x: &CMatrix) -> CMatrix {
        &self.j * x.conjugate() * self.j.conjugate()
    }

    /// The same triple with two eigenvalues of Δ exchanged: the largest and
    /// the second smallest. Exchanging the two extremes would give Δ⁻¹ on
    /// symmetric spectra, which is still a valid flow.
    pub fn with_swapped_eigenvalues(&self) -> Self {
        let mut order: Vec<usize> = (0..self.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| self.eigenvalues[a].partial_cmp(&self.eigenvalues[b]).expect("finite"));
        let mut out = self.clone();
        if order.len() >= 2 {
            let hi = order[order.len() - 1];
            let lo = order[if order.len() >= 3 { 1 } else { 0 }];
            out.eigenvalues.swap(lo, hi);
        }
        out.delta = out.spectral(c);
        out
    }

    pub fn defects(&self, m: &MatrixAlgebra, omega: &CVector) -> TripleDefects {
        let d = self.delta.nrows();
        let id = CMatrix::identity(d, d);
        let s_action = m
            .basis()
            .iter()
            .map(|b| (self.apply_s(&(b * omega)) - b.adjoint() * omega).norm())
            .fold(0.0, f64::max);
        let polar = frobenius(&(&self.s - &self.j * self.delta_power(0.5).conjugate()));
        // J² v = U conj(U conj v) = U Ū v
        let j_squared = frobenius(&(&self.j * self.j.conjugate() - &id));
        let j_delta_j = frobenius(&(self.conjugate_by_j(&self.delta) - self.delta_power(-1.0)));
        let delta_omega = (&self.delta * omega - omega).norm();
        let j_omega = (self.apply_j(omega) - omega).norm();
        TripleDefects {
            s_action,
            polar,
            j_squared,
            j_delta_j,
            delta_omega,
            j_omega,
        }
    }

    /// max relative distance of JbJ from M′ over basis elements b, together
    /// with the reverse containment, so that zero means JMJ = M′.
    pub fn commutant_defect(&self, m: &MatrixAlgebra) -> f64 {
        let mc = commutant(m);
        let jmj = MatrixAlgebra::from_spanning_set(
            m.ambient_dim(),
            &m.basis().iter().map(|b| self.conjugate_by_j(b)).collect::<Vec<_>>(),
        );
        if jmj.dim() != mc.dim() {
            return f64::INFINITY;
        }
        let forward = jmj.basis().iter().map(|b| mc.residual(b)).fold(0.0, f64::max);
        let backward = mc.basis().iter().map(|b| jmj.residual(b)).fold(0.0, f64::max);
        forward.max(backward)
    }
}

/// max over t and basis elements b of the distance from Δ^{it} b Δ^{−it} to M.
pub fn modular_flow_defect(triple: &ModularTriple, m: &MatrixAlgebra, times: &[f64]) -> f64 {
    times
        .iter()
        .map(|&t| {
            let u = triple.delta_it(t);
            let u_inv = triple.delta_it(-t);
            m.basis().iter().map(|b| m.residual(&(&u * b * &u_inv))).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn random_element(m: &MatrixAlgebra, rng: &mut ChaCha8Rng) -> CMatrix {
    let coeffs: Vec<Complex64> = (0..m.dim())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let x = m.element(&coeffs);
    let n = frobenius(&x);
    x / c(n)
}

/// max |⟨Ω, xΔyΩ⟩ − ⟨Ω, yxΩ⟩| over seeded random unit-norm pairs from M,
/// using the given Δ.
pub fn kms_defect_with(delta: &CMatrix, m: &MatrixAlgebra, omega: &CVector, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let x = random_element(m, &mut rng);
            let y = random_element(m, &mut rng);
            let lhs = omega.dotc(&(&x * delta * &y * omega));
            let rhs = omega.dotc(&(&y * &x * omega));
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}

pub fn kms_defect(m: &MatrixAlgebra, omega: &CVector, samples: usize, seed: u64) -> Result<f64, ModularError> {
    let t = tomita(m, omega)?;
    Ok(kms_defect_with(t.delta(), m, omega, samples, seed))
}

#[cfg(test)]
mod tests {
    use super::super::{left_factor, two_qubit_state};
    use super::*;

    #[test]
    fn tracial_state_gives_identity() {
        let m = left_factor(2, 2);
        let t = tomita(&m, &two_qubit_state(0.5)).unwrap();
        assert!(frobenius(&(t.delta() - CMatrix::identity(4, 4))) < 1e-12);
        assert!(kms_defect_with(t.delta(), &m, &two_qubit_state(0.5), 20, 1) < 1e-12);
    }

    #[test]
    fn two_thirds_spectrum() {
        let m = left_factor(2, 2);
        let omega = two_qubit_state(2.0 / 3.0);
        let t = tomita(&m, &omega).unwrap();
        let want = [0.5, 1.0, 1.0, 2.0];
        for (a, b) in t.spectrum().iter().zip(want) {
            assert!((a - b).abs() < 1e-10, "{:?}", t.spectrum());
        }
        assert!(t.defects(&m, &omega).max() < 1e-10);
        assert!(t.commutant_defect(&m) < 1e-10);
        assert!(modular_flow_defect(&t, &m, &[0.1, 0.5, 1.0, std::f64::consts::PI]) < 1e-10);
        assert!(modular_flow_defect(&t.with_swapped_eigenvalues(), &m, &[0.5]) > 0.1);
        assert!(kms_defect_with(&CMatrix::identity(4, 4), &m, &omega, 100, 3) > 0.01);
    }

    #[test]
    fn abelian_algebra_is_tracial() {
        let diag = |v: [f64; 3]| CMatrix::from_diagonal(&CVector::from_vec(v.iter().map(|&x| c(x)).collect()));
        let m = super::super::algebra_closure(&[diag([1.0, 0.0, 0.0]), diag([0.0, 1.0, 0.0])]).unwrap();
        assert_eq!(m.dim(), 3);
        let omega = CVector::from_vec(vec![c(0.2), Complex64::new(0.4, 0.4), c(0.8)]);
        let omega = &omega / c(omega.norm());
        let t = tomita(&m, &omega).unwrap();
        assert!(frobenius(&(t.delta() - CMatrix::identity(3, 3))) < 1e-10);
    }

    #[test]
    fn refusals() {
        let m = left_factor(2, 2);
        assert!(matches!(tomita(&m, &two_qubit_state(1.0)), Err(ModularError::NotSeparating { .. })));
        // full M₂ has a cyclic but never separating vector
        let full = MatrixAlgebra::full(2);
        let v = CVector::from_vec(vec![c(0.6), c(0.8)]);
        assert!(matches!(tomita(&full, &v), Err(ModularError::NotSeparating { .. })));
        let v = two_qubit_state(0.5) * c(2.0);
        assert!(matches!(tomita(&m, &v), Err(ModularError::NotUnit(_))));
    }
}

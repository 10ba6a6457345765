use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    algebra_closure, commutant, frobenius, is_cyclic, kms_defect_with, modular_flow_defect, separation, to_pairs,
    tomita, CMatrix, CVector, MatrixAlgebra, ModularError, DEFAULT_TOLERANCE,
};

/// Algebra generators and state, complex entries as [re, im].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModularInput {
    pub generators: Vec<Vec<Vec<[f64; 2]>>>,
    pub state: Vec<[f64; 2]>,
    /// Rescale the state to unit norm instead of rejecting it.
    #[serde(default)]
    pub normalize: bool,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub times: Option<Vec<f64>>,
    #[serde(default)]
    pub kms_samples: Option<usize>,
}

pub fn parse_input(text: &str) -> Result<ModularInput, ModularError> {
    serde_json::from_str(text).map_err(|e| ModularError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn to_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, ModularError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(ModularError::Shape("generator is not square".into()));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

impl ModularInput {
    pub fn algebra(&self) -> Result<MatrixAlgebra, ModularError> {
        let gens = self.generators.iter().map(|g| to_matrix(g)).collect::<Result<Vec<_>, _>>()?;
        algebra_closure(&gens)
    }

    pub fn state(&self) -> Result<CVector, ModularError> {
        let v = CVector::from_iterator(self.state.len(), self.state.iter().map(|p| Complex64::new(p[0], p[1])));
        if self.normalize {
            let n = v.norm();
            if n == 0.0 {
                return Err(ModularError::NotUnit(0.0));
            }
            Ok(v / Complex64::new(n, 0.0))
        } else {
            Ok(v)
        }
    }

    pub fn from_parts(m: &[CMatrix], state: &CVector) -> Self {
        Self {
            generators: m.iter().map(to_pairs).collect(),
            state: state.iter().map(|z| [z.re, z.im]).collect(),
            normalize: false,
            tolerance: None,
            times: None,
            kms_samples: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularDefects {
    pub s_action: f64,
    pub polar: f64,
    pub j_squared: f64,
    pub j_delta_j: f64,
    pub delta_omega: f64,
    pub j_omega: f64,
    pub modular_flow: f64,
    pub kms: f64,
    pub jmj_commutant: f64,
    pub commutant_delta_inverse: f64,
    pub spectrum_inversion: f64,
    /// Flow defect of Δ with its extreme eigenvalues swapped; should be large.
    pub swapped_delta_flow: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularReport {
    pub dimension: usize,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    pub closure_defect: f64,
    pub cyclic: bool,
    pub separating: bool,
    pub condition_number: f64,
    pub spectrum: Vec<f64>,
    pub defects: ModularDefects,
    pub times: Vec<f64>,
    pub kms_samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// All defects within tolerance.
    pub passed: bool,
}

/// Why no modular objects exist for the given pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refusal {
    pub reason: String,
    pub cyclic: bool,
    pub separating: bool,
    pub separating_via_commutant: bool,
    pub annihilator: Option<Vec<Vec<[f64; 2]>>>,
}

pub const DEFAULT_TIMES: [f64; 4] = [0.1, 0.5, 1.0, std::f64::consts::PI];
pub const DEFAULT_KMS_SAMPLES: usize = 100;

/// Full modular analysis. Errors in the input itself come back as
/// `Err(ModularError)` from [`ModularInput::algebra`] and friends; a valid
/// input whose state is not cyclic and separating gives a [`Refusal`].
pub fn analyze(
    m: &MatrixAlgebra,
    omega: &CVector,
    times: &[f64],
    kms_samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<Result<ModularReport, Refusal>, ModularError> {
    if omega.len() != m.ambient_dim() {
        return Err(ModularError::Shape(format!(
            "state has length {}, algebra acts on dimension {}",
            omega.len(),
            m.ambient_dim()
        )));
    }
    let cyclic = is_cyclic(m, omega);
    let sep = separation(m, omega);
    if !cyclic || !sep.holds() {
        let reason = if !sep.holds() { "state is not separating" } else { "state is not cyclic" };
        return Ok(Err(Refusal {
            reason: reason.into(),
            cyclic,
            separating: sep.direct,
            separating_via_commutant: sep.via_commutant,
            annihilator: sep.annihilator.as_ref().map(to_pairs),
        }));
    }
    let t = tomita(m, omega)?;
    let td = t.defects(m, omega);
    let mc = commutant(m);
    let t_comm = tomita(&mc, omega)?;
    let commutant_delta_inverse = frobenius(&(t_comm.delta() - t.delta_power(-1.0)));
    let spectrum = t.spectrum();
    let spectrum_inversion = spectrum
        .iter()
        .zip(spectrum.iter().rev())
        .map(|(a, b)| (a * b - 1.0).abs())
        .fold(0.0, f64::max);
    let defects = ModularDefects {
        s_action: td.s_action,
        polar: td.polar,
        j_squared: td.j_squared,
        j_delta_j: td.j_delta_j,
        delta_omega: td.delta_omega,
        j_omega: td.j_omega,
        modular_flow: modular_flow_defect(&t, m, times),
        kms: kms_defect_with(t.delta(), m, omega, kms_samples, seed),
        jmj_commutant: t.commutant_defect(m),
        commutant_delta_inverse,
        spectrum_inversion,
        swapped_delta_flow: modular_flow_defect(&t.with_swapped_eigenvalues(), m, times),
    };
    let passed = [
        defects.s_action,
        defects.polar,
        defects.j_squared,
        defects.j_delta_j,
        defects.delta_omega,
        defects.j_omega,
        defects.modular_flow,
        defects.kms,
        defects.jmj_commutant,
        defects.commutant_delta_inverse,
        defects.spectrum_inversion,
    ]
    .iter()
    .all(|&d| d <= tolerance);
    Ok(Ok(ModularReport {
        dimension: m.ambient_dim(),
        algebra_dim: m.dim(),
        commutant_dim: mc.dim(),
        closure_defect: m.closure_defect(),
        cyclic,
        separating: true,
        condition_number: t.condition(),
        spectrum,
        defects,
        times: times.to_vec(),
        kms_samples,
        seed,
        tolerance,
        passed,
    }))
}

impl ModularInput {
    pub fn run(&self, seed: u64) -> Result<Result<ModularReport, Refusal>, ModularError> {
        let m = self.algebra()?;
        let omega = self.state()?;
        let norm = omega.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(ModularError::NotUnit(norm));
        }
        let times = self.times.clone().unwrap_or_else(|| DEFAULT_TIMES.to_vec());
        analyze(
            &m,
            &omega,
            &times,
            self.kms_samples.unwrap_or(DEFAULT_KMS_SAMPLES),
            seed,
            self.tolerance.unwrap_or(DEFAULT_TOLERANCE),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::{kron, two_qubit_state};
    use super::*;

    fn m2_tensor_one() -> Vec<CMatrix> {
        let id = CMatrix::identity(2, 2);
        let x = CMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(|v| Complex64::new(v, 0.0)));
        let z = CMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0].map(|v| Complex64::new(v, 0.0)));
        vec![kron(&x, &id), kron(&z, &id)]
    }

    #[test]
    fn report_for_two_thirds() {
        let input = ModularInput::from_parts(&m2_tensor_one(), &two_qubit_state(2.0 / 3.0));
        let text = serde_json::to_string(&input).unwrap();
        let r = parse_input(&text).unwrap().run(7).unwrap().unwrap();
        assert_eq!(r.algebra_dim, 4);
        assert_eq!(r.commutant_dim, 4);
        assert!(r.passed, "{r:?}");
        assert!(r.defects.swapped_delta_flow > 0.1);
    }

    #[test]
    fn product_state_refused() {
        let input = ModularInput::from_parts(&m2_tensor_one(), &two_qubit_state(1.0));
        let refusal = input.run(0).unwrap().unwrap_err();
        assert!(!refusal.separating);
        assert!(refusal.annihilator.is_some());
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse_input("{\"generators\": [}").unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }
}

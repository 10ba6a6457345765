//! Tomita data for M₂ ⊗ 1 on ℂ²⊗ℂ² at several Schmidt weights, and the
//! refusal for a product state.

use modcov::modular::{
    analyze, kron, left_factor, two_qubit_state, CMatrix, CVector, DEFAULT_KMS_SAMPLES, DEFAULT_TIMES,
    DEFAULT_TOLERANCE,
};
use num_complex::Complex64;

fn main() {
    let m = left_factor(2, 2);
    for p in [0.5, 2.0 / 3.0, 0.9] {
        let omega = two_qubit_state(p);
        match analyze(&m, &omega, &DEFAULT_TIMES, DEFAULT_KMS_SAMPLES, 7, DEFAULT_TOLERANCE).unwrap() {
            Ok(r) => {
                let spec: Vec<String> = r.spectrum.iter().map(|x| format!("{x:.4}")).collect();
                println!(
                    "p = {p:.3}: spectrum of Δ [{}], kms defect {:.1e}, flow defect {:.1e}, passed {}",
                    spec.join(", "),
                    r.defects.kms,
                    r.defects.modular_flow,
                    r.passed
                );
            }
            Err(refusal) => println!("p = {p:.3}: refused, {}", refusal.reason),
        }
    }

    // e₁⊗e₁ is cyclic for nothing bigger than a line
    let mut product = CVector::zeros(4);
    product[0] = Complex64::new(1.0, 0.0);
    let id = CMatrix::identity(2, 2);
    let x = CMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(|v| Complex64::new(v, 0.0)));
    let z = CMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0].map(|v| Complex64::new(v, 0.0)));
    let gens = [kron(&x, &id), kron(&z, &id)];
    let m = modcov::modular::algebra_closure(&gens).unwrap();
    match analyze(&m, &product, &DEFAULT_TIMES, DEFAULT_KMS_SAMPLES, 7, DEFAULT_TOLERANCE).unwrap() {
        Ok(_) => println!("product state accepted (unexpected)"),
        Err(r) => println!("product state: {} (cyclic {}, separating {})", r.reason, r.cyclic, r.separating),
    }
}

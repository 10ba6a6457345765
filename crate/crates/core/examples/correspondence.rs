//! Classes of H²(P, A) against homomorphisms S → A for E → P with central
//! kernel S.

use modcov::ext::h1_h2_correspondence_check;
use modcov::grpcoh::{AbelianCoefficients, FiniteGroup, GroupHom};

fn main() {
    let cases = [("z4", "z2", vec![0, 1, 0, 1]), ("z6", "z3", vec![0, 1, 2, 0, 1, 2]), ("z6", "z2", vec![0, 1, 0, 1, 0, 1])];
    for (e, p, map) in cases {
        let eg = FiniteGroup::builtin(e).unwrap();
        let pg = FiniteGroup::builtin(p).unwrap();
        let sigma = GroupHom::new(&eg, &pg, map).unwrap();
        for coeff in ["z2", "z3"] {
            let a = AbelianCoefficients::parse(coeff).unwrap();
            let r = h1_h2_correspondence_check(&sigma, &a).unwrap();
            println!(
                "{e} → {p}, A = {coeff}: |H¹(S,A)| = {}, |H²(P,A)| = {}, bijective: {}",
                r.h1_order, r.h2_order, r.bijective
            );
            if let Some(reason) = &r.reason {
                println!("    {reason}");
            }
            for m in &r.mapping {
                println!("    class {:?} ↦ ψ = {:?} (H¹ class {:?})", m.class, m.homomorphism, m.h1_class);
            }
        }
    }
}

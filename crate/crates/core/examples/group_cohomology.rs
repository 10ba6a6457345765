//! H^1 and H^2 of small groups with trivial coefficients, as invariant factors.

use modcov::grpcoh::{cohomology_group, AbelianCoefficients, FiniteGroup};

fn main() {
    let coeffs = ["z2", "z3", "z4", "z2xz2"];
    for degree in [1, 2] {
        println!("H^{degree}(P, A)");
        print!("{:<8}", "P \\ A");
        for c in coeffs {
            print!("{c:>16}");
        }
        println!();
        for name in ["z2", "z3", "z4", "klein4", "s3", "q8", "a4"] {
            let g = FiniteGroup::builtin(name).unwrap();
            print!("{name:<8}");
            for c in coeffs {
                let a = AbelianCoefficients::parse(c).unwrap();
                let h = cohomology_group(&g, &a, degree).unwrap();
                print!("{:>16}", format!("{:?}", h.invariant_factors()));
            }
            println!();
        }
        println!();
    }
}

//! Perfectness and low-degree cohomology of the builtin Lie algebras.

use modcov::liealg::{is_perfect, LieAlgebra};
use modcov::liecoh::lie_cohomology;

fn main() {
    println!("{:<12} {:>4} {:>8}  H^0 H^1 H^2 H^3", "algebra", "dim", "perfect");
    for name in ["poincare2", "poincare3", "poincare4", "lorentz4", "sl2", "heisenberg", "abelian2"] {
        let g = LieAlgebra::builtin(name).unwrap();
        let dims: Vec<String> = (0..=3.min(g.dim()))
            .map(|k| format!("{:>3}", lie_cohomology(&g, k).unwrap().dim_h))
            .collect();
        println!("{:<12} {:>4} {:>8}  {}", name, g.dim(), is_perfect(&g), dims.join(" "));
    }
}

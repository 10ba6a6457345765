//! Central extensions of Lie algebras by closed 2-cochains, and a corrupted
//! structure-constant table caught by the Jacobi check.

use std::sync::Arc;

use modcov::exactmat::rat;
use modcov::liealg::{bracket, LieAlgebra, LieElement, StructureConstants};
use modcov::liecoh::{exact_primitive, lie_central_extension, splits_with, LieCocycle2};

fn main() {
    // ω(x1, x2) = 1 on the abelian plane is closed but not exact: the extension is Heisenberg
    let ab = LieAlgebra::builtin("abelian2").unwrap();
    let w = LieCocycle2::from_pairs(&ab, &[((0, 1), rat(1))]).unwrap();
    let ext = lie_central_extension(&w).unwrap();
    println!("abelian2 extended by ω(x1,x2)=1: {ext}, exact: {}", exact_primitive(&w).is_some());
    let ext = Arc::new(ext);
    let x = LieElement::basis(&ext, 0);
    let y = LieElement::basis(&ext, 1);
    println!("  [{x}, {y}] = {}", bracket(&x, &y).unwrap());

    // on sl2 every closed 2-cochain is exact, so the extension splits
    let sl2 = LieAlgebra::builtin("sl2").unwrap();
    let w = LieCocycle2::from_pairs(&sl2, &[((1, 2), rat(3))]).unwrap();
    println!("sl2 cochain closed: {}", w.is_closed());
    if let Some(phi) = exact_primitive(&w) {
        let shown: Vec<String> = phi.iter().map(|x| x.to_string()).collect();
        println!("primitive φ = [{}], splits: {}", shown.join(", "), splits_with(&w, &phi));
    }

    let corrupted = r#"{"dim": 3, "labels": ["h", "e", "f"], "brackets": [
        {"i": 0, "j": 1, "coeffs": {"e": "2"}},
        {"i": 0, "j": 2, "coeffs": {"f": "-2"}},
        {"i": 1, "j": 2, "coeffs": {"h": "1", "e": "1"}}]}"#;
    let sc = StructureConstants::from_json_str(corrupted).unwrap();
    match sc.validate() {
        Ok(()) => println!("corrupted table validated (unexpected)"),
        Err(e) => println!("corrupted table rejected: {e}"),
    }
}

//! The nontrivial ℤ₂-extension of ℤ₂ pulled back along ℤ₄ → ℤ₂ becomes a
//! coboundary, which yields a homomorphic lift ℤ₄ → ℤ₄ over the projection.

use modcov::ext::build_extension;
use modcov::grpcoh::{coboundary_preimage, construct_splitting, inflation, AbelianCoefficients, Cochain, FiniteGroup, GroupHom};

fn main() {
    let z4 = FiniteGroup::builtin("z4").unwrap();
    let z2 = FiniteGroup::builtin("z2").unwrap();
    let a = AbelianCoefficients::cyclic(2);
    let sigma = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    let omega = Cochain::from_fn(&z2, &a, 2, |t| vec![(t[0] * t[1]) as u64]);

    let pulled = inflation(&sigma, &omega).unwrap().cochain;
    println!("inflated cocycle on z4: {:?}", pulled.encoded());
    let phi = coboundary_preimage(&pulled).unwrap().expect("inflation is a coboundary");
    println!("φ with δφ = inflation: {:?}", phi.encoded());

    let ext = build_extension(&omega).unwrap();
    let u = construct_splitting(&sigma, &ext, &phi).unwrap();
    println!("U: z4 → extension, table {:?}", u.table());
    let over: Vec<usize> = (0..4).map(|g| ext.projection().apply(u.apply(g))).collect();
    println!("π∘U = {over:?}, σ = {:?}", sigma.table());
}

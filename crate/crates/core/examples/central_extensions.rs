//! Extensions of ℤ₂ by ℤ₂: multiplication tables from cocycles, sections,
//! and the equivalence classes of all 2-cocycles.

use modcov::ext::{are_equivalent, build_extension, cocycle_of_section, extract_section, is_split, SectionConvention};
use modcov::grpcoh::{enumerate_cocycles, AbelianCoefficients, Cochain, FiniteGroup};

fn main() {
    let z2 = FiniteGroup::builtin("z2").unwrap();
    let a = AbelianCoefficients::cyclic(2);

    let cocycles = enumerate_cocycles(&z2, &a, 2).unwrap();
    println!("{} cocycles on z2 with z2 coefficients", cocycles.len());
    let exts: Vec<_> = cocycles.iter().map(|w| build_extension(w).unwrap()).collect();
    for (w, e) in cocycles.iter().zip(&exts) {
        let orders: Vec<usize> = (0..4).map(|g| e.carrier().element_order(g)).collect();
        println!(
            "ω = {:?}: element orders {:?}, split: {}",
            w.encoded(),
            orders,
            is_split(e).unwrap().is_some()
        );
    }
    for i in 0..exts.len() {
        let same: Vec<usize> = (0..exts.len()).filter(|&j| are_equivalent(&exts[i], &exts[j]).unwrap().is_some()).collect();
        println!("class of cocycle {i}: {same:?}");
    }

    // a random section of the nontrivial extension gives a cohomologous cocycle
    let w = Cochain::from_fn(&z2, &a, 2, |t| vec![(t[0] * t[1]) as u64]);
    let e = build_extension(&w).unwrap();
    let s = extract_section(&e, SectionConvention::Random(5));
    println!("section {:?} has cocycle {:?}", s.table(), cocycle_of_section(&e, &s).encoded());

    let bad = Cochain::from_fn(&z2, &a, 2, |t| vec![(t == [0, 1]) as u64]);
    match build_extension(&bad) {
        Ok(_) => println!("non-cocycle accepted (unexpected)"),
        Err(e) => println!("non-cocycle rejected: {e}"),
    }
}

//! Wedge regions, their boost subgroups and generators, the complement
//! relation, and which wedge families generate the Poincaré algebra.

use modcov::exactmat::{rat, ratio};
use modcov::liealg::LieAlgebra;
use modcov::spacetime::{
    boost_generation, check_complement, coordinate_family, six_wedge_family, wedge_boost, wedge_boost_generator,
    Wedge,
};
use nalgebra::Vector4;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let p4 = LieAlgebra::builtin("poincare4").unwrap();

    let w = Wedge::coordinate(2).translated([rat(1), rat(0), ratio(1, 2), rat(0)]);
    let gen = wedge_boost_generator(&w, &p4).unwrap();
    println!("shifted x2-wedge boost generator: {}", gen.element);

    let x = Vector4::new(0.0, 0.0, 2.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inside = w.sample_interior(1, &mut rng)[0];
    for t in [0.05, 0.2] {
        let moved = wedge_boost(&w, t).apply(&inside);
        println!("t = {t}: sample point stays inside: {}", w.contains(&moved));
    }
    println!("(0, 0, 2, 0) in wedge: {}", w.contains(&x));

    let c = check_complement(&w);
    println!(
        "complement: symbolic {}, reversed boost {}, involution {}, sampled defect {:.1e}",
        c.symbolic, c.reversed_boost, c.involution, c.sampled_defect
    );
    println!("complement of complement is the wedge: {}", w.complement().complement().same_region(&w));

    for (name, family) in [("six wedges", six_wedge_family()), ("coordinate only", coordinate_family())] {
        let r = boost_generation(&family, &p4).unwrap();
        println!("{name}: generators {:?} span {} of {}", r.generators, r.closure_dim, r.algebra_dim);
    }
}

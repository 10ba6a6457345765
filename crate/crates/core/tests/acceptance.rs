//! Acceptance suite. Runs every criterion, prints one line each and exits
//! nonzero if any fails. Built with `harness = false` so the lines show up
//! under plain `cargo test`.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use modcov::exactmat::rat;
use modcov::ext::{
    are_equivalent, are_equivalent_exhaustive, build_extension, cocycle_of_section, construct_splitting,
    extract_section, h1_h2_correspondence_check, ExtError, SectionConvention,
};
use modcov::grpcoh::{
    coboundary_preimage, enumerate_cochains, enumerate_cocycles, hom_group, inflation, AbelianCoefficients, Cochain,
    CohomologyGroup, CohomologyOptions, FiniteGroup, GroupHom,
};
use modcov::liealg::{ideal_closure, is_perfect, LieAlgebra, LieElement, StructureConstants, Subspace};
use modcov::liecoh::lie_cohomology_dim;
use modcov::modular::{
    frobenius, kms_defect_with, left_factor, modular_flow_defect, tomita, two_qubit_state, commutant,
};
use modcov::spacetime::{boost_generation, coordinate_family, six_wedge_family};
use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let e = start.elapsed();
    check(e < limit, format!("took {e:?}, limit {limit:?}"))
}

fn groups() -> Vec<Arc<FiniteGroup>> {
    ["z2", "z3", "z4", "klein4", "s3", "q8"].iter().map(|n| FiniteGroup::builtin(n).unwrap()).collect()
}

fn coefficient_list() -> Vec<AbelianCoefficients> {
    ["z2", "z3", "z4", "z2xz2"].iter().map(|n| AbelianCoefficients::parse(n).unwrap()).collect()
}

fn c1_complex_squares_to_zero() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for g in groups() {
        for a in coefficient_list() {
            for n in 0..2 {
                for _ in 0..50 {
                    let f = Cochain::random(&g, &a, n, &mut rng);
                    let dd = f.coboundary().unwrap().coboundary().unwrap();
                    check(dd.is_zero(), format!("δδ ≠ 0 on {} with {} in degree {n}", g.name(), a))?;
                    checked += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} random cochains, {:?}", start.elapsed()))
}

/// Homomorphisms P → A by testing every map.
fn brute_force_hom_count(g: &FiniteGroup, a: &AbelianCoefficients) -> u64 {
    let n = g.order();
    let size = a.size();
    let total = size.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let img: Vec<Vec<u64>> = (0..n).map(|k| a.decode((code / size.pow(k as u32)) % size)).collect();
            (0..n).all(|p| (0..n).all(|q| img[g.mul(p, q)] == a.add(&img[p], &img[q])))
        })
        .count() as u64
}

fn c2_h1_counts_homomorphisms() -> Outcome {
    let start = Instant::now();
    for g in groups() {
        for a in coefficient_list() {
            let h1 = CohomologyGroup::compute(&g, &a, 1, CohomologyOptions::default()).unwrap();
            let oracle = brute_force_hom_count(&g, &a);
            let homs = hom_group(&g, &a).unwrap().len() as u64;
            check(
                h1.order() == oracle as u128 && homs == oracle,
                format!("{} with {}: |H¹| = {}, brute force {oracle}, hom_group {homs}", g.name(), a, h1.order()),
            )?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("24 pairs, {:?}", start.elapsed()))
}

/// Z²/B² by enumeration: each cocycle with its canonical coset representative.
struct EnumeratedH2 {
    cocycles: Vec<Cochain>,
    reps: Vec<Vec<u64>>,
    coboundaries: HashSet<Vec<u64>>,
}

impl EnumeratedH2 {
    fn new(g: &Arc<FiniteGroup>, a: &AbelianCoefficients) -> Self {
        let cocycles = enumerate_cocycles(g, a, 2).unwrap();
        let coboundaries: HashSet<Vec<u64>> =
            enumerate_cochains(g, a, 1).unwrap().iter().map(|f| f.coboundary().unwrap().encoded()).collect();
        let b: Vec<Cochain> = coboundaries.iter().map(|y| Cochain::from_encoded(g, a, 2, y)).collect();
        let reps = cocycles
            .iter()
            .map(|x| b.iter().map(|y| x.add(y).unwrap().encoded()).min().unwrap())
            .collect();
        Self {
            cocycles,
            reps,
            coboundaries,
        }
    }

    /// Number of classes x + B with d·x ∈ B.
    fn torsion(&self, d: u64) -> usize {
        self.cocycles
            .iter()
            .zip(&self.reps)
            .filter(|(x, _)| self.coboundaries.contains(&x.scale(d).encoded()))
            .map(|(_, r)| r)
            .collect::<HashSet<_>>()
            .len()
    }
}

fn c3_linear_algebra_matches_enumeration() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for g in groups() {
        for a in coefficient_list() {
            let bound = (a.size() as f64).powi((g.order() * g.order()) as i32);
            if bound > (1u64 << 20) as f64 {
                continue;
            }
            let h = CohomologyGroup::compute(&g, &a, 2, CohomologyOptions::default()).unwrap();
            let factors = h.invariant_factors();
            let oracle = EnumeratedH2::new(&g, &a);
            for d in 1..=12u64 {
                let from_factors: u64 = factors.iter().map(|&f| num_integer::gcd(f, d)).product();
                let counted = oracle.torsion(d) as u64;
                check(
                    from_factors == counted,
                    format!("{} with {}: {d}-torsion {counted} by enumeration, factors {factors:?}", g.name(), a),
                )?;
            }
            cases += 1;
        }
    }
    check(cases == 10, format!("expected 10 cases within the bound, found {cases}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{cases} pairs, {:?}", start.elapsed()))
}

fn c4_extension_semantics() -> Outcome {
    let start = Instant::now();
    let z2 = FiniteGroup::builtin("z2").unwrap();
    let a = AbelianCoefficients::cyclic(2);
    let nontrivial = Cochain::from_fn(&z2, &a, 2, |t| vec![(t[0] * t[1]) as u64]);
    let e = build_extension(&nontrivial).unwrap();
    let c = e.carrier();
    check(
        c.order() == 4 && (0..4).any(|x| c.element_order(x) == 4),
        "nontrivial class does not give a cyclic group of order 4",
    )?;
    let e = build_extension(&Cochain::zero(&z2, &a, 2)).unwrap();
    let c = e.carrier();
    check(
        c.order() == 4 && c.is_abelian() && (0..4).all(|x| c.element_order(x) <= 2),
        "trivial class does not give the Klein four-group",
    )?;
    let cocycles = enumerate_cocycles(&z2, &a, 2).unwrap();
    let exts: Vec<_> = cocycles.iter().map(|w| build_extension(w).unwrap()).collect();
    let mut class_of: Vec<usize> = (0..exts.len()).collect();
    for i in 0..exts.len() {
        for j in 0..i {
            let linear = are_equivalent(&exts[j], &exts[i]).unwrap().is_some();
            let exhaustive = are_equivalent_exhaustive(&exts[j], &exts[i]).unwrap().is_some();
            check(linear == exhaustive, "linear and exhaustive equivalence disagree")?;
            if linear {
                class_of[i] = class_of[j];
                break;
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for k in class_of {
        *sizes.entry(k).or_default() += 1;
    }
    let mut sizes: Vec<usize> = sizes.into_values().collect();
    sizes.sort();
    within(start, Duration::from_secs(1))?;
    check(
        sizes == vec![4, 4],
        format!(
            "partition of Z²(ℤ₂,ℤ₂) into equivalence classes has sizes {sizes:?} over {} cocycles, required [4, 4]",
            cocycles.len()
        ),
    )?;
    Ok(format!("classes {sizes:?}"))
}

fn c5_section_round_trip() -> Outcome {
    let a = AbelianCoefficients::cyclic(2);
    let mut count = 0;
    for name in ["z2", "klein4"] {
        let g = FiniteGroup::builtin(name).unwrap();
        for w in enumerate_cocycles(&g, &a, 2).unwrap() {
            let e = build_extension(&w).unwrap();
            let s = extract_section(&e, SectionConvention::Canonical);
            check(cocycle_of_section(&e, &s) == w, format!("round trip fails on {name} cocycle {:?}", w.encoded()))?;
            count += 1;
        }
    }
    Ok(format!("{count} cocycles"))
}

fn c6_splitting_construction() -> Outcome {
    let z4 = FiniteGroup::builtin("z4").unwrap();
    let z2 = FiniteGroup::builtin("z2").unwrap();
    let a = AbelianCoefficients::cyclic(2);
    let sigma = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    let omega = Cochain::from_fn(&z2, &a, 2, |t| vec![(t[0] * t[1]) as u64]);
    let inf = inflation(&sigma, &omega).unwrap().cochain;
    let phi = coboundary_preimage(&inf).unwrap().ok_or("inflated cocycle is not a coboundary")?;
    check(phi.coboundary().unwrap() == inf, "preimage does not reproduce the inflation")?;
    let ext = build_extension(&omega).unwrap();
    let u = construct_splitting(&sigma, &ext, &phi).map_err(|e| e.to_string())?;
    // GroupHom::new inside construct_splitting checks the homomorphism law; recheck it here
    for x in 0..4 {
        for y in 0..4 {
            check(
                u.apply(z4.mul(x, y)) == ext.carrier().mul(u.apply(x), u.apply(y)),
                "U is not a homomorphism",
            )?;
        }
        check(ext.projection().apply(u.apply(x)) == sigma.apply(x), "π∘U ≠ σ")?;
    }
    Ok(format!("U = {:?}", u.table()))
}

fn c7_lie_inputs() -> Outcome {
    let start = Instant::now();
    let p4 = LieAlgebra::builtin("poincare4").unwrap();
    let p2 = LieAlgebra::builtin("poincare2").unwrap();
    let ab2 = LieAlgebra::builtin("abelian2").unwrap();
    check(is_perfect(&p4), "poincare4 is not perfect")?;
    let h2 = lie_cohomology_dim(&p4, 2).unwrap();
    check(h2 == 0, format!("dim H²(poincare4) = {h2}"))?;
    check(!is_perfect(&p2), "poincare2 reported perfect")?;
    let a = lie_cohomology_dim(&ab2, 2).unwrap();
    let p = lie_cohomology_dim(&p2, 2).unwrap();
    check(a == 1 && p == 1, format!("controls: abelian2 {a}, poincare2 {p}"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{:?}", start.elapsed()))
}

fn c8_wedge_boosts_generate() -> Outcome {
    let start = Instant::now();
    let p4 = LieAlgebra::builtin("poincare4").unwrap();
    let six = boost_generation(&six_wedge_family(), &p4).unwrap();
    let coord = boost_generation(&coordinate_family(), &p4).unwrap();
    check(six.closure_dim == 10, format!("six-wedge closure has dim {}", six.closure_dim))?;
    check(coord.closure_dim == 6, format!("coordinate closure has dim {}", coord.closure_dim))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("dims 10 and 6, {:?}", start.elapsed()))
}

fn c9_ideals_contain_translations() -> Outcome {
    let start = Instant::now();
    let g = LieAlgebra::builtin("poincare4").unwrap();
    let translations = Subspace::span(
        &g,
        &(0..4).map(|m| LieElement::named(&g, &format!("P{m}")).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut elements: Vec<LieElement> = (0..g.dim()).map(|i| LieElement::basis(&g, i)).collect();
    while elements.len() < g.dim() + 100 {
        let coeffs: Vec<BigRational> = (0..g.dim()).map(|_| rat(rng.gen_range(-5..=5))).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        elements.push(LieElement::new(&g, coeffs).unwrap());
    }
    for x in &elements {
        let ideal = ideal_closure(&g, x).unwrap();
        check(ideal.contains_subspace(&translations), format!("ideal of {x} misses translations"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} elements, {:?}", elements.len(), start.elapsed()))
}

/// Δ spectrum from the reduced density matrix of Ω on the first factor.
fn vectorization_spectrum(omega: &nalgebra::DVector<num_complex::Complex64>) -> Vec<f64> {
    let psi = DMatrix::from_fn(2, 2, |i, j| omega[2 * i + j]);
    let rho = &psi * psi.adjoint();
    let lam: Vec<f64> = rho.symmetric_eigenvalues().iter().copied().collect();
    let mut out: Vec<f64> = lam.iter().flat_map(|a| lam.iter().map(move |b| a / b)).collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

fn c10_tomita_suite() -> Outcome {
    let start = Instant::now();
    let m = left_factor(2, 2);
    let mc = commutant(&m);
    let tol = 1e-10;
    for p in [0.5, 2.0 / 3.0, 0.9] {
        let omega = two_qubit_state(p);
        let t = tomita(&m, &omega).map_err(|e| e.to_string())?;
        let mut want = vec![p / (1.0 - p), (1.0 - p) / p, 1.0, 1.0];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let oracle = vectorization_spectrum(&omega);
        let got = t.spectrum();
        for ((g, w), o) in got.iter().zip(&want).zip(&oracle) {
            check((g - w).abs() <= tol && (o - w).abs() <= tol, format!("p = {p}: spectrum {got:?}, oracle {oracle:?}"))?;
        }
        let flow = modular_flow_defect(&t, &m, &[0.1, 0.5, 1.0, std::f64::consts::PI]);
        check(flow <= tol, format!("p = {p}: flow defect {flow:e}"))?;
        let kms = kms_defect_with(t.delta(), &m, &omega, 100, 11);
        check(kms <= tol, format!("p = {p}: KMS defect {kms:e}"))?;
        let jmj = t.commutant_defect(&m);
        check(jmj <= tol, format!("p = {p}: JMJ vs commutant {jmj:e}"))?;
        let tc = tomita(&mc, &omega).map_err(|e| e.to_string())?;
        let inv = frobenius(&(tc.delta() - t.delta_power(-1.0)));
        check(inv <= tol, format!("p = {p}: Δ' vs Δ⁻¹ {inv:e}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("p ∈ {{1/2, 2/3, 0.9}}, {:?}", start.elapsed()))
}

fn c11_correspondence() -> Outcome {
    let z4 = FiniteGroup::builtin("z4").unwrap();
    let z2 = FiniteGroup::builtin("z2").unwrap();
    let sigma = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    let r = h1_h2_correspondence_check(&sigma, &AbelianCoefficients::cyclic(2)).unwrap();
    check(r.h1_order == "2" && r.h2_order == "2", format!("orders {} and {}", r.h1_order, r.h2_order))?;
    check(r.mapping.len() == 2 && r.bijective, "class-to-homomorphism map not exhibited")?;
    let shown: Vec<String> = r.mapping.iter().map(|m| format!("{:?}↦{:?}", m.class, m.homomorphism)).collect();
    Ok(shown.join(", "))
}

fn c12_negative_controls() -> Outcome {
    let corrupted = r#"{"dim": 3, "labels": ["h", "e", "f"], "brackets": [
        {"i": 0, "j": 1, "coeffs": {"e": "2"}},
        {"i": 0, "j": 2, "coeffs": {"f": "-2"}},
        {"i": 1, "j": 2, "coeffs": {"h": "1", "e": "1"}}]}"#;
    let sc = StructureConstants::from_json_str(corrupted).unwrap();
    check(sc.validate().is_err() && sc.jacobi_defect().triple.is_some(), "corrupted constants pass Jacobi")?;
    let z2 = FiniteGroup::builtin("z2").unwrap();
    let a = AbelianCoefficients::cyclic(2);
    let bad = Cochain::from_fn(&z2, &a, 2, |t| vec![(t == [0, 1]) as u64]);
    match build_extension(&bad) {
        Err(ExtError::NotACocycle(..)) => {}
        other => return Err(format!("non-cocycle not rejected with a triple: {:?}", other.map(|_| ()))),
    }
    let m = left_factor(2, 2);
    let omega = two_qubit_state(2.0 / 3.0);
    let t = tomita(&m, &omega).map_err(|e| e.to_string())?;
    let wrong = modular_flow_defect(&t.with_swapped_eigenvalues(), &m, &[0.1, 0.5, 1.0, std::f64::consts::PI]);
    check(wrong > 0.1, format!("wrong Δ flow defect only {wrong}"))?;
    Ok(format!("wrong-Δ flow defect {wrong:.3}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cochain complex squares to zero", c1_complex_squares_to_zero),
        ("H¹ counts homomorphisms", c2_h1_counts_homomorphisms),
        ("H² by linear algebra matches enumeration", c3_linear_algebra_matches_enumeration),
        ("extension semantics over ℤ₂", c4_extension_semantics),
        ("section cocycle round trip", c5_section_round_trip),
        ("splitting over ℤ₄ → ℤ₂", c6_splitting_construction),
        ("Poincaré algebra perfect with H² = 0", c7_lie_inputs),
        ("wedge boosts generate poincare4", c8_wedge_boosts_generate),
        ("ideals contain the translations", c9_ideals_contain_translations),
        ("Tomita suite on M₂ ⊗ 1", c10_tomita_suite),
        ("H¹(S,A) against H²(P,A) for ℤ₄ → ℤ₂", c11_correspondence),
        ("negative controls", c12_negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

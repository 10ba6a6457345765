use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::cochain::tuple_of;
use super::{coefficient_group, AbelianCoefficients, Cochain, FiniteGroup, GroupError, GroupHom};
use crate::exactmat::{IntegerMatrix, PrimeFieldMatrix, ResidueMatrix, SmithDecomposition};

/// Exhaustive enumeration is refused above this many candidates.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CohomologyOptions {
    /// Work in the subcomplex of cochains vanishing when an argument is 1.
    pub normalized: bool,
}

/// Integer matrix of δₙ in tuple coordinates, restricted to `cols` (n-tuples)
/// and `rows` ((n+1)-tuples). Entries are dense, row-major.
fn coboundary_matrix(g: &FiniteGroup, n: usize, rows: &[usize], cols: &[usize]) -> Vec<i64> {
    let order = g.order();
    let full_cols = order.pow(n as u32);
    let mut col_pos = vec![usize::MAX; full_cols];
    for (j, &c) in cols.iter().enumerate() {
        col_pos[c] = j;
    }
    let width = cols.len();
    let mut data = vec![0i64; rows.len() * width];
    let mut merged = vec![0usize; n];
    let idx = |args: &[usize]| args.iter().fold(0, |acc, &p| acc * order + p);
    for (r, &row) in rows.iter().enumerate() {
        let p = tuple_of(order, n + 1, row);
        let mut put = |c: usize, s: i64| {
            let j = col_pos[c];
            if j != usize::MAX {
                data[r * width + j] += s;
            }
        };
        put(idx(&p[1..]), 1);
        for i in 0..n {
            merged[..i].copy_from_slice(&p[..i]);
            merged[i] = g.mul(p[i], p[i + 1]);
            merged[i + 1..].copy_from_slice(&p[i + 2..]);
            put(idx(&merged), if i % 2 == 0 { -1 } else { 1 });
        }
        put(idx(&p[..n]), if n % 2 == 0 { -1 } else { 1 });
    }
    data
}

fn tuples(g: &FiniteGroup, n: usize, normalized: bool) -> Vec<usize> {
    let id = g.identity();
    (0..g.order().pow(n as u32))
        .filter(|&t| !normalized || !tuple_of(g.order(), n, t).contains(&id))
        .collect()
}

/// Kernel of a matrix over ℤ/m as generators with orders, together with a
/// coordinate map.
#[derive(Clone, Debug)]
enum KernelPresentation {
    Field {
        modulus: u64,
        generators: Vec<Vec<u64>>,
        /// For each generator, a coordinate where only it is nonzero, and the
        /// inverse of its value there.
        pivots: Vec<(usize, u64)>,
    },
    Residue(crate::exactmat::ResidueKernel),
}

impl KernelPresentation {
    fn compute(modulus: u64, rows: usize, cols: usize, data: &[i64]) -> Result<Self, GroupError> {
        if crate::exactmat::is_prime(modulus) {
            let m = PrimeFieldMatrix::from_signed(modulus, rows, cols, data)?;
            let generators = m.kernel_basis();
            let pivots = (0..generators.len())
                .map(|i| {
                    let c = (0..cols)
                        .find(|&c| generators[i][c] != 0 && generators.iter().enumerate().all(|(j, g)| j == i || g[c] == 0))
                        .expect("kernel basis has a private coordinate per vector");
                    let inv = crate::exactmat::inv_mod(generators[i][c], modulus).expect("field element");
                    (c, inv)
                })
                .collect();
            Ok(Self::Field {
                modulus,
                generators,
                pivots,
            })
        } else {
            Ok(Self::Residue(ResidueMatrix::from_signed(modulus, rows, cols, data)?.kernel()))
        }
    }

    fn generators(&self) -> &[Vec<u64>] {
        match self {
            Self::Field { generators, .. } => generators,
            Self::Residue(k) => k.generators(),
        }
    }

    fn orders(&self) -> Vec<u64> {
        match self {
            Self::Field {
                modulus, generators, ..
            } => vec![*modulus; generators.len()],
            Self::Residue(k) => k.orders().to_vec(),
        }
    }

    fn coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        match self {
            Self::Field {
                modulus,
                generators,
                pivots,
            } => {
                let m = *modulus;
                let coords: Vec<u64> = pivots
                    .iter()
                    .map(|&(c, inv)| crate::exactmat::mul_mod(x[c], inv, m))
                    .collect();
                let ok = (0..x.len()).all(|t| {
                    let v = generators
                        .iter()
                        .zip(&coords)
                        .fold(0, |acc, (g, &k)| (acc + crate::exactmat::mul_mod(g[t], k, m)) % m);
                    v == x[t]
                });
                ok.then_some(coords)
            }
            Self::Residue(k) => k.coordinates(x),
        }
    }
}

/// Hⁿ for one cyclic factor ℤ/m.
#[derive(Clone, Debug)]
struct Summand {
    modulus: u64,
    kernel: KernelPresentation,
    smith: SmithDecomposition,
    /// Positions in the Smith diagonal with entry > 1, and those entries.
    class_slots: Vec<(usize, u64)>,
}

/// Zⁿ as a direct sum of cyclic groups with explicit generators.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub generators: Vec<Cochain>,
    pub orders: Vec<u64>,
}

impl CocycleSpace {
    /// |Zⁿ|, if it fits.
    pub fn size(&self) -> Option<u128> {
        self.orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }
}

/// Hⁿ(P, A) = Zⁿ/Bⁿ with class coordinates and representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    group: Arc<FiniteGroup>,
    coeffs: AbelianCoefficients,
    degree: usize,
    options: CohomologyOptions,
    tuples: Vec<usize>,
    summands: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub group: String,
    pub coefficients: String,
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    pub order: String,
    pub cocycle_orders: Vec<u64>,
    pub coboundary_order: String,
}

impl CohomologyGroup {
    pub fn compute(
        group: &Arc<FiniteGroup>,
        coeffs: &AbelianCoefficients,
        degree: usize,
        options: CohomologyOptions,
    ) -> Result<Self, GroupError> {
        if !(1..=2).contains(&degree) {
            return Err(GroupError::UnsupportedDegree(degree));
        }
        let g = group.as_ref();
        let lower = tuples(g, degree - 1, options.normalized);
        let mid = tuples(g, degree, options.normalized);
        let upper = tuples(g, degree + 1, options.normalized);
        let d_hi = coboundary_matrix(g, degree, &upper, &mid);
        let d_lo = coboundary_matrix(g, degree - 1, &mid, &lower);
        let summands = coeffs
            .orders()
            .par_iter()
            .map(|&m| Summand::compute(m, &d_hi, upper.len(), mid.len(), &d_lo, lower.len()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            group: Arc::clone(group),
            coeffs: coeffs.clone(),
            degree,
            options,
            tuples: mid,
            summands,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coefficients(&self) -> &AbelianCoefficients {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Orders of the cyclic factors the class coordinates live in, summand
    /// by summand (not merged into divisibility form).
    pub fn class_orders(&self) -> Vec<u64> {
        self.summands.iter().flat_map(|s| s.class_slots.iter().map(|&(_, d)| d)).collect()
    }

    /// Invariant factors d₁ | d₂ | … with every dᵢ > 1; empty for the trivial group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let diag: Vec<BigInt> = self.class_orders().into_iter().map(BigInt::from).collect();
        IntegerMatrix::diagonal(&diag)
            .smith_normal_form()
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .map(|d| d.to_u64().expect("small factor"))
            .collect()
    }

    pub fn order(&self) -> u128 {
        self.class_orders().iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.class_orders().is_empty()
    }

    pub fn cocycle_space(&self) -> CocycleSpace {
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (i, s) in self.summands.iter().enumerate() {
            for (gen, o) in s.kernel.generators().iter().zip(s.kernel.orders()) {
                generators.push(self.embed(i, gen));
                orders.push(o);
            }
        }
        CocycleSpace { generators, orders }
    }

    fn embed(&self, summand: usize, restricted: &[u64]) -> Cochain {
        let mut c = Cochain::zero(&self.group, &self.coeffs, self.degree);
        let mut full = vec![0u64; c.entries()];
        for (&t, &v) in self.tuples.iter().zip(restricted) {
            full[t] = v;
        }
        c.set_component(summand, &full);
        c
    }

    fn check_cochain(&self, c: &Cochain) -> Result<(), GroupError> {
        if c.group() != &self.group || c.coefficients() != &self.coeffs || c.degree() != self.degree {
            return Err(GroupError::Mismatch("cochain does not belong to this cohomology group".into()));
        }
        Ok(())
    }

    /// Class coordinates in the factors of [`Self::class_orders`].
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<u64>, GroupError> {
        self.check_cochain(c)?;
        if self.options.normalized && !c.is_normalized() {
            return Err(GroupError::Mismatch("normalized presentation needs a normalized cocycle".into()));
        }
        let mut out = Vec::new();
        for (i, s) in self.summands.iter().enumerate() {
            let comp = c.component(i);
            let restricted: Vec<u64> = self.tuples.iter().map(|&t| comp[t]).collect();
            let coords = s.kernel.coordinates(&restricted).ok_or(GroupError::NotACocycle)?;
            out.extend(s.classify(&coords));
        }
        Ok(out)
    }

    /// A cocycle in the given class.
    pub fn representative(&self, class: &[u64]) -> Result<Cochain, GroupError> {
        let orders = self.class_orders();
        if class.len() != orders.len() {
            return Err(GroupError::Mismatch(format!(
                "class vector has {} entries, expected {}",
                class.len(),
                orders.len()
            )));
        }
        let mut out = Cochain::zero(&self.group, &self.coeffs, self.degree);
        let mut offset = 0;
        for (i, s) in self.summands.iter().enumerate() {
            let k = s.class_slots.len();
            let part = s.represent(&class[offset..offset + k]);
            offset += k;
            out = out.add(&self.embed(i, &part))?;
        }
        Ok(out)
    }

    /// All classes in lexicographic order of their coordinates.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        let orders = self.class_orders();
        let mut out = vec![vec![]];
        for &o in &orders {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..o).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn summary(&self) -> CohomologySummary {
        let space = self.cocycle_space();
        let z = space.size().unwrap_or(0);
        let h = self.order();
        CohomologySummary {
            group: self.group.name().to_string(),
            coefficients: self.coeffs.to_string(),
            degree: self.degree,
            invariant_factors: self.invariant_factors(),
            order: h.to_string(),
            cocycle_orders: space.orders,
            coboundary_order: (z / h).to_string(),
        }
    }
}

impl Summand {
    fn compute(m: u64, d_hi: &[i64], hi_rows: usize, cols: usize, d_lo: &[i64], lo_cols: usize) -> Result<Self, GroupError> {
        let kernel = KernelPresentation::compute(m, hi_rows, cols, d_hi)?;
        let orders = kernel.orders();
        let j = orders.len();
        // relation matrix [diag(orders) | coordinates of each coboundary column]
        let mut rel = IntegerMatrix::zeros(j, j + lo_cols);
        for (i, &o) in orders.iter().enumerate() {
            rel.set(i, i, BigInt::from(o));
        }
        for c in 0..lo_cols {
            let col: Vec<u64> = (0..cols)
                .map(|r| d_lo[r * lo_cols + c].rem_euclid(m as i64) as u64)
                .collect();
            let coords = kernel
                .coordinates(&col)
                .ok_or_else(|| GroupError::Internal("coboundary is not a cocycle".into()))?;
            for (i, v) in coords.into_iter().enumerate() {
                rel.set(i, j + c, BigInt::from(v));
            }
        }
        let smith = rel.smith_decomposition();
        let class_slots = smith
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > BigInt::from(1))
            .map(|(i, d)| (i, d.to_u64().expect("factor divides a modulus")))
            .collect();
        Ok(Self {
            modulus: m,
            kernel,
            smith,
            class_slots,
        })
    }

    fn classify(&self, coords: &[u64]) -> Vec<u64> {
        let c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        let h = self.smith.left.mul_vec(&c);
        self.class_slots
            .iter()
            .map(|&(i, d)| h[i].mod_floor(&BigInt::from(d)).to_u64().expect("reduced"))
            .collect()
    }

    fn represent(&self, class: &[u64]) -> Vec<u64> {
        let mut h = vec![BigInt::zero(); self.smith.left.rows()];
        for (&(i, d), &x) in self.class_slots.iter().zip(class) {
            h[i] = BigInt::from(x % d);
        }
        let c = self.smith.left_inv.mul_vec(&h);
        let m = BigInt::from(self.modulus);
        let gens = self.kernel.generators();
        let len = gens.first().map_or(0, |g| g.len());
        (0..len)
            .map(|t| {
                let v = gens.iter().zip(&c).fold(BigInt::zero(), |acc, (g, k)| acc + k * g[t]);
                v.mod_floor(&m).to_u64().expect("reduced")
            })
            .collect()
    }
}

/// Some f with δf = `target`, solved per cyclic factor over ℤ/m, or `None`
/// when `target` is not a coboundary.
pub fn coboundary_preimage(target: &Cochain) -> Result<Option<Cochain>, GroupError> {
    let n = target.degree();
    if !(1..=3).contains(&n) {
        return Err(GroupError::UnsupportedDegree(n));
    }
    let g = target.group();
    let rows = tuples(g, n, false);
    let cols = tuples(g, n - 1, false);
    let d = coboundary_matrix(g, n - 1, &rows, &cols);
    let mut out = Cochain::zero(g, target.coefficients(), n - 1);
    for (i, &m) in target.coefficients().orders().iter().enumerate() {
        let a = ResidueMatrix::from_signed(m, rows.len(), cols.len(), &d)?;
        match a.solve(&target.component(i))? {
            Some(x) => out.set_component(i, &x),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

pub fn cohomology_group(
    group: &Arc<FiniteGroup>,
    coeffs: &AbelianCoefficients,
    degree: usize,
) -> Result<CohomologyGroup, GroupError> {
    CohomologyGroup::compute(group, coeffs, degree, CohomologyOptions::default())
}

pub fn cocycle_space(
    group: &Arc<FiniteGroup>,
    coeffs: &AbelianCoefficients,
    degree: usize,
) -> Result<CocycleSpace, GroupError> {
    Ok(cohomology_group(group, coeffs, degree)?.cocycle_space())
}

fn enumeration_size(group: &FiniteGroup, coeffs: &AbelianCoefficients, degree: usize) -> Result<u64, GroupError> {
    let entries = group.order().pow(degree as u32) as u32;
    let total = (coeffs.size() as u128).checked_pow(entries);
    match total {
        Some(t) if t <= ENUMERATION_LIMIT => Ok(t as u64),
        _ => Err(GroupError::SizeLimit {
            what: format!("{}^{} cochains", coeffs.size(), entries),
            limit: ENUMERATION_LIMIT,
        }),
    }
}

/// The k-th cochain in lexicographic order of encoded value tables.
pub fn nth_cochain(group: &Arc<FiniteGroup>, coeffs: &AbelianCoefficients, degree: usize, mut k: u64) -> Cochain {
    let entries = group.order().pow(degree as u32);
    let size = coeffs.size();
    let mut enc = vec![0u64; entries];
    for slot in enc.iter_mut().rev() {
        *slot = k % size;
        k /= size;
    }
    Cochain::from_encoded(group, coeffs, degree, &enc)
}

/// Every n-cochain, in lexicographic order. Refused above [`ENUMERATION_LIMIT`].
pub fn enumerate_cochains(
    group: &Arc<FiniteGroup>,
    coeffs: &AbelianCoefficients,
    degree: usize,
) -> Result<Vec<Cochain>, GroupError> {
    let total = enumeration_size(group, coeffs, degree)?;
    Ok((0..total)
        .into_par_iter()
        .map(|k| nth_cochain(group, coeffs, degree, k))
        .collect())
}

/// Every n-cocycle found by testing δₙf = 0 on each cochain.
pub fn enumerate_cocycles(
    group: &Arc<FiniteGroup>,
    coeffs: &AbelianCoefficients,
    degree: usize,
) -> Result<Vec<Cochain>, GroupError> {
    if degree > 2 {
        return Err(GroupError::UnsupportedDegree(degree));
    }
    let total = enumeration_size(group, coeffs, degree)?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|k| {
            let c = nth_cochain(group, coeffs, degree, k);
            c.coboundary().expect("degree checked").is_zero().then_some(c)
        })
        .collect())
}

/// All homomorphisms P → A, by choosing images of a generating set and
/// keeping the assignments that extend to a homomorphism.
pub fn hom_group(group: &Arc<FiniteGroup>, coeffs: &AbelianCoefficients) -> Result<Vec<GroupHom>, GroupError> {
    let gens = group.generators();
    let a = coeffs.size();
    let total = (a as u128).checked_pow(gens.len() as u32).filter(|&t| t <= ENUMERATION_LIMIT).ok_or_else(|| {
        GroupError::SizeLimit {
            what: format!("{}^{} generator images", a, gens.len()),
            limit: ENUMERATION_LIMIT,
        }
    })? as u64;
    let target = Arc::new(coefficient_group(coeffs));
    let homs: Vec<Option<GroupHom>> = (0..total)
        .into_par_iter()
        .map(|mut k| {
            let mut images = vec![0usize; gens.len()];
            for slot in images.iter_mut().rev() {
                *slot = (k % a) as usize;
                k /= a;
            }
            extend_to_hom(group, &target, &gens, &images)
        })
        .collect();
    Ok(homs.into_iter().flatten().collect())
}

/// Extends generator images by breadth-first search over words, then checks
/// the homomorphism property on the full table.
fn extend_to_hom(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>, gens: &[usize], images: &[usize]) -> Option<GroupHom> {
    let mut map = vec![usize::MAX; src.order()];
    map[src.identity()] = dst.identity();
    let mut queue = std::collections::VecDeque::from([src.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let v = dst.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    GroupHom::new(src, dst, map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(g: &str, a: &str, n: usize) -> Vec<u64> {
        let g = FiniteGroup::builtin(g).unwrap();
        let a = AbelianCoefficients::parse(a).unwrap();
        cohomology_group(&g, &a, n).unwrap().invariant_factors()
    }

    #[test]
    fn small_groups() {
        assert_eq!(h("z2", "z2", 2), vec![2]);
        assert_eq!(h("z2", "z2", 1), vec![2]);
        assert_eq!(h("z3", "z2", 2), Vec::<u64>::new());
        assert_eq!(h("z4", "z4", 2), vec![4]);
        assert_eq!(h("z4", "z6", 2), vec![2]);
        // Schur multiplier of the Klein group is Z2; H²(V, Z2) = Z2³
        assert_eq!(h("klein4", "z2", 2), vec![2, 2, 2]);
        assert_eq!(h("klein4", "z4", 2), vec![2, 2, 2]);
        assert_eq!(h("s3", "z3", 1), Vec::<u64>::new());
        assert_eq!(h("s3", "z2", 2), vec![2]);
        assert_eq!(h("q8", "z2", 2), vec![2, 2]);
    }

    #[test]
    fn cocycle_counts() {
        let z2 = FiniteGroup::builtin("z2").unwrap();
        let a = AbelianCoefficients::cyclic(2);
        assert_eq!(cocycle_space(&z2, &a, 1).unwrap().size(), Some(2));
        // δ₂ω = 0 forces ω(0,0) = ω(0,1) = ω(1,0) with ω(1,1) free
        assert_eq!(cocycle_space(&z2, &a, 2).unwrap().size(), Some(4));
        assert_eq!(enumerate_cocycles(&z2, &a, 2).unwrap().len(), 4);
        let z3 = FiniteGroup::builtin("z3").unwrap();
        let z1 = enumerate_cocycles(&z3, &a, 1).unwrap();
        assert_eq!(z1.len(), 1);
        assert!(z1[0].is_zero());
    }

    #[test]
    fn homs() {
        let count = |g: &str, a: &str| {
            hom_group(&FiniteGroup::builtin(g).unwrap(), &AbelianCoefficients::parse(a).unwrap())
                .unwrap()
                .len()
        };
        assert_eq!(count("z2", "z2"), 2);
        assert_eq!(count("s3", "z3"), 1);
        assert_eq!(count("klein4", "z2"), 4);
        assert_eq!(count("q8", "klein4"), 16);
    }

    #[test]
    fn class_representatives_round_trip() {
        for (g, a) in [("klein4", "z2"), ("z4", "z2xz4"), ("s3", "z6"), ("q8", "z4")] {
            let g = FiniteGroup::builtin(g).unwrap();
            let a = AbelianCoefficients::parse(a).unwrap();
            let hg = cohomology_group(&g, &a, 2).unwrap();
            for class in hg.classes() {
                let rep = hg.representative(&class).unwrap();
                assert!(rep.coboundary().unwrap().is_zero());
                assert_eq!(hg.class_of(&rep).unwrap(), class);
            }
        }
    }

    #[test]
    fn normalized_agrees() {
        for g in ["z2", "z4", "klein4", "s3", "q8"] {
            for a in ["z2", "z3", "z4", "klein4"] {
                let gg = FiniteGroup::builtin(g).unwrap();
                let aa = AbelianCoefficients::parse(a).unwrap();
                for n in 1..=2 {
                    let full = cohomology_group(&gg, &aa, n).unwrap();
                    let norm = CohomologyGroup::compute(&gg, &aa, n, CohomologyOptions { normalized: true }).unwrap();
                    assert_eq!(full.invariant_factors(), norm.invariant_factors(), "{g} {a} {n}");
                }
            }
        }
    }

    #[test]
    fn preimages() {
        let z4 = FiniteGroup::builtin("z4").unwrap();
        let a = AbelianCoefficients::cyclic(6);
        let phi = Cochain::from_fn(&z4, &a, 1, |p| vec![[2, 5, 1, 3][p[0]]]);
        let d = phi.coboundary().unwrap();
        let back = coboundary_preimage(&d).unwrap().unwrap();
        assert_eq!(back.coboundary().unwrap(), d);
        let hg = cohomology_group(&z4, &a, 2).unwrap();
        let w = hg.representative(&[1]).unwrap();
        assert!(coboundary_preimage(&w).unwrap().is_none());
    }

    #[test]
    fn size_limit_is_reported() {
        let s3 = FiniteGroup::builtin("s3").unwrap();
        let a = AbelianCoefficients::cyclic(2);
        assert!(matches!(enumerate_cocycles(&s3, &a, 2), Err(GroupError::SizeLimit { .. })));
    }
}

//! Central extensions 1 → A → G → P → 1 as explicit multiplication tables.
//!
//! G is the set A×P with (a,p)·(b,q) = (a + b − ω(p,q), pq). The element
//! (a,p) has index a·|P| + p, with a the encoded coefficient. For a cocycle,
//! ω(1,q) = ω(p,1) = ω(1,1) =: c, so the identity is (c,1) and
//! i(a) = (a + c, 1).
//!
//! Sections give back cocycles by ω(p,q) = i⁻¹(s(p)⁻¹ s(pq) s(q)⁻¹); on the
//! canonical section s(p) = (0,p) this returns the ω the table was built
//! from.

mod correspondence;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grpcoh::{
    coboundary_preimage, enumerate_cochains, AbelianCoefficients, Cochain, CochainJson, FiniteGroup, GroupError,
    GroupHom, GroupJson,
};

pub use correspondence::{construct_splitting, h1_h2_correspondence_check, ClassImage, CorrespondenceReport};

/// Exhaustive equivalence search is refused above this many 1-cochains.
pub const EXHAUSTIVE_EQUIVALENCE_LIMIT: u128 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("not a cocycle: associativity fails on ({0}, {1}, {2})")]
    NotACocycle(usize, usize, usize),
    #[error("expected a degree-2 cochain, got degree {0}")]
    Degree(usize),
    #[error("extensions have different base or kernel")]
    Mismatch,
    #[error("not a section: π(s({0})) ≠ {0}")]
    NotASection(usize),
    #[error("splitting datum fails δφ = inflated cocycle at ({0}, {1})")]
    SplittingDatum(usize, usize),
    #[error("extension table check failed: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A central extension of P by A with its carrier group and structure maps.
#[derive(Clone, Debug)]
pub struct CentralExtensionTable {
    base: Arc<FiniteGroup>,
    kernel: AbelianCoefficients,
    cocycle: Cochain,
    carrier: Arc<FiniteGroup>,
    projection: GroupHom,
    embedding: Vec<usize>,
}

/// A map s: P → G with π∘s = id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    values: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionConvention {
    Canonical,
    Random(u64),
}

/// Witness that two extensions are equivalent: ω₂ − ω₁ = δφ, and the
/// isomorphism (a,p) ↦ (a + φ(p), p) from the first carrier to the second.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub phi: Cochain,
    pub map: GroupHom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub base: GroupJson,
    pub kernel: Vec<u64>,
    pub cocycle: CochainJson,
    pub carrier: GroupJson,
    pub projection: Vec<usize>,
    pub embedding: Vec<usize>,
}

/// First triple with δ₂ω ≠ 0, which is exactly where the A×P product fails to
/// associate.
fn first_defect(omega: &Cochain) -> Result<Option<(usize, usize, usize)>, GroupError> {
    let d = omega.coboundary()?;
    let n = omega.group().order();
    Ok((0..d.entries())
        .find(|&i| d.value_at(i).iter().any(|&v| v != 0))
        .map(|i| (i / (n * n), (i / n) % n, i % n)))
}

pub fn build_extension(omega: &Cochain) -> Result<CentralExtensionTable, ExtError> {
    if omega.degree() != 2 {
        return Err(ExtError::Degree(omega.degree()));
    }
    if let Some((p, q, r)) = first_defect(omega)? {
        return Err(ExtError::NotACocycle(p, q, r));
    }
    let base = Arc::clone(omega.group());
    let a = omega.coefficients().clone();
    let np = base.order();
    let na = a.size() as usize;
    let table: Vec<Vec<usize>> = (0..na * np)
        .map(|x| {
            let (xa, xp) = (a.decode((x / np) as u64), x % np);
            (0..na * np)
                .map(|y| {
                    let (ya, yp) = (a.decode((y / np) as u64), y % np);
                    let v = a.sub(&a.add(&xa, &ya), omega.value(&[xp, yp]));
                    a.encode(&v) as usize * np + base.mul(xp, yp)
                })
                .collect()
        })
        .collect();
    let c = omega.value(&[base.identity(), base.identity()]).to_vec();
    let identity = a.encode(&c) as usize * np + base.identity();
    let carrier = Arc::new(FiniteGroup::from_table(format!("ext({})", base.name()), table, identity)?);
    let projection = GroupHom::new(&carrier, &base, (0..na * np).map(|x| x % np).collect())?;
    let embedding = (0..na as u64)
        .map(|e| a.encode(&a.add(&a.decode(e), &c)) as usize * np + base.identity())
        .collect();
    let ext = CentralExtensionTable {
        base,
        kernel: a,
        cocycle: omega.clone(),
        carrier,
        projection,
        embedding,
    };
    ext.verify()?;
    Ok(ext)
}

impl CentralExtensionTable {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn kernel(&self) -> &AbelianCoefficients {
        &self.kernel
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn carrier(&self) -> &Arc<FiniteGroup> {
        &self.carrier
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// i(a) for an encoded coefficient a.
    pub fn embed(&self, a: &[u64]) -> usize {
        self.embedding[self.kernel.encode(a) as usize]
    }

    /// i⁻¹(g), if g lies in the image of A.
    pub fn unembed(&self, g: usize) -> Option<Vec<u64>> {
        self.embedding
            .iter()
            .position(|&x| x == g)
            .map(|e| self.kernel.decode(e as u64))
    }

    pub fn element(&self, a: &[u64], p: usize) -> usize {
        self.kernel.encode(a) as usize * self.base.order() + p
    }

    pub fn split_element(&self, g: usize) -> (Vec<u64>, usize) {
        let np = self.base.order();
        (self.kernel.decode((g / np) as u64), g % np)
    }

    /// Exactness and centrality by exhaustive scan.
    pub fn verify(&self) -> Result<(), ExtError> {
        let g = &self.carrier;
        if g.order() as u64 != self.kernel.size() * self.base.order() as u64 {
            return Err(ExtError::Invalid("|G| ≠ |A|·|P|".into()));
        }
        if !self.projection.is_surjective() {
            return Err(ExtError::Invalid("projection is not surjective".into()));
        }
        let mut image = self.embedding.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != self.embedding.len() {
            return Err(ExtError::Invalid("embedding is not injective".into()));
        }
        if image != self.projection.kernel() {
            return Err(ExtError::Invalid("kernel of the projection differs from the image of A".into()));
        }
        if let Some(&x) = image.iter().find(|&&x| !g.is_central(x)) {
            return Err(ExtError::Invalid(format!("embedded element {x} is not central")));
        }
        let a = &self.kernel;
        for x in 0..self.embedding.len() as u64 {
            for y in 0..self.embedding.len() as u64 {
                let sum = a.encode(&a.add(&a.decode(x), &a.decode(y))) as usize;
                if g.mul(self.embedding[x as usize], self.embedding[y as usize]) != self.embedding[sum] {
                    return Err(ExtError::Invalid("embedding is not a homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ExtensionJson {
        ExtensionJson {
            base: self.base.to_json(),
            kernel: self.kernel.orders().to_vec(),
            cocycle: self.cocycle.to_json(),
            carrier: self.carrier.to_json(),
            projection: self.projection.table().to_vec(),
            embedding: self.embedding.clone(),
        }
    }

    /// Rebuilds from the cocycle and checks every stored table matches.
    pub fn from_json(j: &ExtensionJson) -> Result<Self, ExtError> {
        let omega = Cochain::from_json(&j.cocycle)?;
        if omega.group().to_json() != j.base || omega.coefficients().orders() != j.kernel.as_slice() {
            return Err(ExtError::Invalid("cocycle does not match the stated base and kernel".into()));
        }
        let ext = build_extension(&omega)?;
        if ext.carrier.to_json() != j.carrier
            || ext.projection.table() != j.projection.as_slice()
            || ext.embedding != j.embedding
        {
            return Err(ExtError::Invalid("stored tables differ from the rebuilt extension".into()));
        }
        Ok(ext)
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.base == other.base && self.kernel == other.kernel
    }
}

impl Section {
    pub fn new(ext: &CentralExtensionTable, values: Vec<usize>) -> Result<Self, ExtError> {
        if values.len() != ext.base.order() {
            return Err(ExtError::Invalid("section table has the wrong length".into()));
        }
        if let Some(p) = (0..values.len()).find(|&p| values[p] >= ext.carrier.order() || ext.projection.apply(values[p]) != p) {
            return Err(ExtError::NotASection(p));
        }
        Ok(Self { values })
    }

    pub fn apply(&self, p: usize) -> usize {
        self.values[p]
    }

    pub fn table(&self) -> &[usize] {
        &self.values
    }
}

pub fn extract_section(ext: &CentralExtensionTable, convention: SectionConvention) -> Section {
    let a = &ext.kernel;
    let values = match convention {
        SectionConvention::Canonical => (0..ext.base.order()).map(|p| ext.element(&a.zero(), p)).collect(),
        SectionConvention::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..ext.base.order())
                .map(|p| ext.element(&a.decode(rng.gen_range(0..a.size())), p))
                .collect()
        }
    };
    Section::new(ext, values).expect("constructed over every base element")
}

/// ω(p,q) = i⁻¹(s(p)⁻¹ s(pq) s(q)⁻¹).
pub fn cocycle_of_section(ext: &CentralExtensionTable, s: &Section) -> Cochain {
    let g = &ext.carrier;
    let p_grp = &ext.base;
    Cochain::from_fn(p_grp, &ext.kernel, 2, |args| {
        let (p, q) = (args[0], args[1]);
        let x = g.mul(g.mul(g.inv(s.apply(p)), s.apply(p_grp.mul(p, q))), g.inv(s.apply(q)));
        ext.unembed(x).expect("lies over the identity")
    })
}

fn equivalence_from_phi(e1: &CentralExtensionTable, e2: &CentralExtensionTable, phi: &Cochain) -> Option<Equivalence> {
    let a = &e1.kernel;
    let map: Vec<usize> = (0..e1.carrier.order())
        .map(|x| {
            let (xa, p) = e1.split_element(x);
            e2.element(&a.add(&xa, phi.value(&[p])), p)
        })
        .collect();
    let map = GroupHom::new(&e1.carrier, &e2.carrier, map).ok()?;
    let commutes = (0..e1.carrier.order()).all(|x| e2.projection.apply(map.apply(x)) == e1.projection.apply(x));
    let fixes_a = (0..e1.embedding.len()).all(|k| map.apply(e1.embedding[k]) == e2.embedding[k]);
    (commutes && fixes_a && map.is_surjective()).then(|| Equivalence { phi: phi.clone(), map })
}

/// Solves δφ = ω₂ − ω₁ over each cyclic factor and verifies the induced map.
pub fn are_equivalent(e1: &CentralExtensionTable, e2: &CentralExtensionTable) -> Result<Option<Equivalence>, ExtError> {
    if !e1.same_shape(e2) {
        return Err(ExtError::Mismatch);
    }
    let diff = e2.cocycle.sub(&e1.cocycle)?;
    let Some(phi) = coboundary_preimage(&diff)? else {
        return Ok(None);
    };
    equivalence_from_phi(e1, e2, &phi)
        .map(Some)
        .ok_or_else(|| ExtError::Invalid("solved cochain does not induce an equivalence".into()))
}

/// The same question answered by trying every 1-cochain φ.
pub fn are_equivalent_exhaustive(
    e1: &CentralExtensionTable,
    e2: &CentralExtensionTable,
) -> Result<Option<Equivalence>, ExtError> {
    if !e1.same_shape(e2) {
        return Err(ExtError::Mismatch);
    }
    let total = (e1.kernel.size() as u128).checked_pow(e1.base.order() as u32);
    if total.map_or(true, |t| t > EXHAUSTIVE_EQUIVALENCE_LIMIT) {
        return Err(GroupError::SizeLimit {
            what: format!("{}^{} candidate cochains", e1.kernel.size(), e1.base.order()),
            limit: EXHAUSTIVE_EQUIVALENCE_LIMIT,
        }
        .into());
    }
    let diff = e2.cocycle.sub(&e1.cocycle)?;
    Ok(enumerate_cochains(&e1.base, &e1.kernel, 1)?
        .into_iter()
        .filter(|phi| phi.coboundary().map(|d| d == diff).unwrap_or(false))
        .find_map(|phi| equivalence_from_phi(e1, e2, &phi)))
}

/// A homomorphic section s(p) = (ψ(p), p), which exists exactly when ω = δψ.
pub fn is_split(ext: &CentralExtensionTable) -> Result<Option<GroupHom>, ExtError> {
    let Some(psi) = coboundary_preimage(&ext.cocycle)? else {
        return Ok(None);
    };
    let table = (0..ext.base.order()).map(|p| ext.element(psi.value(&[p]), p)).collect();
    let s = GroupHom::new(&ext.base, &ext.carrier, table)
        .map_err(|_| ExtError::Invalid("solved section is not a homomorphism".into()))?;
    Ok(Some(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcoh::{enumerate_cocycles, FiniteGroup};

    fn z2_setup() -> (Arc<FiniteGroup>, AbelianCoefficients) {
        (FiniteGroup::builtin("z2").unwrap(), AbelianCoefficients::cyclic(2))
    }

    fn nontrivial(g: &Arc<FiniteGroup>, a: &AbelianCoefficients) -> Cochain {
        let mut w = Cochain::zero(g, a, 2);
        w.set(&[1, 1], &[1]);
        w
    }

    #[test]
    fn z4_and_klein() {
        let (g, a) = z2_setup();
        let e = build_extension(&nontrivial(&g, &a)).unwrap();
        let x = e.element(&[0], 1);
        assert_eq!(e.carrier().element_order(x), 4);
        assert!(is_split(&e).unwrap().is_none());

        let phi = Cochain::from_fn(&g, &a, 1, |p| vec![p[0] as u64]);
        let twisted = build_extension(&phi.coboundary().unwrap()).unwrap();
        let c = twisted.carrier();
        assert!((0..4).filter(|&x| x != c.identity()).all(|x| c.element_order(x) == 2));
        let s = is_split(&twisted).unwrap().unwrap();
        for p in 0..2 {
            assert_eq!(twisted.projection().apply(s.apply(p)), p);
        }

        let prod = build_extension(&Cochain::zero(&g, &a, 2)).unwrap();
        let s = is_split(&prod).unwrap().unwrap();
        assert_eq!(s.table(), &[prod.element(&[0], 0), prod.element(&[0], 1)]);
    }

    #[test]
    fn rejects_non_cocycle() {
        let (g, a) = z2_setup();
        let mut w = Cochain::zero(&g, &a, 2);
        w.set(&[0, 1], &[1]);
        let err = build_extension(&w).unwrap_err();
        let ExtError::NotACocycle(p, q, r) = err else { panic!("{err:?}") };
        assert_ne!(w.coboundary().unwrap().value(&[p, q, r]), &[0]);
    }

    #[test]
    fn sections_and_cocycles() {
        let (g, a) = z2_setup();
        let w = nontrivial(&g, &a);
        let e = build_extension(&w).unwrap();
        assert_eq!(cocycle_of_section(&e, &extract_section(&e, SectionConvention::Canonical)), w);
        for seed in 0..8 {
            let s = extract_section(&e, SectionConvention::Random(seed));
            let w2 = cocycle_of_section(&e, &s);
            // s = s₀·i(φ) gives ω − δφ
            let phi = Cochain::from_fn(&g, &a, 1, |p| e.split_element(s.apply(p[0])).0);
            assert_eq!(w2, w.sub(&phi.coboundary().unwrap()).unwrap());
            assert!(are_equivalent(&e, &build_extension(&w2).unwrap()).unwrap().is_some());
        }
    }

    #[test]
    fn equivalence_partition() {
        let (g, a) = z2_setup();
        let cocycles = enumerate_cocycles(&g, &a, 2).unwrap();
        let exts: Vec<_> = cocycles.iter().map(|w| build_extension(w).unwrap()).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..exts.len() {
            match classes.iter_mut().find(|c| are_equivalent(&exts[c[0]], &exts[i]).unwrap().is_some()) {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        // |B²| = |C¹| / |Z¹| = 4 / 2
        assert_eq!(sizes, vec![2, 2]);
        for i in 0..exts.len() {
            for j in 0..exts.len() {
                assert_eq!(
                    are_equivalent(&exts[i], &exts[j]).unwrap().is_some(),
                    are_equivalent_exhaustive(&exts[i], &exts[j]).unwrap().is_some()
                );
            }
        }
        let z = build_extension(&Cochain::zero(&g, &a, 2)).unwrap();
        assert!(are_equivalent(&z, &z).unwrap().unwrap().phi.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::builtin("klein4").unwrap();
        let a = AbelianCoefficients::cyclic(2);
        // bilinear, hence a cocycle: ω(p,q) = p₁q₂ in coordinates p = 2p₁ + p₂
        let w = Cochain::from_fn(&g, &a, 2, |t| vec![((t[0] / 2) * (t[1] % 2)) as u64]);
        let e = build_extension(&w).unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let back = CentralExtensionTable::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.carrier().to_json(), e.carrier().to_json());
        let mut j = e.to_json();
        j.projection[0] = 1;
        assert!(CentralExtensionTable::from_json(&j).is_err());
    }
}

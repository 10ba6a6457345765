use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{AbelianCoefficients, FiniteGroup, GroupError, GroupHom, GroupJson};

/// A function Pⁿ → A, stored as a complete value table. Tuples are indexed
/// lexicographically with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    coeffs: AbelianCoefficients,
    degree: usize,
    values: Vec<u64>,
}

/// Decodes a tuple index into arguments.
pub fn tuple_of(order: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut args = vec![0; degree];
    for slot in args.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    args
}

pub fn index_of(order: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &p| acc * order + p)
}

impl Cochain {
    pub fn zero(group: &Arc<FiniteGroup>, coeffs: &AbelianCoefficients, degree: usize) -> Self {
        let entries = group.order().pow(degree as u32);
        Self {
            group: Arc::clone(group),
            coeffs: coeffs.clone(),
            degree,
            values: vec![0; entries * coeffs.rank()],
        }
    }

    pub fn from_fn(
        group: &Arc<FiniteGroup>,
        coeffs: &AbelianCoefficients,
        degree: usize,
        f: impl Fn(&[usize]) -> Vec<u64>,
    ) -> Self {
        let mut c = Self::zero(group, coeffs, degree);
        for idx in 0..c.entries() {
            let v = f(&tuple_of(group.order(), degree, idx));
            let v: Vec<u64> = v.iter().zip(coeffs.orders()).map(|(x, m)| x % m).collect();
            c.set_at(idx, &v);
        }
        c
    }

    /// Builds a cochain from a flat table of encoded A-elements.
    pub fn from_encoded(
        group: &Arc<FiniteGroup>,
        coeffs: &AbelianCoefficients,
        degree: usize,
        encoded: &[u64],
    ) -> Self {
        let mut c = Self::zero(group, coeffs, degree);
        for (idx, &e) in encoded.iter().enumerate() {
            c.set_at(idx, &coeffs.decode(e));
        }
        c
    }

    pub fn random(group: &Arc<FiniteGroup>, coeffs: &AbelianCoefficients, degree: usize, rng: &mut impl Rng) -> Self {
        let size = coeffs.size();
        let mut c = Self::zero(group, coeffs, degree);
        for idx in 0..c.entries() {
            let v = coeffs.decode(rng.gen_range(0..size));
            c.set_at(idx, &v);
        }
        c
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

    /// Number of argument tuples, |P|ⁿ.
    pub fn entries(&self) -> usize {
        self.values.len() / self.coeffs.rank()
    }

    pub fn value(&self, args: &[usize]) -> &[u64] {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        self.value_at(index_of(self.group.order(), args))
    }

    pub fn value_at(&self, idx: usize) -> &[u64] {
        let r = self.coeffs.rank();
        &self.values[idx * r..(idx + 1) * r]
    }

    pub fn set(&mut self, args: &[usize], v: &[u64]) {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let idx = index_of(self.group.order(), args);
        self.set_at(idx, v);
    }

    pub fn set_at(&mut self, idx: usize, v: &[u64]) {
        assert!(self.coeffs.is_valid(v), "invalid coefficient value {v:?}");
        let r = self.coeffs.rank();
        self.values[idx * r..(idx + 1) * r].copy_from_slice(v);
    }

    /// Values of one cyclic factor, one per tuple.
    pub fn component(&self, i: usize) -> Vec<u64> {
        let r = self.coeffs.rank();
        self.values.iter().skip(i).step_by(r).copied().collect()
    }

    pub fn set_component(&mut self, i: usize, vals: &[u64]) {
        let r = self.coeffs.rank();
        let m = self.coeffs.orders()[i];
        for (idx, &v) in vals.iter().enumerate() {
            self.values[idx * r + i] = v % m;
        }
    }

    pub fn encoded(&self) -> Vec<u64> {
        (0..self.entries()).map(|i| self.coeffs.encode(self.value_at(i))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let id = self.group.identity();
        (0..self.entries()).all(|idx| {
            !tuple_of(self.group.order(), self.degree, idx).contains(&id)
                || self.value_at(idx).iter().all(|&v| v == 0)
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GroupError> {
        if self.group != other.group || self.coeffs != other.coeffs || self.degree != other.degree {
            return Err(GroupError::Mismatch("cochains live in different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for idx in 0..self.entries() {
            let v = self.coeffs.add(self.value_at(idx), other.value_at(idx));
            out.set_at(idx, &v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for idx in 0..self.entries() {
            let v = self.coeffs.neg(self.value_at(idx));
            out.set_at(idx, &v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Self {
        let mut out = self.clone();
        let r = self.coeffs.rank();
        for (i, v) in out.values.iter_mut().enumerate() {
            let m = self.coeffs.orders()[i % r];
            *v = (*v % m) * (k % m) % m;
        }
        out
    }

    /// δₙ for trivial action:
    /// δf(p₁,…,pₙ₊₁) = f(p₂,…) + Σᵢ (−1)ⁱ f(…, pᵢpᵢ₊₁, …) + (−1)ⁿ⁺¹ f(p₁,…,pₙ).
    pub fn coboundary(&self) -> Result<Self, GroupError> {
        let n = self.degree;
        if n > 2 {
            return Err(GroupError::UnsupportedDegree(n));
        }
        let g = &self.group;
        let a = &self.coeffs;
        let mut out = Self::zero(g, a, n + 1);
        let mut merged = vec![0usize; n];
        for idx in 0..out.entries() {
            let p = tuple_of(g.order(), n + 1, idx);
            let mut acc = self.value(&p[1..]).to_vec();
            for i in 0..n {
                merged[..i].copy_from_slice(&p[..i]);
                merged[i] = g.mul(p[i], p[i + 1]);
                merged[i + 1..].copy_from_slice(&p[i + 2..]);
                // the merge of pᵢ₊₁ (1-based i+1) carries sign (−1)^(i+1)
                let term = self.value(&merged);
                acc = if i % 2 == 0 { a.sub(&acc, term) } else { a.add(&acc, term) };
            }
            let last = self.value(&p[..n]);
            acc = if n % 2 == 0 { a.sub(&acc, last) } else { a.add(&acc, last) };
            out.set_at(idx, &acc);
        }
        Ok(out)
    }

    /// The homomorphism P → A encoded by a degree-1 cocycle, if it is one.
    pub fn as_hom(&self) -> Option<GroupHom> {
        if self.degree != 1 {
            return None;
        }
        let target = Arc::new(coefficient_group(&self.coeffs));
        GroupHom::new(&self.group, &target, self.encoded().into_iter().map(|e| e as usize).collect()).ok()
    }

    pub fn from_hom(hom: &GroupHom, coeffs: &AbelianCoefficients) -> Result<Self, GroupError> {
        if hom.target().order() as u64 != coeffs.size() {
            return Err(GroupError::Mismatch("homomorphism target is not the coefficient group".into()));
        }
        let encoded: Vec<u64> = hom.table().iter().map(|&x| x as u64).collect();
        Ok(Self::from_encoded(hom.source(), coeffs, 1, &encoded))
    }

    pub fn to_json(&self) -> CochainJson {
        let values = (0..self.entries())
            .map(|idx| CochainEntry {
                args: tuple_of(self.group.order(), self.degree, idx),
                value: CochainValue::from_element(self.value_at(idx)),
            })
            .collect();
        CochainJson {
            group: GroupSpec::Table(self.group.to_json()),
            coefficients: self.coeffs.orders().to_vec(),
            degree: self.degree,
            values,
        }
    }

    /// Reads a cochain. Tuples missing from `values` are zero; repeated
    /// tuples are rejected.
    pub fn from_json(j: &CochainJson) -> Result<Self, GroupError> {
        let group = j.group.resolve()?;
        let coeffs = AbelianCoefficients::new(j.coefficients.clone())?;
        if j.degree > 3 {
            return Err(GroupError::UnsupportedDegree(j.degree));
        }
        let mut c = Self::zero(&group, &coeffs, j.degree);
        let mut seen = BTreeSet::new();
        for e in &j.values {
            if e.args.len() != j.degree || e.args.iter().any(|&p| p >= group.order()) {
                return Err(GroupError::Parse(format!("bad argument tuple {:?}", e.args)));
            }
            if !seen.insert(e.args.clone()) {
                return Err(GroupError::Parse(format!("tuple {:?} given twice", e.args)));
            }
            let raw = e.value.to_vec();
            if raw.len() != coeffs.rank() {
                return Err(GroupError::Parse(format!(
                    "value for {:?} has {} components, expected {}",
                    e.args,
                    raw.len(),
                    coeffs.rank()
                )));
            }
            c.set(&e.args, &coeffs.reduce(&raw));
        }
        Ok(c)
    }

    pub fn from_json_str(s: &str) -> Result<Self, GroupError> {
        let j: CochainJson = serde_json::from_str(s)
            .map_err(|e| GroupError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&j)
    }
}

/// A as a finite group, with element indices matching
/// [`AbelianCoefficients::encode`].
pub fn coefficient_group(a: &AbelianCoefficients) -> FiniteGroup {
    let mut it = a.orders().iter();
    let first = FiniteGroup::cyclic(*it.next().expect("nonempty") as usize);
    it.fold(first, |g, &m| FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(m as usize)))
}

/// A group given by builtin name or by explicit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table(GroupJson),
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<Arc<FiniteGroup>, GroupError> {
        match self {
            GroupSpec::Name(n) => FiniteGroup::builtin(n),
            GroupSpec::Table(t) => Ok(Arc::new(FiniteGroup::from_json("table", t)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CochainValue {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl CochainValue {
    fn from_element(v: &[u64]) -> Self {
        if v.len() == 1 {
            CochainValue::Scalar(v[0] as i64)
        } else {
            CochainValue::Vector(v.iter().map(|&x| x as i64).collect())
        }
    }

    fn to_vec(&self) -> Vec<i64> {
        match self {
            CochainValue::Scalar(x) => vec![*x],
            CochainValue::Vector(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainEntry {
    pub args: Vec<usize>,
    pub value: CochainValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub group: GroupSpec,
    pub coefficients: Vec<u64>,
    pub degree: usize,
    pub values: Vec<CochainEntry>,
}

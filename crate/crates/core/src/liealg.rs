//! Finite-dimensional Lie algebras over ℚ given by structure constants.
//!
//! Conventions for the Poincaré and Lorentz builtins (spacetime dimension d,
//! metric η = diag(+1, −1, …, −1)):
//!
//! * basis `J{μ}{ν}` for μ < ν, lexicographic, followed by `P{μ}`;
//! * `J_{μν}` acts on vectors as `(J_{μν})^α_β = δ^α_μ η_{νβ} − δ^α_ν η_{μβ}`,
//!   `P_μ` is the unit translation along `e_μ`; brackets are matrix commutators
//!   in the affine representation, so `[J_{μν}, P_ρ] = η_{νρ} P_μ − η_{μρ} P_ν`;
//! * the boost aliases `K{i}` stand for `J_{i0} = −J_{0i}`, so
//!   `[K₁, P₀] = P₁`;
//! * the boost of the standard wedge, `t ↦ Λ(t)` with `cosh 2πt` entries, has
//!   generator `2π·J₀₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{parse_rational, rat, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("elements belong to different algebras")]
    MismatchedAlgebra,
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("unknown basis element {0:?}")]
    UnknownElement(String),
    #[error("antisymmetry violated: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")]
    Antisymmetry { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k}), defect {defect}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        defect: String,
    },
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("invalid algebra description: {0}")]
    Parse(String),
    #[error("degree {degree} out of range 0..={dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("2-cochain is not closed: d\u{2082}\u{3c9} is nonzero on basis triple ({0}, {1}, {2})")]
    NotClosed(usize, usize, usize),
}

/// Raw structure constants `c[i][j][k]` with `[xᵢ, xⱼ] = Σₖ c[i][j][k] xₖ`,
/// not yet known to define a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    labels: Vec<String>,
    c: Vec<BigRational>,
}

/// Worst Jacobi violation found by [`StructureConstants::jacobi_defect`].
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiDefect {
    pub defect: BigRational,
    pub triple: Option<(usize, usize, usize)>,
}

impl StructureConstants {
    pub fn zero(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self {
            labels,
            c: vec![BigRational::zero(); n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: BigRational) {
        let x = self.idx(i, j, k);
        self.c[x] = v;
    }

    /// Sets `[xᵢ, xⱼ] = coeffs` and `[xⱼ, xᵢ] = −coeffs`.
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: &[BigRational]) {
        for (k, v) in coeffs.iter().enumerate() {
            self.set(i, j, k, v.clone());
            self.set(j, i, k, -v.clone());
        }
    }

    fn bracket_vec(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *self.get(i, j, k) != -self.get(j, i, k).clone() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Largest absolute coefficient of the cyclic sum of double brackets over
    /// all basis triples.
    pub fn jacobi_defect(&self) -> JacobiDefect {
        let n = self.dim();
        let mut worst = JacobiDefect {
            defect: BigRational::zero(),
            triple: None,
        };
        let row = |i: usize, j: usize| -> Vec<BigRational> { (0..n).map(|k| self.get(i, j, k).clone()).collect() };
        // [v, x_k] for a coefficient vector v
        let with_basis = |v: &[BigRational], k: usize| -> Vec<BigRational> {
            let mut out = vec![BigRational::zero(); n];
            for (l, vl) in v.iter().enumerate() {
                if vl.is_zero() {
                    continue;
                }
                for (m, o) in out.iter_mut().enumerate() {
                    let c = self.get(l, k, m);
                    if !c.is_zero() {
                        *o += vl * c;
                    }
                }
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                let a_ij = row(i, j);
                for k in 0..n {
                    let a = with_basis(&a_ij, k);
                    let b = with_basis(&row(j, k), i);
                    let c = with_basis(&row(k, i), j);
                    for l in 0..n {
                        let s = (&a[l] + &b[l] + &c[l]).abs();
                        if s > worst.defect {
                            worst = JacobiDefect {
                                defect: s,
                                triple: Some((i, j, k)),
                            };
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn validate(&self) -> Result<(), LieError> {
        if let Some((i, j, k)) = self.antisymmetry_violation() {
            return Err(LieError::Antisymmetry { i, j, k });
        }
        let jd = self.jacobi_defect();
        if let Some((i, j, k)) = jd.triple {
            return Err(LieError::Jacobi {
                i,
                j,
                k,
                defect: jd.defect.to_string(),
            });
        }
        Ok(())
    }
}

/// A validated Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    constants: StructureConstants,
    aliases: BTreeMap<String, Vec<BigRational>>,
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

impl LieAlgebra {
    pub fn new(name: impl Into<String>, constants: StructureConstants) -> Result<Self, LieError> {
        constants.validate()?;
        Ok(Self {
            name: name.into(),
            constants,
            aliases: BTreeMap::new(),
        })
    }

    /// Builds the algebra spanned by linearly independent square matrices
    /// closed under commutators; structure constants come from solving
    /// `[Xᵢ, Xⱼ] = Σ cᵢⱼᵏ Xₖ` exactly.
    pub fn from_matrix_basis(
        name: impl Into<String>,
        labels: Vec<String>,
        mats: &[RationalMatrix],
    ) -> Result<Self, LieError> {
        let n = mats.len();
        if labels.len() != n {
            return Err(LieError::Length {
                expected: n,
                got: labels.len(),
            });
        }
        let size = mats.first().map_or(0, |m| m.rows() * m.cols());
        let flat = |m: &RationalMatrix| -> Vec<BigRational> {
            (0..m.rows())
                .flat_map(|r| m.row(r).to_vec())
                .collect()
        };
        // columns are the flattened basis matrices
        let mut data = Vec::with_capacity(size * n);
        let flats: Vec<_> = mats.iter().map(flat).collect();
        for e in 0..size {
            for f in &flats {
                data.push(f[e].clone());
            }
        }
        let basis = RationalMatrix::new(size, n, data).map_err(|e| LieError::Parse(e.to_string()))?;
        if basis.rank() != n {
            return Err(LieError::Parse("matrix basis is linearly dependent".into()));
        }
        let mut sc = StructureConstants::zero(labels);
        for i in 0..n {
            for j in i + 1..n {
                let xy = mats[i].mul(&mats[j]).expect("square matrices");
                let yx = mats[j].mul(&mats[i]).expect("square matrices");
                let comm: Vec<BigRational> = flat(&xy)
                    .into_iter()
                    .zip(flat(&yx))
                    .map(|(a, b)| a - b)
                    .collect();
                let coeffs = basis
                    .solve(&comm)
                    .expect("shapes agree")
                    .ok_or_else(|| LieError::Parse("matrix span is not closed under brackets".into()))?;
                sc.set_bracket(i, j, &coeffs);
            }
        }
        Self::new(name, sc)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.constants.labels()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn jacobi_defect(&self) -> JacobiDefect {
        self.constants.jacobi_defect()
    }

    pub(crate) fn bracket_vec(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        self.constants.bracket_vec(x, y)
    }

    pub fn builtin(name: &str) -> Result<Arc<Self>, LieError> {
        name.parse::<Builtin>().map(|b| Arc::new(b.build()))
    }

    fn with_alias(mut self, name: &str, coeffs: Vec<BigRational>) -> Self {
        self.aliases.insert(name.to_string(), coeffs);
        self
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }
}

/// Element of a Lie algebra as a coefficient vector in its basis.
#[derive(Clone, Debug)]
pub struct LieElement {
    algebra: Arc<LieAlgebra>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

fn same_algebra(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.algebra.labels())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl LieElement {
    pub fn new(algebra: &Arc<LieAlgebra>, coeffs: Vec<BigRational>) -> Result<Self, LieError> {
        if coeffs.len() != algebra.dim() {
            return Err(LieError::Length {
                expected: algebra.dim(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            algebra: Arc::clone(algebra),
            coeffs,
        })
    }

    pub fn zero(algebra: &Arc<LieAlgebra>) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            coeffs: vec![BigRational::zero(); algebra.dim()],
        }
    }

    pub fn basis(algebra: &Arc<LieAlgebra>, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[i] = BigRational::one();
        e
    }

    /// Basis element or alias (e.g. `"P0"`, `"K1"`) by name.
    pub fn named(algebra: &Arc<LieAlgebra>, name: &str) -> Result<Self, LieError> {
        if let Some(i) = algebra.index_of(name) {
            return Ok(Self::basis(algebra, i));
        }
        algebra
            .aliases
            .get(name)
            .map(|c| Self {
                algebra: Arc::clone(algebra),
                coeffs: c.clone(),
            })
            .ok_or_else(|| LieError::UnknownElement(name.to_string()))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(LieError::MismatchedAlgebra);
        }
        Ok(Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }
}

pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    if !same_algebra(&x.algebra, &y.algebra) {
        return Err(LieError::MismatchedAlgebra);
    }
    Ok(LieElement {
        algebra: Arc::clone(&x.algebra),
        coeffs: x.algebra.bracket_vec(&x.coeffs, &y.coeffs),
    })
}

/// Linear subspace of a Lie algebra, kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    algebra: Arc<LieAlgebra>,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(algebra: &Arc<LieAlgebra>) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(algebra: &Arc<LieAlgebra>) -> Self {
        let mut s = Self::zero(algebra);
        for i in 0..algebra.dim() {
            s.insert(&LieElement::basis(algebra, i).coeffs);
        }
        s
    }

    pub fn span<'a>(algebra: &Arc<LieAlgebra>, elems: impl IntoIterator<Item = &'a LieElement>) -> Result<Self, LieError> {
        let mut s = Self::zero(algebra);
        for e in elems {
            if !same_algebra(algebra, &e.algebra) {
                return Err(LieError::MismatchedAlgebra);
            }
            s.insert(&e.coeffs);
        }
        Ok(s)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<LieElement> {
        self.rows
            .iter()
            .map(|r| LieElement {
                algebra: Arc::clone(&self.algebra),
                coeffs: r.clone(),
            })
            .collect()
    }

    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, x: &LieElement) -> bool {
        same_algebra(&self.algebra, &x.algebra) && self.reduce(&x.coeffs).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Whether the bracket of any two basis vectors stays inside.
    pub fn is_bracket_closed(&self) -> bool {
        let b = self.basis();
        b.iter().all(|x| {
            b.iter()
                .all(|y| self.contains(&bracket(x, y).expect("same algebra")))
        })
    }
}

pub fn derived_subalgebra(g: &Arc<LieAlgebra>) -> Subspace {
    let mut s = Subspace::zero(g);
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            let v = g.bracket_vec(&LieElement::basis(g, i).coeffs, &LieElement::basis(g, j).coeffs);
            s.insert(&v);
        }
    }
    s
}

pub fn is_perfect(g: &Arc<LieAlgebra>) -> bool {
    derived_subalgebra(g).dim() == g.dim()
}

/// Smallest bracket-closed subspace containing `gens`.
///
/// Each round brackets the current basis with the generators, then with
/// itself, and stops once a round adds nothing.
pub fn generated_subalgebra(g: &Arc<LieAlgebra>, gens: &[LieElement]) -> Result<Subspace, LieError> {
    if gens.is_empty() {
        return Err(LieError::EmptyGenerators);
    }
    let mut s = Subspace::span(g, gens)?;
    loop {
        let before = s.dim();
        let current = s.rows.clone();
        for v in &current {
            for x in gens {
                let b = g.bracket_vec(v, &x.coeffs);
                s.insert(&b);
            }
        }
        for (a, v) in current.iter().enumerate() {
            for w in &current[a + 1..] {
                let b = g.bracket_vec(v, w);
                s.insert(&b);
            }
        }
        if s.dim() == before {
            return Ok(s);
        }
    }
}

/// Smallest subspace containing `x` and stable under `[g, ·]`.
pub fn ideal_closure(g: &Arc<LieAlgebra>, x: &LieElement) -> Result<Subspace, LieError> {
    let mut s = Subspace::span(g, [x])?;
    let basis: Vec<_> = (0..g.dim()).map(|i| LieElement::basis(g, i).coeffs).collect();
    let mut frontier = s.rows.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for e in &basis {
                let b = g.bracket_vec(e, v);
                if s.insert(&b) {
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    Ok(s)
}

/// Names accepted by [`LieAlgebra::builtin`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Poincare(usize),
    Lorentz(usize),
    Sl2,
    Heisenberg,
    Abelian(usize),
}

impl FromStr for Builtin {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | '_' | '-'))
            .collect();
        let unknown = || LieError::UnknownAlgebra(s.to_string());
        let num = |rest: &str| rest.parse::<usize>().map_err(|_| unknown());
        let b = if let Some(r) = t.strip_prefix("poincare") {
            Builtin::Poincare(num(r)?)
        } else if let Some(r) = t.strip_prefix("lorentz") {
            Builtin::Lorentz(num(r)?)
        } else if let Some(r) = t.strip_prefix("abelian") {
            Builtin::Abelian(num(r)?)
        } else if t == "sl2" {
            Builtin::Sl2
        } else if t == "heisenberg" {
            Builtin::Heisenberg
        } else {
            return Err(unknown());
        };
        match b {
            Builtin::Poincare(d) | Builtin::Lorentz(d) if !(2..=4).contains(&d) => Err(unknown()),
            _ => Ok(b),
        }
    }
}

impl Builtin {
    pub fn build(self) -> LieAlgebra {
        match self {
            Builtin::Poincare(d) => spacetime_algebra(d, true),
            Builtin::Lorentz(d) => spacetime_algebra(d, false),
            Builtin::Sl2 => {
                let h = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
                let e = RationalMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
                let f = RationalMatrix::from_i64_rows(&[&[0, 0], &[1, 0]]);
                LieAlgebra::from_matrix_basis("sl2", labels(&["h", "e", "f"]), &[h, e, f])
                    .expect("sl2 is a Lie algebra")
            }
            Builtin::Heisenberg => {
                let x = RationalMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
                let y = RationalMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
                let z = RationalMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
                LieAlgebra::from_matrix_basis("heisenberg", labels(&["x", "y", "z"]), &[x, y, z])
                    .expect("heisenberg is a Lie algebra")
            }
            Builtin::Abelian(n) => {
                let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                LieAlgebra::new(format!("abelian{n}"), StructureConstants::zero(names))
                    .expect("zero bracket is a Lie algebra")
            }
        }
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Diagonal entry η_{ii} of the mostly-minus metric.
pub(crate) fn metric(i: usize) -> i64 {
    if i == 0 {
        1
    } else {
        -1
    }
}

/// Affine (d+1)×(d+1) matrix of `J_{μν}`.
pub(crate) fn lorentz_generator_matrix(d: usize, mu: usize, nu: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(d + 1, d + 1);
    for beta in 0..d {
        if beta == nu {
            m.add_at(mu, beta, &rat(metric(nu)));
        }
        if beta == mu {
            m.add_at(nu, beta, &rat(-metric(mu)));
        }
    }
    m
}

pub(crate) fn translation_generator_matrix(d: usize, mu: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(d + 1, d + 1);
    m.set(mu, d, BigRational::one());
    m
}

fn spacetime_algebra(d: usize, with_translations: bool) -> LieAlgebra {
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for mu in 0..d {
        for nu in mu + 1..d {
            names.push(format!("J{mu}{nu}"));
            mats.push(lorentz_generator_matrix(d, mu, nu));
        }
    }
    if with_translations {
        for mu in 0..d {
            names.push(format!("P{mu}"));
            mats.push(translation_generator_matrix(d, mu));
        }
    }
    let name = if with_translations {
        format!("poincare{d}")
    } else {
        format!("lorentz{d}")
    };
    let mut g = LieAlgebra::from_matrix_basis(name, names, &mats).expect("Poincaré algebra is a Lie algebra");
    for i in 1..d {
        let idx = g.index_of(&format!("J0{i}")).expect("boost generator present");
        let mut k = vec![BigRational::zero(); g.dim()];
        k[idx] = -BigRational::one();
        g = g.with_alias(&format!("K{i}"), k);
    }
    g
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

impl StructureConstants {
    /// Reads the JSON structure-constant format. Omitted brackets are zero;
    /// `[xⱼ, xᵢ]` is filled in as `−[xᵢ, xⱼ]` unless also given explicitly.
    /// Coefficient keys may be indices or labels.
    pub fn from_json_str(s: &str) -> Result<Self, LieError> {
        let raw: AlgebraJson = serde_json::from_str(s)
            .map_err(|e| LieError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&raw)
    }

    pub fn from_json(raw: &AlgebraJson) -> Result<Self, LieError> {
        let n = raw.dim;
        let labels = match &raw.labels {
            Some(l) if l.len() != n => {
                return Err(LieError::Length {
                    expected: n,
                    got: l.len(),
                })
            }
            Some(l) => l.clone(),
            None => (0..n).map(|i| format!("x{i}")).collect(),
        };
        let mut sc = Self::zero(labels);
        let mut explicit = vec![false; n * n];
        let mut entries = Vec::new();
        for b in &raw.brackets {
            if b.i >= n || b.j >= n {
                return Err(LieError::Parse(format!("bracket index ({}, {}) out of range", b.i, b.j)));
            }
            let mut coeffs = vec![BigRational::zero(); n];
            for (key, val) in &b.coeffs {
                let k = key
                    .parse::<usize>()
                    .ok()
                    .filter(|&k| k < n)
                    .or_else(|| sc.labels.iter().position(|l| l == key))
                    .ok_or_else(|| LieError::UnknownElement(key.clone()))?;
                coeffs[k] = parse_rational(val).map_err(|e| LieError::Parse(e.to_string()))?;
            }
            explicit[b.i * n + b.j] = true;
            entries.push((b.i, b.j, coeffs));
        }
        for (i, j, coeffs) in entries {
            for (k, v) in coeffs.iter().enumerate() {
                sc.set(i, j, k, v.clone());
                if !explicit[j * n + i] {
                    sc.set(j, i, k, -v.clone());
                }
            }
        }
        Ok(sc)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<String, String> = (0..n)
                    .filter(|&k| !self.get(i, j, k).is_zero())
                    .map(|k| (k.to_string(), self.get(i, j, k).to_string()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketJson { i, j, coeffs });
                }
            }
        }
        AlgebraJson {
            dim: n,
            labels: Some(self.labels.clone()),
            brackets,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::ratio;

    fn alg(name: &str) -> Arc<LieAlgebra> {
        LieAlgebra::builtin(name).unwrap()
    }

    fn el(g: &Arc<LieAlgebra>, name: &str) -> LieElement {
        LieElement::named(g, name).unwrap()
    }

    #[test]
    fn builtin_dimensions() {
        assert_eq!(alg("poincare4").dim(), 10);
        assert_eq!(alg("poincare(2)").dim(), 3);
        assert_eq!(alg("poincare3").dim(), 6);
        assert_eq!(alg("lorentz4").dim(), 6);
        assert_eq!(alg("sl2").dim(), 3);
        assert_eq!(alg("abelian(5)").dim(), 5);
        assert!(matches!(LieAlgebra::builtin("poincare7"), Err(LieError::UnknownAlgebra(_))));
        assert!(matches!(LieAlgebra::builtin("e8"), Err(LieError::UnknownAlgebra(_))));
    }

    #[test]
    fn defining_brackets() {
        let sl2 = alg("sl2");
        assert_eq!(bracket(&el(&sl2, "e"), &el(&sl2, "f")).unwrap(), el(&sl2, "h"));
        let p4 = alg("poincare4");
        assert_eq!(bracket(&el(&p4, "K1"), &el(&p4, "P0")).unwrap(), el(&p4, "P1"));
        // [J_{μν}, P_ρ] = η_{νρ} P_μ − η_{μρ} P_ν with ν = ρ = 2: η₂₂ = −1
        assert_eq!(
            bracket(&el(&p4, "J12"), &el(&p4, "P2")).unwrap(),
            el(&p4, "P1").scale(&rat(-1))
        );
        let x = el(&p4, "J03").add(&el(&p4, "P2")).unwrap();
        assert!(bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = alg("sl2");
        let b = alg("heisenberg");
        assert_eq!(
            bracket(&LieElement::basis(&a, 0), &LieElement::basis(&b, 0)),
            Err(LieError::MismatchedAlgebra)
        );
    }

    #[test]
    fn derived_and_perfect() {
        assert_eq!(derived_subalgebra(&alg("abelian4")).dim(), 0);
        assert_eq!(derived_subalgebra(&alg("sl2")).dim(), 3);
        let p2 = alg("poincare2");
        let d = derived_subalgebra(&p2);
        assert_eq!(d.dim(), 2);
        assert!(d.contains(&el(&p2, "P0")) && d.contains(&el(&p2, "P1")));
        assert!(!d.contains(&el(&p2, "J01")));
        assert!(is_perfect(&alg("poincare4")));
        assert!(is_perfect(&alg("poincare3")));
        assert!(!is_perfect(&p2));
        assert!(is_perfect(&alg("sl2")));
        assert!(is_perfect(&alg("lorentz4")));
        let h = alg("heisenberg");
        assert!(!is_perfect(&h));
        assert_eq!(derived_subalgebra(&h).basis(), vec![el(&h, "z")]);
    }

    #[test]
    fn generation() {
        let sl2 = alg("sl2");
        let s = generated_subalgebra(&sl2, &[el(&sl2, "e"), el(&sl2, "f")]).unwrap();
        assert_eq!(s.dim(), 3);
        let ab = alg("abelian2");
        assert_eq!(generated_subalgebra(&ab, &[el(&ab, "x1")]).unwrap().dim(), 1);
        assert_eq!(generated_subalgebra(&ab, &[]).unwrap_err(), LieError::EmptyGenerators);
    }

    #[test]
    fn ideals_in_poincare() {
        let p4 = alg("poincare4");
        let translations = Subspace::span(&p4, &["P0", "P1", "P2", "P3"].map(|n| el(&p4, n))).unwrap();
        for name in ["P0", "J12"] {
            let i = ideal_closure(&p4, &el(&p4, name)).unwrap();
            assert!(i.contains_subspace(&translations), "{name}");
        }
        assert_eq!(ideal_closure(&p4, &LieElement::zero(&p4)).unwrap().dim(), 0);
        assert_eq!(ideal_closure(&p4, &el(&p4, "P0")).unwrap().dim(), 4);
    }

    #[test]
    fn builtins_are_valid() {
        for name in ["poincare2", "poincare3", "poincare4", "lorentz2", "lorentz3", "lorentz4", "sl2", "heisenberg", "abelian3"] {
            let g = alg(name);
            assert!(g.jacobi_defect().defect.is_zero(), "{name}");
            assert!(g.constants().antisymmetry_violation().is_none());
            // generated by its own basis
            let basis: Vec<_> = (0..g.dim()).map(|i| LieElement::basis(&g, i)).collect();
            if !basis.is_empty() {
                assert_eq!(generated_subalgebra(&g, &basis).unwrap().dim(), g.dim());
            }
        }
    }

    #[test]
    fn corruption_is_detected() {
        let mut sc = alg("sl2").constants().clone();
        // flip one side of an antisymmetric pair
        let v = sc.get(1, 2, 0).clone();
        sc.set(1, 2, 0, -v);
        assert!(matches!(sc.validate(), Err(LieError::Antisymmetry { .. })));

        // antisymmetric but non-Jacobi: [e,f] = e
        let mut sc = alg("sl2").constants().clone();
        sc.set_bracket(1, 2, &[rat(0), rat(1), rat(0)]);
        assert!(sc.antisymmetry_violation().is_none());
        let jd = sc.jacobi_defect();
        assert!(jd.defect > BigRational::zero());
        assert!(matches!(sc.validate(), Err(LieError::Jacobi { .. })));
    }

    #[test]
    fn json_round_trip_and_completion() {
        let json = r#"{"dim": 3, "labels": ["h","e","f"], "brackets": [
            {"i":0,"j":1,"coeffs":{"e":"2"}},
            {"i":0,"j":2,"coeffs":{"2":"-2/1"}},
            {"i":1,"j":2,"coeffs":{"h":"1"}}]}"#;
        let sc = StructureConstants::from_json_str(json).unwrap();
        assert_eq!(&sc, alg("sl2").constants());
        assert_eq!(*sc.get(2, 1, 0), rat(-1));
        let again = StructureConstants::from_json(&sc.to_json()).unwrap();
        assert_eq!(again, sc);

        let bad = r#"{"dim": 2, "brackets": [{"i":0,"j":1,"coeffs":{"0":"1/2"}},{"i":1,"j":0,"coeffs":{"0":"1/2"}}]}"#;
        let sc = StructureConstants::from_json_str(bad).unwrap();
        assert!(matches!(sc.validate(), Err(LieError::Antisymmetry { .. })));
        assert_eq!(*sc.get(0, 1, 0), ratio(1, 2));

        let err = StructureConstants::from_json_str("{\"dim\": 2,\n \"brackets\": [}").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}

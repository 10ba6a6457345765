//! Four-dimensional Minkowski geometry: wedges, their boost groups and the
//! boost generators as elements of `poincare4`.
//!
//! Metric diag(+,−,−,−). The standard wedge is W₁ = {x : |x₀| < x₁} and its
//! boosts are
//!
//! ```text
//! Λ(t) = [ cosh 2πt  −sinh 2πt ]   on (x₀, x₁), identity on (x₂, x₃).
//!        [ −sinh 2πt  cosh 2πt ]
//! ```
//!
//! A wedge is stored as a defining Poincaré element g with W = gW₁, and
//! Λ_W(t) = g Λ(t) g⁻¹. Generators carry an implicit factor 2π, so W₁ maps
//! to J01.

mod trig;

use std::sync::Arc;

use nalgebra::{Matrix4, Matrix5, Vector4};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{parse_rational, rat, MatrixError, RationalMatrix};
use crate::liealg::{
    generated_subalgebra, lorentz_generator_matrix, metric, translation_generator_matrix, LieAlgebra, LieElement,
    LieError,
};

pub use trig::{
    symbolic_boost, symbolic_boost_of_sum, trig_identity, trig_mul, trig_transpose, TrigMatrix, TrigPoly,
};

/// Tolerance for Lorentz checks on floating-point defining elements.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SpacetimeError {
    #[error("not a proper orthochronous Lorentz matrix: {0}")]
    NotLorentz(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra must be poincare4 with basis J01..J23, P0..P3, got {0}")]
    WrongAlgebra(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn eta(i: usize) -> BigRational {
    rat(metric(i))
}

/// Boost of W₁ with parameter t.
pub fn boost_matrix(t: f64) -> Matrix4<f64> {
    let (c, s) = ((2.0 * std::f64::consts::PI * t).cosh(), (2.0 * std::f64::consts::PI * t).sinh());
    let mut m = Matrix4::identity();
    m[(0, 0)] = c;
    m[(1, 1)] = c;
    m[(0, 1)] = -s;
    m[(1, 0)] = -s;
    m
}

pub fn minkowski() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

fn det4(m: &RationalMatrix) -> BigRational {
    fn minor(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
        if rows.len() == 1 {
            return m.get(rows[0], cols[0]).clone();
        }
        let mut acc = BigRational::zero();
        for (k, &c) in cols.iter().enumerate() {
            let entry = m.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * minor(m, &rows[1..], &rest);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    minor(m, &[0, 1, 2, 3], &[0, 1, 2, 3])
}

/// Poincaré element (Λ, a) with exact rational entries, acting by x ↦ Λx + a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareElement {
    lorentz: RationalMatrix,
    translation: Vec<BigRational>,
}

impl PoincareElement {
    pub fn new(lorentz: RationalMatrix, translation: Vec<BigRational>) -> Result<Self, SpacetimeError> {
        if lorentz.rows() != 4 || lorentz.cols() != 4 || translation.len() != 4 {
            return Err(SpacetimeError::Shape("expected a 4x4 Lorentz matrix and a 4-vector".into()));
        }
        let g = Self { lorentz, translation };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<(), SpacetimeError> {
        let l = &self.lorentz;
        for i in 0..4 {
            for j in 0..4 {
                let v: BigRational = (0..4).map(|k| l.get(k, i) * l.get(k, j) * eta(k)).sum();
                let want = if i == j { eta(i) } else { BigRational::zero() };
                if v != want {
                    return Err(SpacetimeError::NotLorentz(format!("(ΛᵀηΛ)[{i}][{j}] = {v}, expected {want}")));
                }
            }
        }
        let d = det4(l);
        if !d.is_one() {
            return Err(SpacetimeError::NotLorentz(format!("determinant {d}")));
        }
        if l.get(0, 0) < &BigRational::one() {
            return Err(SpacetimeError::NotLorentz(format!("Λ00 = {} < 1", l.get(0, 0))));
        }
        Ok(())
    }

    pub fn identity() -> Self {
        Self {
            lorentz: RationalMatrix::identity(4),
            translation: vec![BigRational::zero(); 4],
        }
    }

    pub fn translation(a: [BigRational; 4]) -> Self {
        Self {
            lorentz: RationalMatrix::identity(4),
            translation: a.to_vec(),
        }
    }

    /// Spatial rotation by π/2 taking e₁ to e_k (k ∈ {1,2,3}); the identity for k = 1.
    pub fn rotation_e1_to(k: usize) -> Self {
        assert!((1..4).contains(&k), "spatial axis out of range");
        let mut l = RationalMatrix::identity(4);
        if k != 1 {
            l.set(1, 1, BigRational::zero());
            l.set(k, k, BigRational::zero());
            l.set(k, 1, BigRational::one());
            l.set(1, k, -BigRational::one());
        }
        Self {
            lorentz: l,
            translation: vec![BigRational::zero(); 4],
        }
    }

    /// Rotation by π in the (x₁, x₂) plane; takes W₁ to its causal complement.
    pub fn rotation_pi() -> Self {
        let mut l = RationalMatrix::identity(4);
        l.set(1, 1, -BigRational::one());
        l.set(2, 2, -BigRational::one());
        Self {
            lorentz: l,
            translation: vec![BigRational::zero(); 4],
        }
    }

    pub fn lorentz(&self) -> &RationalMatrix {
        &self.lorentz
    }

    pub fn translation_part(&self) -> &[BigRational] {
        &self.translation
    }

    /// (Λ₁, a₁)(Λ₂, a₂) = (Λ₁Λ₂, Λ₁a₂ + a₁).
    pub fn compose(&self, other: &Self) -> Self {
        let lorentz = self.lorentz.mul(&other.lorentz).expect("4x4");
        let mut translation = self.lorentz.mul_vec(&other.translation).expect("4x4");
        for (t, a) in translation.iter_mut().zip(&self.translation) {
            *t += a;
        }
        Self { lorentz, translation }
    }

    /// Λ⁻¹ = ηΛᵀη.
    pub fn inverse(&self) -> Self {
        let mut inv = RationalMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                inv.set(i, j, eta(i) * self.lorentz.get(j, i) * eta(j));
            }
        }
        let translation = inv.mul_vec(&self.translation).expect("4x4").into_iter().map(|x| -x).collect();
        Self { lorentz: inv, translation }
    }

    /// 5×5 matrix [[Λ, a], [0, 1]].
    pub fn affine(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(5, 5);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, self.lorentz.get(i, j).clone());
            }
            m.set(i, 4, self.translation[i].clone());
        }
        m.set(4, 4, BigRational::one());
        m
    }

    pub fn to_numeric(&self) -> NumericPoincare {
        let f = |x: &BigRational| x.to_f64().expect("finite");
        NumericPoincare {
            lorentz: Matrix4::from_fn(|i, j| f(self.lorentz.get(i, j))),
            translation: Vector4::from_fn(|i, _| f(&self.translation[i])),
        }
    }

    /// Whether g maps W₁ onto itself: a boost on (x₀, x₁), a rotation on
    /// (x₂, x₃) and a translation along the edge.
    pub fn stabilizes_standard_wedge(&self) -> bool {
        let l = &self.lorentz;
        let blocks_zero = (0..2).all(|i| (2..4).all(|j| l.get(i, j).is_zero() && l.get(j, i).is_zero()));
        blocks_zero
            && l.get(0, 0) == l.get(1, 1)
            && l.get(0, 1) == l.get(1, 0)
            && self.translation[0].is_zero()
            && self.translation[1].is_zero()
    }
}

/// Poincaré element with double entries.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoincare {
    pub lorentz: Matrix4<f64>,
    pub translation: Vector4<f64>,
}

impl NumericPoincare {
    pub fn new(lorentz: Matrix4<f64>, translation: Vector4<f64>, tol: f64) -> Result<Self, SpacetimeError> {
        let g = Self { lorentz, translation };
        let defect = (g.lorentz.transpose() * minkowski() * g.lorentz - minkowski()).abs().max();
        if defect > tol {
            return Err(SpacetimeError::NotLorentz(format!("metric defect {defect:.3e}")));
        }
        let det = g.lorentz.determinant();
        if (det - 1.0).abs() > tol {
            return Err(SpacetimeError::NotLorentz(format!("determinant {det}")));
        }
        if g.lorentz[(0, 0)] < 1.0 - tol {
            return Err(SpacetimeError::NotLorentz(format!("Λ00 = {} < 1", g.lorentz[(0, 0)])));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self {
            lorentz: Matrix4::identity(),
            translation: Vector4::zeros(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            lorentz: self.lorentz * other.lorentz,
            translation: self.lorentz * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = minkowski() * self.lorentz.transpose() * minkowski();
        Self {
            translation: -(inv * self.translation),
            lorentz: inv,
        }
    }

    pub fn apply(&self, x: &Vector4<f64>) -> Vector4<f64> {
        self.lorentz * x + self.translation
    }

    pub fn affine(&self) -> Matrix5<f64> {
        let mut m = Matrix5::identity();
        m.fixed_view_mut::<4, 4>(0, 0).copy_from(&self.lorentz);
        m.fixed_view_mut::<4, 1>(0, 4).copy_from(&self.translation);
        m
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.lorentz - other.lorentz)
            .abs()
            .max()
            .max((self.translation - other.translation).abs().max())
    }

    fn stabilizes_standard_wedge(&self, tol: f64) -> bool {
        let l = &self.lorentz;
        let blocks_zero = (0..2).all(|i| (2..4).all(|j| l[(i, j)].abs() <= tol && l[(j, i)].abs() <= tol));
        blocks_zero
            && (l[(0, 0)] - l[(1, 1)]).abs() <= tol
            && (l[(0, 1)] - l[(1, 0)]).abs() <= tol
            && self.translation[0].abs() <= tol
            && self.translation[1].abs() <= tol
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Definition {
    Exact(PoincareElement),
    Numeric(NumericPoincare),
}

/// Region gW₁ for a Poincaré element g.
#[derive(Clone, Debug, PartialEq)]
pub struct Wedge {
    def: Definition,
}

impl Wedge {
    pub fn standard() -> Self {
        Self::from_exact(PoincareElement::identity())
    }

    pub fn from_exact(g: PoincareElement) -> Self {
        Self {
            def: Definition::Exact(g),
        }
    }

    pub fn from_numeric(g: NumericPoincare) -> Self {
        Self {
            def: Definition::Numeric(g),
        }
    }

    /// Wedge along the k-th spatial axis, {|x₀| < x_k}.
    pub fn coordinate(k: usize) -> Self {
        Self::from_exact(PoincareElement::rotation_e1_to(k))
    }

    /// This wedge translated by a.
    pub fn translated(&self, a: [BigRational; 4]) -> Self {
        let t = PoincareElement::translation(a);
        match &self.def {
            Definition::Exact(g) => Self::from_exact(t.compose(g)),
            Definition::Numeric(g) => Self::from_numeric(t.to_numeric().compose(g)),
        }
    }

    pub fn exact(&self) -> Option<&PoincareElement> {
        match &self.def {
            Definition::Exact(g) => Some(g),
            Definition::Numeric(_) => None,
        }
    }

    pub fn defining_element(&self) -> NumericPoincare {
        match &self.def {
            Definition::Exact(g) => g.to_numeric(),
            Definition::Numeric(g) => g.clone(),
        }
    }

    /// Strict membership x ∈ W.
    pub fn contains(&self, x: &Vector4<f64>) -> bool {
        let y = self.defining_element().inverse().apply(x);
        y[0].abs() < y[1]
    }

    /// Causal complement W′ = gR W₁, R the rotation by π in (x₁, x₂).
    pub fn complement(&self) -> Self {
        let r = PoincareElement::rotation_pi();
        match &self.def {
            Definition::Exact(g) => Self::from_exact(g.compose(&r)),
            Definition::Numeric(g) => Self::from_numeric(g.compose(&r.to_numeric())),
        }
    }

    /// Whether the two wedges are the same region: g₁⁻¹g₂ stabilises W₁.
    pub fn same_region(&self, other: &Self) -> bool {
        match (&self.def, &other.def) {
            (Definition::Exact(a), Definition::Exact(b)) => a.inverse().compose(b).stabilizes_standard_wedge(),
            _ => self
                .defining_element()
                .inverse()
                .compose(&other.defining_element())
                .stabilizes_standard_wedge(NUMERIC_TOLERANCE),
        }
    }

    /// n points of W, drawn as g·y with y uniform-ish in a box of W₁.
    pub fn sample_interior<R: Rng>(&self, n: usize, rng: &mut R) -> Vec<Vector4<f64>> {
        let g = self.defining_element();
        (0..n)
            .map(|_| {
                let x1: f64 = rng.gen_range(0.05..3.0);
                let x0 = rng.gen_range(-0.95..0.95) * x1;
                let y = Vector4::new(x0, x1, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                g.apply(&y)
            })
            .collect()
    }

    pub fn to_json(&self) -> WedgeJson {
        match &self.def {
            Definition::Exact(g) => WedgeJson {
                lorentz: (0..4)
                    .map(|i| (0..4).map(|j| Scalar::Text(g.lorentz.get(i, j).to_string())).collect())
                    .collect(),
                translation: g.translation.iter().map(|x| Scalar::Text(x.to_string())).collect(),
            },
            Definition::Numeric(g) => WedgeJson {
                lorentz: (0..4).map(|i| (0..4).map(|j| Scalar::Number(g.lorentz[(i, j)])).collect()).collect(),
                translation: g.translation.iter().map(|&x| Scalar::Number(x)).collect(),
            },
        }
    }

    /// Parses the wedge JSON. Entries that are exactly a proper orthochronous
    /// Lorentz matrix give an exact wedge; entries that only pass to
    /// [`NUMERIC_TOLERANCE`] give a numeric one.
    pub fn from_json(raw: &WedgeJson) -> Result<Self, SpacetimeError> {
        if raw.lorentz.len() != 4 || raw.lorentz.iter().any(|r| r.len() != 4) || raw.translation.len() != 4 {
            return Err(SpacetimeError::Shape("expected a 4x4 \"lorentz\" and a length-4 \"translation\"".into()));
        }
        let rows = raw
            .lorentz
            .iter()
            .map(|r| r.iter().map(Scalar::exact).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let translation = raw.translation.iter().map(Scalar::exact).collect::<Result<Vec<_>, _>>()?;
        let lorentz = RationalMatrix::from_rows(rows)?;
        match PoincareElement::new(lorentz, translation) {
            Ok(g) => Ok(Self::from_exact(g)),
            Err(exact_err) => {
                let l = Matrix4::from_fn(|i, j| raw.lorentz[i][j].value());
                let a = Vector4::from_fn(|i, _| raw.translation[i].value());
                NumericPoincare::new(l, a, NUMERIC_TOLERANCE)
                    .map(Self::from_numeric)
                    .map_err(|_| exact_err)
            }
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, SpacetimeError> {
        let raw: WedgeJson = serde_json::from_str(text)
            .map_err(|e| SpacetimeError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&raw)
    }
}

/// A matrix entry: a JSON number or a rational string such as "-3/4".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    fn exact(&self) -> Result<BigRational, SpacetimeError> {
        match self {
            // shortest round-trip decimal, read exactly
            Scalar::Number(x) if x.is_finite() => Ok(parse_rational(&format!("{x}"))?),
            Scalar::Number(x) => Err(SpacetimeError::Parse(format!("non-finite entry {x}"))),
            Scalar::Text(s) => Ok(parse_rational(s)?),
        }
    }

    fn value(&self) -> f64 {
        match self {
            Scalar::Number(x) => *x,
            Scalar::Text(s) => parse_rational(s).ok().and_then(|r| r.to_f64()).unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeJson {
    pub lorentz: Vec<Vec<Scalar>>,
    pub translation: Vec<Scalar>,
}

/// Λ_W(t) = g Λ(t) g⁻¹.
pub fn wedge_boost(w: &Wedge, t: f64) -> NumericPoincare {
    let g = w.defining_element();
    let b = NumericPoincare {
        lorentz: boost_matrix(t),
        translation: Vector4::zeros(),
    };
    g.compose(&b).compose(&g.inverse())
}

/// Λ_W(t) with t symbolic: Lorentz part and translation part as polynomials
/// in cosh 2πt and sinh 2πt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPoincare {
    pub lorentz: TrigMatrix,
    pub translation: [TrigPoly; 4],
}

impl SymbolicPoincare {
    /// Substitutes t ↦ −t.
    pub fn reversed(&self) -> Self {
        Self {
            lorentz: std::array::from_fn(|i| std::array::from_fn(|j| self.lorentz[i][j].negate_var(0))),
            translation: std::array::from_fn(|i| self.translation[i].negate_var(0)),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let lorentz = trig_mul(&self.lorentz, &other.lorentz);
        let translation = std::array::from_fn(|i| {
            (0..4).fold(self.translation[i].clone(), |acc, k| &acc + &(&self.lorentz[i][k] * &other.translation[k]))
        });
        Self { lorentz, translation }
    }

    pub fn is_identity(&self) -> bool {
        let one = TrigPoly::one(1);
        (0..4).all(|i| {
            self.translation[i].is_zero()
                && (0..4).all(|j| if i == j { self.lorentz[i][j] == one } else { self.lorentz[i][j].is_zero() })
        })
    }

    /// ΛᵀηΛ = η as polynomials.
    pub fn preserves_metric(&self) -> bool {
        let lt = trig_transpose(&self.lorentz);
        let mut eta_m = trig_identity(1);
        for (i, row) in eta_m.iter_mut().enumerate() {
            row[i] = TrigPoly::constant(1, eta(i));
        }
        let q = trig_mul(&trig_mul(&lt, &eta_m), &self.lorentz);
        q == eta_m
    }
}

fn constant_matrix(m: &RationalMatrix) -> TrigMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| TrigPoly::constant(1, m.get(i, j).clone())))
}

/// Λ_W(t) for an exactly defined wedge, symbolic in t.
pub fn symbolic_wedge_boost(g: &PoincareElement) -> SymbolicPoincare {
    let inv = g.inverse();
    let zero = || TrigPoly::zero(1);
    let outer = SymbolicPoincare {
        lorentz: constant_matrix(&g.lorentz),
        translation: std::array::from_fn(|i| TrigPoly::constant(1, g.translation[i].clone())),
    };
    let boost = SymbolicPoincare {
        lorentz: symbolic_boost(1, 0),
        translation: std::array::from_fn(|_| zero()),
    };
    let inner = SymbolicPoincare {
        lorentz: constant_matrix(&inv.lorentz),
        translation: std::array::from_fn(|i| TrigPoly::constant(1, inv.translation[i].clone())),
    };
    outer.compose(&boost).compose(&inner)
}

fn check_poincare4(g: &Arc<LieAlgebra>) -> Result<(), SpacetimeError> {
    let want: Vec<String> = ["J01", "J02", "J03", "J12", "J13", "J23", "P0", "P1", "P2", "P3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if g.labels() != want.as_slice() {
        return Err(SpacetimeError::WrongAlgebra(g.labels().join(",")));
    }
    Ok(())
}

fn poincare_basis_matrices() -> Vec<RationalMatrix> {
    let mut mats = Vec::new();
    for mu in 0..4 {
        for nu in mu + 1..4 {
            mats.push(lorentz_generator_matrix(4, mu, nu));
        }
    }
    for mu in 0..4 {
        mats.push(translation_generator_matrix(4, mu));
    }
    mats
}

/// Generator of Λ_W(t) divided by 2π.
#[derive(Clone, Debug)]
pub struct BoostGenerator {
    pub element: LieElement,
    /// False when the defining element was only known numerically; the
    /// coefficients are then binary expansions of doubles.
    pub exact: bool,
    pub warning: Option<String>,
}

/// d/dt Λ_W(t) at t = 0, divided by 2π, in the basis of `poincare4`.
/// Exactly defined wedges use exact conjugation g·J01·g⁻¹ of affine matrices.
pub fn wedge_boost_generator(w: &Wedge, g: &Arc<LieAlgebra>) -> Result<BoostGenerator, SpacetimeError> {
    check_poincare4(g)?;
    let j01 = lorentz_generator_matrix(4, 0, 1);
    match &w.def {
        Definition::Exact(el) => {
            let conj = el.affine().mul(&j01)?.mul(&el.inverse().affine())?;
            let basis = poincare_basis_matrices();
            let mut a = RationalMatrix::zeros(25, basis.len());
            for (c, m) in basis.iter().enumerate() {
                for r in 0..25 {
                    a.set(r, c, m.get(r / 5, r % 5).clone());
                }
            }
            let b: Vec<BigRational> = (0..25).map(|r| conj.get(r / 5, r % 5).clone()).collect();
            let coeffs = a
                .solve(&b)?
                .ok_or_else(|| SpacetimeError::NotLorentz("conjugated generator left the Poincaré algebra".into()))?;
            Ok(BoostGenerator {
                element: LieElement::new(g, coeffs)?,
                exact: true,
                warning: None,
            })
        }
        Definition::Numeric(el) => {
            let j = Matrix5::from_fn(|r, c| j01.get(r, c).to_f64().expect("finite"));
            let conj = el.affine() * j * el.inverse().affine();
            // J_{μν} is the only basis element touching entry (μ, ν), where it holds η_νν
            let mut coeffs = Vec::with_capacity(10);
            for mu in 0..4 {
                for nu in mu + 1..4 {
                    coeffs.push(conj[(mu, nu)] * metric(nu) as f64);
                }
            }
            for mu in 0..4 {
                coeffs.push(conj[(mu, 4)]);
            }
            let coeffs = coeffs
                .into_iter()
                .map(|x| BigRational::from_float(x).unwrap_or_else(BigRational::zero))
                .collect();
            Ok(BoostGenerator {
                element: LieElement::new(g, coeffs)?,
                exact: false,
                warning: Some("defining element is not exact; generator computed in double precision".into()),
            })
        }
    }
}

/// Λ_{W′}(t) = Λ_W(−t), and Λ_{W′}(t)Λ_W(t) = 1.
#[derive(Clone, Debug, Serialize)]
pub struct ComplementCheck {
    /// Checked as polynomial identities in cosh 2πt, sinh 2πt.
    pub symbolic: bool,
    pub reversed_boost: bool,
    pub product_identity: bool,
    pub involution: bool,
    /// Largest deviation over the sampled t.
    pub sampled_defect: f64,
    pub samples: Vec<f64>,
}

impl ComplementCheck {
    pub fn holds(&self) -> bool {
        self.reversed_boost && self.product_identity && self.involution
    }
}

pub const COMPLEMENT_SAMPLES: [f64; 5] = [-0.75, -0.1, 0.0, 0.3, 1.0];

pub fn check_complement(w: &Wedge) -> ComplementCheck {
    let wc = w.complement();
    let involution = wc.complement().same_region(w);
    let sampled_defect = COMPLEMENT_SAMPLES
        .iter()
        .map(|&t| {
            let a = wedge_boost(&wc, t);
            let b = wedge_boost(w, -t);
            let scale = a.lorentz.abs().max().max(1.0);
            let prod = a.compose(&wedge_boost(w, t));
            (a.distance(&b) / scale).max(prod.distance(&NumericPoincare::identity()) / (scale * scale))
        })
        .fold(0.0, f64::max);
    match (w.exact(), wc.exact()) {
        (Some(g), Some(gc)) => {
            let lw = symbolic_wedge_boost(g);
            let lwc = symbolic_wedge_boost(gc);
            ComplementCheck {
                symbolic: true,
                reversed_boost: lwc == lw.reversed(),
                product_identity: lwc.compose(&lw).is_identity(),
                involution,
                sampled_defect,
                samples: COMPLEMENT_SAMPLES.to_vec(),
            }
        }
        _ => ComplementCheck {
            symbolic: false,
            reversed_boost: sampled_defect <= NUMERIC_TOLERANCE,
            product_identity: sampled_defect <= NUMERIC_TOLERANCE,
            involution,
            sampled_defect,
            samples: COMPLEMENT_SAMPLES.to_vec(),
        },
    }
}

/// The three coordinate wedges {|x₀| < x_k}.
pub fn coordinate_family() -> Vec<Wedge> {
    (1..4).map(Wedge::coordinate).collect()
}

/// Coordinate wedges followed by their translates by the unit time vector.
pub fn six_wedge_family() -> Vec<Wedge> {
    let mut out = coordinate_family();
    let e0 = [rat(1), rat(0), rat(0), rat(0)];
    out.extend(coordinate_family().iter().map(|w| w.translated(e0.clone())));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BoostGenerationReport {
    pub wedges: usize,
    /// Generators divided by 2π.
    pub generators: Vec<String>,
    pub closure_dim: usize,
    pub algebra_dim: usize,
    pub closure_basis: Vec<String>,
    pub success: bool,
}

/// Lie subalgebra of `poincare4` generated by the boost generators of `wedges`.
pub fn boost_generation(wedges: &[Wedge], g: &Arc<LieAlgebra>) -> Result<BoostGenerationReport, SpacetimeError> {
    let gens = wedges
        .iter()
        .map(|w| wedge_boost_generator(w, g).map(|b| b.element))
        .collect::<Result<Vec<_>, _>>()?;
    let closure = generated_subalgebra(g, &gens)?;
    Ok(BoostGenerationReport {
        wedges: wedges.len(),
        generators: gens.iter().map(|x| x.to_string()).collect(),
        closure_dim: closure.dim(),
        algebra_dim: g.dim(),
        closure_basis: closure.basis().iter().map(|x| x.to_string()).collect(),
        success: closure.dim() == g.dim(),
    })
}

/// Sampled points of W pushed out of W by some Λ_W(t), as (failures, trials).
pub fn sampled_boost_invariance<R: Rng>(w: &Wedge, ts: &[f64], n: usize, rng: &mut R) -> (usize, usize) {
    let pts = w.sample_interior(n, rng);
    let mut failures = 0;
    for &t in ts {
        let b = wedge_boost(w, t);
        failures += pts.iter().filter(|x| !w.contains(&b.apply(x))).count();
    }
    (failures, pts.len() * ts.len())
}

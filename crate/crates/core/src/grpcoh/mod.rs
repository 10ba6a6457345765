//! Cohomology of finite groups with trivially acted-on coefficients.
//!
//! Coefficients are additive. Cochains are not assumed normalized. The
//! coboundary is
//!
//! δf(p₁,…,pₙ₊₁) = f(p₂,…,pₙ₊₁) + Σᵢ (−1)ⁱ f(p₁,…,pᵢpᵢ₊₁,…,pₙ₊₁) + (−1)ⁿ⁺¹ f(p₁,…,pₙ),
//!
//! so δ₀ = 0 and δ₁f(p,q) = f(q) − f(pq) + f(p). Only degrees up to 2 are
//! supported.

mod coeff;
mod cochain;
mod cohomology;
mod group;

use std::sync::Arc;

use thiserror::Error;

pub use coeff::AbelianCoefficients;
pub use cochain::{
    coefficient_group, index_of, tuple_of, Cochain, CochainEntry, CochainJson, CochainValue, GroupSpec,
};
pub use cohomology::{
    coboundary_preimage, cocycle_space, cohomology_group, enumerate_cochains, enumerate_cocycles, hom_group, nth_cochain, CocycleSpace,
    CohomologyGroup, CohomologyOptions, CohomologySummary, ENUMERATION_LIMIT,
};
pub use group::{FiniteGroup, GroupHom, GroupJson};

pub use crate::ext::construct_splitting;
use crate::exactmat::MatrixError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("map is not a homomorphism on the pair ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("unknown group {0:?}")]
    Unknown(String),
    #[error("invalid coefficients: {0}")]
    Coefficients(String),
    #[error("incompatible arguments: {0}")]
    Mismatch(String),
    #[error("degree {0} is not supported")]
    UnsupportedDegree(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("size limit exceeded: {what} exceeds the bound {limit}")]
    SizeLimit { what: String, limit: u128 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Pullback of a cochain along σ: E → P.
#[derive(Clone, Debug)]
pub struct Inflation {
    pub cochain: Cochain,
    /// Set when σ is not surjective; the pullback is still computed.
    pub warning: Option<String>,
}

pub fn inflation(sigma: &GroupHom, f: &Cochain) -> Result<Inflation, GroupError> {
    if sigma.target() != f.group() {
        return Err(GroupError::Mismatch("cochain is not defined on the target of the map".into()));
    }
    let e: &Arc<FiniteGroup> = sigma.source();
    let cochain = Cochain::from_fn(e, f.coefficients(), f.degree(), |args| {
        let img: Vec<usize> = args.iter().map(|&g| sigma.apply(g)).collect();
        f.value(&img).to_vec()
    });
    let warning = (!sigma.is_surjective()).then(|| "map is not surjective; inflation of a cocycle class may lose information".to_string());
    Ok(Inflation { cochain, warning })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inflation_basics() {
        let z4 = FiniteGroup::builtin("z4").unwrap();
        let z2 = FiniteGroup::builtin("z2").unwrap();
        let a = AbelianCoefficients::cyclic(2);
        let sigma = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let mut w = Cochain::zero(&z2, &a, 2);
        w.set(&[1, 1], &[1]);
        let inf = inflation(&sigma, &w).unwrap();
        assert!(inf.warning.is_none());
        assert!(inf.cochain.coboundary().unwrap().is_zero());
        // the pullback becomes a coboundary on Z4: some 1-cochain hits it
        let hits = enumerate_cochains(&z4, &a, 1)
            .unwrap()
            .into_iter()
            .filter(|phi| phi.coboundary().unwrap() == inf.cochain)
            .count();
        assert!(hits > 0);
        let id = GroupHom::identity_map(&z2);
        assert_eq!(inflation(&id, &w).unwrap().cochain, w);
        let zero = Cochain::zero(&z2, &a, 2);
        assert!(inflation(&sigma, &zero).unwrap().cochain.is_zero());
        let trivial = GroupHom::new(&z4, &z2, vec![0; 4]).unwrap();
        assert!(inflation(&trivial, &w).unwrap().warning.is_some());
    }
}

use std::sync::Arc;

use serde::Serialize;

use super::{build_extension, CentralExtensionTable, ExtError};
use crate::grpcoh::{
    coboundary_preimage, cohomology_group, inflation, AbelianCoefficients, Cochain, FiniteGroup, GroupHom,
};

/// U(g) = s(σ(g))·i(φ(g)) with s the canonical section of `ext`.
///
/// Requires δφ to equal the inflation of the cocycle of `ext` along σ; the
/// result is checked to be a homomorphism E → G lifting σ.
pub fn construct_splitting(
    sigma: &GroupHom,
    ext: &CentralExtensionTable,
    phi: &Cochain,
) -> Result<GroupHom, ExtError> {
    let e = sigma.source();
    if sigma.target() != ext.base() || phi.group() != e || phi.coefficients() != ext.kernel() || phi.degree() != 1 {
        return Err(ExtError::Mismatch);
    }
    let inflated = inflation(sigma, ext.cocycle())?.cochain;
    let d = phi.coboundary()?;
    let n = e.order();
    if let Some(i) = (0..d.entries()).find(|&i| d.value_at(i) != inflated.value_at(i)) {
        return Err(ExtError::SplittingDatum(i / n, i % n));
    }
    let zero = ext.kernel().zero();
    let g = ext.carrier();
    let table = (0..n)
        .map(|x| g.mul(ext.element(&zero, sigma.apply(x)), ext.embed(phi.value(&[x]))))
        .collect();
    let u = GroupHom::new(e, g, table).map_err(|err| ExtError::Invalid(format!("lift is not a homomorphism: {err}")))?;
    if (0..n).any(|x| ext.projection().apply(u.apply(x)) != sigma.apply(x)) {
        return Err(ExtError::Invalid("lift does not cover σ".into()));
    }
    Ok(u)
}

/// Image of one H²(P,A) class: the homomorphism S → A obtained by restricting
/// a splitting of the inflated extension to S = ker σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassImage {
    pub class: Vec<u64>,
    /// Encoded A-values on the elements of S, in increasing order of E-index.
    pub homomorphism: Vec<u64>,
    pub h1_class: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub kernel_elements: Vec<usize>,
    pub h1_order: String,
    pub h2_order: String,
    pub h1_invariant_factors: Vec<u64>,
    pub h2_invariant_factors: Vec<u64>,
    pub applicable: bool,
    pub reason: Option<String>,
    pub mapping: Vec<ClassImage>,
    pub bijective: bool,
}

pub fn h1_h2_correspondence_check(
    sigma: &GroupHom,
    coeffs: &AbelianCoefficients,
) -> Result<CorrespondenceReport, ExtError> {
    let p = sigma.target();
    if !sigma.is_surjective() {
        return Err(ExtError::Invalid("σ is not surjective".into()));
    }
    let kernel_elements = sigma.kernel();
    let e = sigma.source();
    if let Some(&x) = kernel_elements.iter().find(|&&x| !e.is_central(x)) {
        return Err(ExtError::Invalid(format!("kernel element {x} is not central")));
    }
    let (s, emb) = e.subgroup("ker", &kernel_elements)?;
    let s: Arc<FiniteGroup> = Arc::new(s);
    let h1 = cohomology_group(&s, coeffs, 1)?;
    let h2 = cohomology_group(p, coeffs, 2)?;

    let mut mapping = Vec::new();
    let mut reason = None;
    for class in h2.classes() {
        let omega = h2.representative(&class)?;
        let ext = build_extension(&omega)?;
        let inflated = inflation(sigma, &omega)?.cochain;
        let Some(phi) = coboundary_preimage(&inflated)? else {
            reason = Some(format!(
                "class {class:?} does not split after inflation; the covering is not universal for these coefficients"
            ));
            break;
        };
        let u = construct_splitting(sigma, &ext, &phi)?;
        let values: Vec<Vec<u64>> = emb
            .iter()
            .map(|&x| ext.unembed(u.apply(x)).expect("kernel of σ lands in A"))
            .collect();
        let psi = Cochain::from_fn(&s, coeffs, 1, |t| values[t[0]].clone());
        let h1_class = h1.class_of(&psi)?;
        mapping.push(ClassImage {
            class,
            homomorphism: psi.encoded(),
            h1_class,
        });
    }
    let applicable = reason.is_none();
    let bijective = applicable && h1.order() == h2.order() && {
        let mut images: Vec<&Vec<u64>> = mapping.iter().map(|m| &m.h1_class).collect();
        images.sort();
        images.dedup();
        images.len() == mapping.len()
    };
    if !applicable {
        mapping.clear();
    }
    Ok(CorrespondenceReport {
        kernel_elements,
        h1_order: h1.order().to_string(),
        h2_order: h2.order().to_string(),
        h1_invariant_factors: h1.invariant_factors(),
        h2_invariant_factors: h2.invariant_factors(),
        applicable,
        reason,
        mapping,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_over_z2() {
        let z4 = FiniteGroup::builtin("z4").unwrap();
        let z2 = FiniteGroup::builtin("z2").unwrap();
        let a = AbelianCoefficients::cyclic(2);
        let sigma = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let r = h1_h2_correspondence_check(&sigma, &a).unwrap();
        assert_eq!((r.h1_order.as_str(), r.h2_order.as_str()), ("2", "2"));
        assert!(r.applicable && r.bijective);
        assert_eq!(r.mapping.len(), 2);
    }

    #[test]
    fn trivial_covering() {
        let a = AbelianCoefficients::cyclic(2);
        for (name, applicable) in [("z3", true), ("z2", false)] {
            let g = FiniteGroup::builtin(name).unwrap();
            let r = h1_h2_correspondence_check(&GroupHom::identity_map(&g), &a).unwrap();
            assert_eq!(r.h1_order, "1");
            assert_eq!(r.applicable, applicable, "{name}");
        }
        let z2 = FiniteGroup::builtin("z2").unwrap();
        let r = h1_h2_correspondence_check(&GroupHom::identity_map(&z2), &AbelianCoefficients::cyclic(3)).unwrap();
        assert_eq!((r.h1_order.as_str(), r.h2_order.as_str()), ("1", "1"));
        assert!(r.applicable);
    }

    #[test]
    fn splitting_of_split_extension() {
        let z2 = FiniteGroup::builtin("z2").unwrap();
        let a = AbelianCoefficients::cyclic(2);
        let ext = build_extension(&Cochain::zero(&z2, &a, 2)).unwrap();
        let id = GroupHom::identity_map(&z2);
        let u = construct_splitting(&id, &ext, &Cochain::zero(&z2, &a, 1)).unwrap();
        assert_eq!(u.apply(0), ext.carrier().identity());
        // a homomorphism P → A twists the lift but keeps it valid
        let mut hom = Cochain::zero(&z2, &a, 1);
        hom.set(&[1], &[1]);
        assert!(construct_splitting(&id, &ext, &hom).is_ok());
        let mut bad = Cochain::zero(&z2, &a, 1);
        bad.set(&[0], &[1]);
        assert!(matches!(construct_splitting(&id, &ext, &bad), Err(ExtError::SplittingDatum(0, 0))));
    }
}

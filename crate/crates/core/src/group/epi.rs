//! Peripheral-structure-preserving maps and their finite-quotient
//! certificates.
//!
//! Certificates are scoped honestly: they witness that every relator image
//! dies under every representation into the listed finite quotients, that
//! meridian and longitude map as claimed there and at the Alexander level,
//! and that hom-counts are consistent with surjectivity. They never claim
//! a group-level proof; knot groups have no practical word-problem oracle
//! at this level of machinery.

use super::alexander::presentation_alexander;
use super::{alexander_class, count_homs, enumerate_homs};
use super::{FiniteGroup, GroupDesc, Presentation, Word, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};
use crate::poly::Laurent;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A claimed map of knot groups given on Wirtinger generators, with the
/// peripheral exponents it asserts. A covering-knot certificate requires
/// p = 0, q = 0, r = 1.
#[derive(Clone, Debug)]
pub struct PeripheralMap {
    /// source generator -> word in target generators
    pub images: Vec<Word>,
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl PeripheralMap {
    pub fn map_word(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub display: String,
    pub min_exp: i64,
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn of(p: &Laurent) -> Self {
        PolyJson {
            display: p.to_string(),
            min_exp: p.min_exp(),
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientReport {
    pub group: String,
    pub homs_src: usize,
    pub homs_dst: usize,
    /// one bit per source relator: its image dies under every
    /// representation of the target
    pub relator_bits: Vec<bool>,
    pub relators_ok: bool,
    pub longitude_ok: bool,
    pub pullback_injective: bool,
    pub hom_count_monotone: bool,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlexanderComparison {
    pub poly_src: PolyJson,
    pub poly_dst: PolyJson,
    pub equal_up_to_units: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Exponents {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpimorphismCertificate {
    pub schema: String,
    pub source: String,
    pub target: String,
    pub phi: BTreeMap<String, String>,
    pub exponents: Exponents,
    /// the meridian image freely reduces to the target meridian itself
    pub meridian_exact: bool,
    /// the longitude image freely equals the target longitude as a word
    pub longitude_free_equal: bool,
    /// the longitude image matches at the Alexander level
    pub longitude_class_zero: bool,
    pub quotients: Vec<QuotientReport>,
    pub alexander: AlexanderComparison,
    pub scope: String,
    pub verified: bool,
}

/// Does the word freely reduce to a conjugate u·x^1·u⁻¹ of the generator?
fn conjugate_of_generator(w: &Word, gen: usize) -> bool {
    let mut letters = w.expand();
    while letters.len() >= 3 {
        let first = letters[0];
        let last = letters[letters.len() - 1];
        if first.0 == last.0 && first.1 == -last.1 {
            letters.remove(0);
            letters.pop();
        } else {
            return false;
        }
    }
    letters == vec![(gen, 1)]
}

/// Verify a peripheral map in every requested finite quotient plus the
/// abelian/Alexander level, and assemble the certificate.
pub fn verify_epimorphism(
    src: &Presentation,
    dst: &Presentation,
    phi: &PeripheralMap,
    quotients: &[GroupDesc],
    source_name: &str,
    target_name: &str,
) -> Result<EpimorphismCertificate> {
    if phi.images.len() != src.generator_count() {
        let missing = phi.images.len();
        return Err(Error::MapUndefined(format!("x{missing}")));
    }
    if phi.p != 0 || phi.q != 0 || phi.r != 1 {
        return Err(Error::BadMeridianImage(format!(
            "claimed exponents p={} q={} r={}, need p=0 q=0 r=1",
            phi.p, phi.q, phi.r
        )));
    }
    let m_img = phi.map_word(&Word::generator(src.meridian));
    if !conjugate_of_generator(&m_img, dst.meridian) {
        return Err(Error::BadMeridianImage(m_img.to_string()));
    }
    let meridian_exact = m_img == Word::generator(dst.meridian);

    let l_img = phi.map_word(&src.longitude);
    let longitude_free_equal = l_img == dst.longitude;

    // Alexander-level longitude comparison: the difference must vanish in
    // the target's module over every tested coefficient ring.
    let diff = l_img.concat(&dst.longitude.inverse());
    let longitude_class_zero = if diff.is_empty() {
        true
    } else if diff.exponent_sum() == 0 {
        alexander_class(dst, &diff)?.zero
    } else {
        false
    };

    let relator_words = src.relator_words();
    let mut reports = Vec::new();
    for &desc in quotients {
        let group = FiniteGroup::new(desc, DEFAULT_ORDER_BOUND)?;
        let homs_dst = enumerate_homs(dst, &group, None)?;
        let homs_src = count_homs(src, &group, None)?;
        let mut relator_bits = vec![true; relator_words.len()];
        let mut longitude_ok = true;
        let mut pullbacks: BTreeSet<Vec<u16>> = BTreeSet::new();
        let phi_images_expanded: Vec<Word> = phi.images.clone();
        for rho in &homs_dst {
            let pulled: Vec<u16> = phi_images_expanded
                .iter()
                .map(|w| group.eval_word(w, rho))
                .collect();
            for (j, r) in relator_words.iter().enumerate() {
                if group.eval_word(r, &pulled) != group.identity() {
                    relator_bits[j] = false;
                }
            }
            if group.eval_word(&l_img, rho) != group.eval_word(&dst.longitude, rho) {
                longitude_ok = false;
            }
            pullbacks.insert(pulled);
        }
        let relators_ok = relator_bits.iter().all(|&b| b);
        let pullback_injective = pullbacks.len() == homs_dst.len();
        let hom_count_monotone = homs_src >= homs_dst.len();
        let verified = relators_ok && longitude_ok && pullback_injective && hom_count_monotone;
        reports.push(QuotientReport {
            group: desc.to_string(),
            homs_src,
            homs_dst: homs_dst.len(),
            relator_bits,
            relators_ok,
            longitude_ok,
            pullback_injective,
            hom_count_monotone,
            verified,
        });
    }

    let poly_src = presentation_alexander(src)?;
    let poly_dst = presentation_alexander(dst)?;
    let equal = poly_src.eq_up_to_units(&poly_dst);

    let phi_map: BTreeMap<String, String> = phi
        .images
        .iter()
        .enumerate()
        .map(|(g, w)| (src.generator_name(g), w.to_string()))
        .collect();

    let verified =
        reports.iter().all(|r| r.verified) && equal && longitude_class_zero && !reports.is_empty();

    Ok(EpimorphismCertificate {
        schema: "staplekit.epi.v1".into(),
        source: source_name.into(),
        target: target_name.into(),
        phi: phi_map,
        exponents: Exponents {
            p: phi.p,
            q: phi.q,
            r: phi.r,
        },
        meridian_exact,
        longitude_free_equal,
        longitude_class_zero,
        quotients: reports,
        alexander: AlexanderComparison {
            poly_src: PolyJson::of(&poly_src),
            poly_dst: PolyJson::of(&poly_dst),
            equal_up_to_units: equal,
        },
        scope: "verified in the listed finite quotients and at the abelian/Alexander level; \
                not a group-level proof"
            .into(),
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::super::wirtinger;
    use super::*;
    use crate::diagram::Diagram;
    use crate::fixtures;

    fn identity_map(p: &Presentation) -> PeripheralMap {
        PeripheralMap {
            images: (0..p.generator_count()).map(Word::generator).collect(),
            p: 0,
            q: 0,
            r: 1,
        }
    }

    #[test]
    fn identity_certificate_passes() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        let phi = identity_map(&p);
        let qs: Vec<GroupDesc> = vec!["S3".parse().unwrap(), "D5".parse().unwrap()];
        let cert = verify_epimorphism(&p, &p, &phi, &qs, "trefoil", "trefoil").unwrap();
        assert!(cert.verified);
        assert!(cert.meridian_exact);
        assert!(cert.longitude_free_equal);
        for q in &cert.quotients {
            assert_eq!(q.homs_src, q.homs_dst);
        }
    }

    #[test]
    fn meridian_squared_rejected() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        let mut phi = identity_map(&p);
        phi.images[p.meridian] = Word::from_letters(vec![(p.meridian, 2)]);
        let qs: Vec<GroupDesc> = vec!["S3".parse().unwrap()];
        let e = verify_epimorphism(&p, &p, &phi, &qs, "a", "b").unwrap_err();
        assert!(matches!(e, Error::BadMeridianImage(_)));
    }

    #[test]
    fn wrong_exponents_rejected() {
        let d = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        let mut phi = identity_map(&p);
        phi.r = 2;
        let e = verify_epimorphism(&p, &p, &phi, &[], "a", "b").unwrap_err();
        assert!(matches!(e, Error::BadMeridianImage(_)));
    }
}

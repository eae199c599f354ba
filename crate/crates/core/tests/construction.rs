//! End-to-end checks of the staple pipeline against the small fixture knots.

use staplekit::construction::{
    amplify, build_cover_knot, delete_staples, insert_staples, twist_surgery, untwisted_double,
    verify_fixture, CoverOptions, StapleFixture,
};
use staplekit::diagram::{simplify, Diagram, SimplifyOptions};
use staplekit::fixtures;
use staplekit::group::{alexander_polynomial, GroupDesc};
use staplekit::poly::Laurent;

fn trefoil() -> Diagram {
    Diagram::parse_pd(fixtures::TREFOIL).unwrap()
}

fn figure8() -> Diagram {
    Diagram::parse_pd(fixtures::FIGURE_EIGHT).unwrap()
}

#[test]
fn staple_insertion_counts() {
    let k = trefoil();
    let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
    assert!(!s.trivial);
    assert_eq!(s.diagram.component_count(), 4);
    assert_eq!(s.diagram.crossing_count(), 3 + 3 * 8);
    assert_eq!(s.placements.len(), 3);
}

#[test]
fn staple_insertion_roundtrip_exact() {
    for text in [
        fixtures::TREFOIL,
        fixtures::FIGURE_EIGHT,
        fixtures::FIVE_TWO,
    ] {
        let k = Diagram::parse_pd(text).unwrap();
        let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
        let (bare, _) = delete_staples(&s.diagram).unwrap();
        assert!(bare.same_diagram(&k), "round trip failed for {}", k.name);
    }
}

#[test]
fn unknot_input_flagged_unchanged() {
    let u = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
    let s = insert_staples(&u, &StapleFixture::default_fixture(), false).unwrap();
    assert!(s.trivial);
    assert!(s.placements.is_empty());
    assert!(s.diagram.same_diagram(&u));
}

#[test]
fn staples_are_unlinked_from_knot() {
    let k = trefoil();
    let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
    for gamma in 1..4 {
        assert_eq!(s.diagram.linking_number(0, gamma).unwrap(), 0);
    }
}

#[test]
fn deleting_knot_leaves_trivial_staples() {
    let k = trefoil();
    let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
    let no_knot = s.diagram.delete_component(0).unwrap();
    assert_eq!(no_knot.component_count(), 3);
    let out = simplify(&no_knot, &SimplifyOptions::default());
    assert_eq!(out.diagram.crossing_count(), 0, "staples form an unlink");
}

#[test]
fn default_fixture_passes_gate() {
    let rep = verify_fixture(&StapleFixture::default_fixture(), &trefoil()).unwrap();
    assert!(rep.unknotted, "staple alone must be unknotted");
    assert!(
        rep.linking_zero,
        "lk(staple, knot) = 0, got {}",
        rep.linking_number
    );
    assert_eq!(
        rep.class_zero,
        Some(true),
        "word {} must die in the module",
        rep.word
    );
    assert!(rep.passed);
}

#[test]
fn mutant_fixtures_fail_gate() {
    let host = trefoil();
    let extra = verify_fixture(&StapleFixture::extra_pass(), &host).unwrap();
    assert!(!extra.linking_zero, "extra pass-through must break lk = 0");
    assert!(!extra.passed);

    let meridian = verify_fixture(&StapleFixture::meridian_circle(), &host).unwrap();
    assert!(!meridian.linking_zero);
    assert!(
        meridian.class_error.is_some(),
        "meridian word has exponent sum ±1"
    );
    assert!(!meridian.passed);

    let hook = verify_fixture(&StapleFixture::hook(), &host).unwrap();
    assert!(hook.linking_zero, "the hook links zero");
    assert_eq!(hook.class_zero, Some(false), "but survives in the module");
    assert!(!hook.passed);
}

#[test]
fn twist_q0_is_deletion() {
    let k = trefoil();
    let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
    let deleted = twist_surgery(&s.diagram, &s.placements[0], 0).unwrap();
    assert_eq!(deleted.component_count(), 3);
    assert_eq!(deleted.crossing_count(), 3 + 2 * 8);
}

#[test]
fn twist_q1_crossing_count_and_delta() {
    let k = trefoil();
    let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
    let mut work = twist_surgery(&s.diagram, &s.placements[0], 1).unwrap();
    // one staple twisted (12 new crossings), two staples still present
    assert_eq!(work.crossing_count(), 3 + 12 + 2 * 8);
    for p in &s.placements[1..] {
        work = twist_surgery(&work, p, 0).unwrap();
    }
    assert_eq!(work.component_count(), 1);
    assert_eq!(work.crossing_count(), 3 + 12);
    let delta = alexander_polynomial(&work).unwrap();
    assert_eq!(delta, Laurent::from_coeffs(0, vec![1, -1, 1]));
}

#[test]
fn cover_all_zero_is_identity() {
    let k = trefoil();
    let opts = CoverOptions {
        quotients: vec![GroupDesc::Symmetric(3)],
        verify_stages: true,
        with_ribbon: false,
        ..CoverOptions::default()
    };
    let (cover, record) =
        build_cover_knot(&k, &StapleFixture::default_fixture(), &[0, 0, 0], &opts).unwrap();
    assert!(cover.same_diagram(&k));
    assert!(record.stages.is_empty());
    assert!(record.verified, "identity certificate must pass");
    assert!(record.certificate.meridian_exact);
}

#[test]
fn cover_trefoil_all_ones() {
    let k = trefoil();
    let opts = CoverOptions {
        quotients: vec![GroupDesc::Symmetric(3), GroupDesc::Dihedral(5)],
        verify_stages: true,
        with_ribbon: false,
        ..CoverOptions::default()
    };
    let (cover, record) =
        build_cover_knot(&k, &StapleFixture::default_fixture(), &[1, 1, 1], &opts).unwrap();
    assert_eq!(cover.crossing_count(), 39, "3 + 3*12 crossings");
    assert!(
        record.chain_consistent,
        "stage maps must compose to the total map"
    );
    assert!(record.certificate.alexander.equal_up_to_units);
    assert!(record.certificate.meridian_exact);
    assert!(record.certificate.longitude_class_zero);
    for q in &record.certificate.quotients {
        assert!(q.relators_ok, "relators must die in {}", q.group);
        assert!(q.longitude_ok, "longitude must match in {}", q.group);
        assert!(q.hom_count_monotone);
    }
    assert!(record.verified);
}

#[test]
fn cover_mixed_q_figure8() {
    let k = figure8();
    let opts = CoverOptions {
        quotients: vec![GroupDesc::Symmetric(3)],
        verify_stages: false,
        with_ribbon: false,
        ..CoverOptions::default()
    };
    let (cover, record) =
        build_cover_knot(&k, &StapleFixture::default_fixture(), &[2, 0, 0, 0], &opts).unwrap();
    assert_eq!(cover.crossing_count(), 4 + 24);
    assert!(record.certificate.alexander.equal_up_to_units);
    assert!(record.verified);
}

#[test]
fn double_of_trefoil_has_trivial_delta() {
    let d = untwisted_double(&trefoil()).unwrap();
    assert_eq!(d.component_count(), 1);
    let delta = alexander_polynomial(&d).unwrap();
    assert!(
        delta.is_one(),
        "untwisted double must have trivial polynomial, got {delta}"
    );
}

#[test]
fn double_of_unknot_simplifies_to_unknot() {
    let u = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
    let d = untwisted_double(&u).unwrap();
    assert_eq!(d.crossing_count(), 2);
    assert!(alexander_polynomial(&d).unwrap().is_one());
    let out = simplify(&d, &SimplifyOptions::default());
    assert_eq!(out.diagram.crossing_count(), 0);
}

#[test]
fn amplify_preserves_delta() {
    let k = trefoil();
    let k0 = untwisted_double(&trefoil()).unwrap();
    let amped = amplify(&k, &k0, 2).unwrap();
    assert_eq!(
        alexander_polynomial(&amped).unwrap(),
        alexander_polynomial(&k).unwrap()
    );
}

#[test]
fn amplify_rejects_nontrivial_summand() {
    let k = trefoil();
    let err = amplify(&k, &trefoil(), 1).unwrap_err();
    assert!(err.to_string().contains("nontrivial"));
}

#[test]
fn hopf_minus_component_is_unknot() {
    let hopf = Diagram::parse_pd(fixtures::HOPF).unwrap();
    assert_eq!(hopf.linking_number(0, 1).unwrap(), 1);
    let rest = hopf.delete_component(1).unwrap();
    assert_eq!(rest.component_count(), 1);
    assert_eq!(rest.crossing_count(), 0);
}

#[test]
fn figure_eight_writhe_is_zero() {
    let d = figure8();
    assert_eq!(d.writhe(0).unwrap(), 0);
}

#[test]
fn amplify_with_unknot_summands_is_identity() {
    let k = trefoil();
    let u = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
    let amped = amplify(&k, &u, 3).unwrap();
    assert!(amped.same_diagram(&k));

    let amped = amplify(&u, &untwisted_double(&trefoil()).unwrap(), 3).unwrap();
    assert!(alexander_polynomial(&amped).unwrap().is_one());
}

#[test]
fn ribbon_empty_when_no_twists() {
    let k = trefoil();
    let opts = CoverOptions {
        quotients: vec![GroupDesc::Symmetric(3)],
        verify_stages: false,
        with_ribbon: true,
        ..CoverOptions::default()
    };
    let (_, record) =
        build_cover_knot(&k, &StapleFixture::default_fixture(), &[0, 0, 0], &opts).unwrap();
    let ribbon = record.ribbon.unwrap();
    assert!(ribbon.bands.is_empty(), "no twists, no fusions");
    assert_eq!(ribbon.residual_circles, 0);
    assert!(ribbon.verified);
}

#[test]
fn stale_placement_rejected() {
    let k = trefoil();
    let s = insert_staples(&k, &StapleFixture::default_fixture(), true).unwrap();
    let once = twist_surgery(&s.diagram, &s.placements[0], 1).unwrap();
    let err = twist_surgery(&once, &s.placements[0], 1).unwrap_err();
    assert!(err.to_string().contains("stale"), "{err}");
}

#[test]
fn chain_record_counts_nonzero_twists() {
    let k = figure8();
    let opts = CoverOptions {
        quotients: vec![GroupDesc::Symmetric(3)],
        verify_stages: false,
        with_ribbon: false,
        ..CoverOptions::default()
    };
    let (_, record) =
        build_cover_knot(&k, &StapleFixture::default_fixture(), &[2, 0, -1, 0], &opts).unwrap();
    assert_eq!(record.stages.len(), 2, "one stage per nonzero q");
    assert_eq!(record.stages[0].q, 2);
    assert_eq!(record.stages[1].q, -1);
    assert!(record.verified);
}

//! Cross-module invariants from the construction's contract.

use staplekit::construction::{insert_staple_at, insert_staples, twist_surgery, StapleFixture};
use staplekit::diagram::{simplify, Diagram, SimplifyOptions};
use staplekit::fixtures;
use staplekit::group::alexander_polynomial;

fn trefoil() -> Diagram {
    Diagram::parse_pd(fixtures::TREFOIL).unwrap()
}

#[test]
fn opposite_twists_cancel_to_the_untwisted_result() {
    // Stack two staples at the same crossing; twisting one by q and the
    // other by -q leaves adjacent inverse full twists that R-moves cancel.
    let k = trefoil();
    let fixture = StapleFixture::default_fixture();
    let mut stacked = k.clone();
    let p1 = insert_staple_at(&mut stacked, &fixture, 0).unwrap();
    let p2 = insert_staple_at(&mut stacked, &fixture, 0).unwrap();
    let once = twist_surgery(&stacked, &p1, 1).unwrap();
    let both = twist_surgery(&once, &p2, -1).unwrap();
    assert_eq!(both.component_count(), 1);
    assert_eq!(both.crossing_count(), 3 + 24);
    let reduced = simplify(&both, &SimplifyOptions::default());
    assert!(
        reduced.diagram.same_diagram(&k),
        "q then -q must simplify to the q = 0 diagram, got {} crossings",
        reduced.diagram.crossing_count()
    );
}

#[test]
fn surgery_order_does_not_matter() {
    let k = trefoil();
    let fixture = StapleFixture::default_fixture();
    let q = [1i64, -1, 2];
    let build = |order: &[usize]| {
        let s = insert_staples(&k, &fixture, true).unwrap();
        let mut work = s.diagram;
        for &i in order {
            work = twist_surgery(&work, &s.placements[i], q[i]).unwrap();
        }
        work.canonical_code()
    };
    let forward = build(&[0, 1, 2]);
    for order in [[2, 1, 0], [1, 2, 0], [0, 2, 1]] {
        assert_eq!(build(&order), forward, "order {order:?} differs");
    }
}

#[test]
fn alexander_symmetry_on_fixtures() {
    for text in [
        fixtures::TREFOIL,
        fixtures::FIGURE_EIGHT,
        fixtures::FIVE_TWO,
    ] {
        let d = Diagram::parse_pd(text).unwrap();
        let delta = alexander_polynomial(&d).unwrap();
        assert!(
            delta.reciprocal().eq_up_to_units(&delta),
            "Δ must be symmetric for {}",
            d.name
        );
    }
}

#[test]
fn connected_sum_is_associative_on_delta() {
    let a = trefoil();
    let b = Diagram::parse_pd(fixtures::FIGURE_EIGHT).unwrap();
    let c = Diagram::parse_pd(fixtures::FIVE_TWO).unwrap();
    let arc = |d: &Diagram| d.components()[0].edges[0];
    let left = a
        .connected_sum(arc(&a), &b, arc(&b))
        .and_then(|ab| {
            let e = arc(&ab);
            ab.connected_sum(e, &c, arc(&c))
        })
        .unwrap();
    let right = {
        let bc = b.connected_sum(arc(&b), &c, arc(&c)).unwrap();
        a.connected_sum(arc(&a), &bc, arc(&bc)).unwrap()
    };
    assert_eq!(
        alexander_polynomial(&left).unwrap(),
        alexander_polynomial(&right).unwrap()
    );
    assert_eq!(left.crossing_count(), 12);
    assert_eq!(right.crossing_count(), 12);
}

#[test]
fn simplify_preserves_structure_on_stapled_link() {
    let link = insert_staples(&trefoil(), &StapleFixture::default_fixture(), true)
        .unwrap()
        .diagram;
    let reduced = simplify(
        &link,
        &SimplifyOptions {
            budget: 400,
            max_extra: 1,
        },
    );
    let d = reduced.diagram;
    assert_eq!(d.component_count(), link.component_count());
    for a in 0..d.component_count() {
        for b in a + 1..d.component_count() {
            assert_eq!(
                d.linking_number(a, b).unwrap(),
                link.linking_number(a, b).unwrap()
            );
        }
    }
}

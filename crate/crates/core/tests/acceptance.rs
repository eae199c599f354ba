//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with --nocapture to see them). Tolerances are exact: every
//! comparison is over exact integer or Laurent arithmetic.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use staplekit::construction::{
    amplify, build_cover_knot, insert_staples, twist_surgery, untwisted_double, verify_fixture,
    CoverOptions, StapleFixture,
};
use staplekit::diagram::{apply_move, available_moves, simplify, Diagram, Move, SimplifyOptions};
use staplekit::fixtures;
use staplekit::group::{
    alexander_polynomial, count_homs, enumerate_homs, wirtinger, FiniteGroup, GroupDesc,
    DEFAULT_ORDER_BOUND,
};
use staplekit::poly::Laurent;
use std::time::Instant;

fn knot(text: &str) -> Diagram {
    Diagram::parse_pd(text).unwrap()
}

fn fixture_knots() -> Vec<Diagram> {
    vec![
        knot(fixtures::TREFOIL),
        knot(fixtures::FIGURE_EIGHT),
        knot(fixtures::FIVE_TWO),
    ]
}

fn battery() -> Vec<GroupDesc> {
    ["S3", "S4", "S5", "D5", "D7"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Build the cover diagram only (no certificates).
fn cover_diagram(k: &Diagram, q: &[i64]) -> Diagram {
    let s = insert_staples(k, &StapleFixture::default_fixture(), true).unwrap();
    let mut work = s.diagram;
    for (i, p) in s.placements.iter().enumerate() {
        work = twist_surgery(&work, p, q[i]).unwrap();
    }
    work
}

#[test]
fn acceptance_alexander_preservation() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut cases = 0;
    for k in fixture_knots() {
        let m = k.crossing_count();
        let base = alexander_polynomial(&k).unwrap();
        let mut vectors: Vec<Vec<i64>> = vec![vec![0; m], vec![1; m], vec![-2; m], vec![2; m]];
        while vectors.len() < 17 {
            vectors.push((0..m).map(|_| rng.gen_range(-2..=2)).collect());
        }
        for q in vectors {
            let cover = cover_diagram(&k, &q);
            let delta = alexander_polynomial(&cover).unwrap();
            assert_eq!(delta, base, "Δ changed for {} with q = {:?}", k.name, q);
            cases += 1;
        }
    }
    assert!(cases >= 50, "need at least 50 sampled cases, ran {cases}");
    println!(
        "ACCEPTANCE alexander-preservation: PASS ({cases} cases, {:?})",
        t0.elapsed()
    );
}

#[test]
fn acceptance_epimorphism_certificates() {
    let t0 = Instant::now();
    for k in fixture_knots() {
        let q = vec![1i64; k.crossing_count()];
        let opts = CoverOptions {
            quotients: battery(),
            stage_quotients: None,
            verify_stages: false,
            with_ribbon: false,
            budget: 10_000,
            seed: 0,
            minimality_attested: true,
        };
        let (_, record) =
            build_cover_knot(&k, &StapleFixture::default_fixture(), &q, &opts).unwrap();
        let cert = &record.certificate;
        assert!(cert.meridian_exact, "{}: φ(m̃) must equal m exactly", k.name);
        assert_eq!(cert.quotients.len(), 5);
        for qr in &cert.quotients {
            assert!(qr.relators_ok, "{}: relator died in {}", k.name, qr.group);
            assert!(
                qr.longitude_ok,
                "{}: longitude mismatch in {}",
                k.name, qr.group
            );
            assert!(
                qr.hom_count_monotone,
                "{}: hom-count({}) not monotone",
                k.name, qr.group
            );
            assert!(qr.verified);
        }
        assert!(cert.alexander.equal_up_to_units);
        assert!(cert.verified, "{}: certificate must pass", k.name);

        // pullback closure in the smallest quotient: every ρ∘φ is itself a
        // hom of the cover
        let cover = Diagram::parse_pd(&record.cover_pd).unwrap();
        let pres_cover = wirtinger(&cover, 0).unwrap();
        let pres_base = wirtinger(&Diagram::parse_pd(&record.input_pd).unwrap(), 0).unwrap();
        let g = FiniteGroup::new("S3".parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap();
        let homs_src = enumerate_homs(&pres_cover, &g, None).unwrap();
        let homs_dst = enumerate_homs(&pres_base, &g, None).unwrap();
        let images: Vec<staplekit::group::Word> = (0..pres_cover.generator_count())
            .map(|i| {
                let key = format!("x{i}");
                parse_word(&cert.phi[&key])
            })
            .collect();
        for rho in &homs_dst {
            let pulled: Vec<u16> = images.iter().map(|w| g.eval_word(w, rho)).collect();
            assert!(
                homs_src.contains(&pulled),
                "{}: pullback closure failed",
                k.name
            );
        }
    }
    println!(
        "ACCEPTANCE epimorphism-certificates: PASS (3 fixtures x S3,S4,S5,D5,D7, {:?})",
        t0.elapsed()
    );
}

#[test]
fn acceptance_staple_gate() {
    let t0 = Instant::now();
    std::env::remove_var("STAPLEKIT_BUDGET");
    let rep = verify_fixture(&StapleFixture::default_fixture(), &knot(fixtures::TREFOIL)).unwrap();
    assert!(
        rep.unknotted,
        "staple must simplify to a zero-crossing unknot"
    );
    assert_eq!(rep.linking_number, 0);
    assert_eq!(
        rep.class_zero,
        Some(true),
        "class must vanish over Q and F_p"
    );
    assert_eq!(rep.class_rings.len(), 5);
    assert!(rep.class_rings.iter().all(|(_, z)| *z));
    assert!(rep.passed);
    println!("ACCEPTANCE staple-gate: PASS ({:?})", t0.elapsed());
}

#[test]
fn acceptance_ribbon_certificates() {
    let t0 = Instant::now();
    let cases: Vec<(Diagram, Vec<i64>)> = vec![
        (knot(fixtures::TREFOIL), vec![1, 0, 0]),
        (knot(fixtures::FIGURE_EIGHT), vec![1, 1, 1, 1]),
    ];
    for (k, q) in cases {
        let opts = CoverOptions {
            quotients: Vec::new(),
            stage_quotients: None,
            verify_stages: false,
            with_ribbon: true,
            budget: 10_000,
            seed: 0,
            minimality_attested: true,
        };
        let (_, record) =
            build_cover_knot(&k, &StapleFixture::default_fixture(), &q, &opts).unwrap();
        let ribbon = record.ribbon.unwrap();
        let nonzero = q.iter().filter(|&&v| v != 0).count();
        assert_eq!(
            ribbon.bands.len(),
            2 * nonzero,
            "{}: two fusions per twist",
            k.name
        );
        assert_eq!(ribbon.residual_circles, 2 * nonzero);
        assert!(
            ribbon.circles_trivial,
            "{}: circles must shrink to points",
            k.name
        );
        assert!(
            ribbon.linking_all_zero,
            "{}: circles must be unlinked",
            k.name
        );
        assert!(
            ribbon.knot_delta_matches,
            "{}: knot component must keep Δ",
            k.name
        );
        assert!(ribbon.verified);
    }
    println!("ACCEPTANCE ribbon-certificates: PASS ({:?})", t0.elapsed());
}

// --- independent oracle: gcd of ALL maximal minors, cofactor expansion ---

fn oracle_fox_row(n: usize, w: &staplekit::group::Word) -> Vec<Laurent> {
    // recursive free-derivative, independent of the library's iterative one
    fn rec(n: usize, letters: &[(usize, i32)], row: &mut Vec<Laurent>, prefix: i64) -> i64 {
        match letters.split_first() {
            None => prefix,
            Some((&(g, e), rest)) => {
                let mut p = prefix;
                if e > 0 {
                    for _ in 0..e {
                        row[g] = &row[g] + &Laurent::monomial(1, p);
                        p += 1;
                    }
                } else {
                    for _ in 0..(-e) {
                        p -= 1;
                        row[g] = &row[g] - &Laurent::monomial(1, p);
                    }
                }
                rec(n, rest, row, p)
            }
        }
    }
    let mut row = vec![Laurent::zero(); n];
    rec(n, w.letters(), &mut row, 0);
    row
}

fn oracle_det(m: &[Vec<Laurent>]) -> Laurent {
    let n = m.len();
    if n == 0 {
        return Laurent::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Laurent::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Laurent>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * &oracle_det(&minor);
        det = if j % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}

fn oracle_alexander(d: &Diagram) -> Laurent {
    let pres = wirtinger(d, 0).unwrap();
    let n = pres.generator_count();
    if pres.relations.is_empty() {
        return Laurent::one();
    }
    let rows: Vec<Vec<Laurent>> = pres
        .relator_words()
        .iter()
        .map(|w| oracle_fox_row(n, w))
        .collect();
    let mut gcd = Laurent::zero();
    for drop_row in 0..n {
        for drop_col in 0..n {
            let minor: Vec<Vec<Laurent>> = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop_row)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != drop_col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            gcd = gcd.gcd(&oracle_det(&minor));
        }
    }
    gcd.unit_normalized()
}

#[test]
fn acceptance_oracle_equivalence() {
    let t0 = Instant::now();
    let trefoil = knot(fixtures::TREFOIL);
    let fig8 = knot(fixtures::FIGURE_EIGHT);
    let five2 = knot(fixtures::FIVE_TWO);
    let mut cases: Vec<Diagram> = vec![
        knot(fixtures::UNKNOT),
        trefoil.clone(),
        fig8.clone(),
        five2.clone(),
        trefoil.connected_sum(1, &trefoil, 1).unwrap(), // 6 crossings
        trefoil.connected_sum(1, &fig8, 1).unwrap(),    // 7 crossings
        fig8.connected_sum(1, &fig8, 1).unwrap(),       // 8 crossings
    ];
    // a kinked trefoil exercises a reducible diagram
    cases.push(apply_move(
        &trefoil,
        &Move::R1Up {
            edge: 1,
            positive: false,
        },
    ));
    for d in &cases {
        assert!(d.crossing_count() <= 8);
        let fast = alexander_polynomial(d).unwrap();
        let slow = oracle_alexander(d);
        assert_eq!(fast, slow, "oracle mismatch on {}", d.name);
    }
    println!(
        "ACCEPTANCE oracle-equivalence: PASS ({} diagrams up to 8 crossings, {:?})",
        cases.len(),
        t0.elapsed()
    );
}

#[test]
fn acceptance_invariance_suite() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let groups: Vec<FiniteGroup> = ["S3", "D5"]
        .iter()
        .map(|s| FiniteGroup::new(s.parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap())
        .collect();

    for base in fixture_knots() {
        let delta0 = alexander_polynomial(&base).unwrap();
        let pres0 = wirtinger(&base, 0).unwrap();
        let homs0: Vec<usize> = groups
            .iter()
            .map(|g| count_homs(&pres0, g, None).unwrap())
            .collect();
        let writhe0 = base.writhe(0).unwrap();

        let mut d = base.clone();
        let mut expected_writhe = writhe0;
        for step in 0..200 {
            let moves = available_moves(&d, true);
            // keep the walk inside a workable size band
            let filtered: Vec<Move> = if d.crossing_count() > 24 {
                let down: Vec<Move> = moves
                    .iter()
                    .filter(|m| {
                        matches!(
                            m,
                            Move::R1Down { .. } | Move::R2Down { .. } | Move::R3 { .. }
                        )
                    })
                    .cloned()
                    .collect();
                if down.is_empty() {
                    moves
                } else {
                    down
                }
            } else {
                moves
            };
            let mv = filtered[rng.gen_range(0..filtered.len())].clone();
            match &mv {
                Move::R1Up { positive, .. } => {
                    expected_writhe += if *positive { 1 } else { -1 };
                }
                Move::R1Down { crossing } => {
                    let o = d.validate().unwrap();
                    expected_writhe -= o.signs[*crossing] as i64;
                }
                _ => {}
            }
            d = apply_move(&d, &mv);
            assert_eq!(
                d.writhe(0).unwrap(),
                expected_writhe,
                "{}: writhe off after step {step}",
                base.name
            );
            if step % 25 == 24 {
                assert_eq!(alexander_polynomial(&d).unwrap(), delta0);
            }
        }
        assert_eq!(
            alexander_polynomial(&d).unwrap(),
            delta0,
            "{}: Δ drifted",
            base.name
        );
        let pres = wirtinger(&d, 0).unwrap();
        for (g, &h0) in groups.iter().zip(&homs0) {
            assert_eq!(
                count_homs(&pres, g, None).unwrap(),
                h0,
                "{}: hom-count into {} drifted",
                base.name,
                g.desc
            );
        }
    }

    // linking numbers on a perturbed link: the stapled trefoil
    let link = insert_staples(
        &knot(fixtures::TREFOIL),
        &StapleFixture::default_fixture(),
        true,
    )
    .unwrap()
    .diagram;
    let n = link.component_count();
    let mut lk0 = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            lk0.push(link.linking_number(a, b).unwrap());
        }
    }
    let mut d = link.clone();
    for _ in 0..100 {
        let moves = available_moves(&d, d.crossing_count() <= 40);
        let mv = moves[rng.gen_range(0..moves.len())].clone();
        d = apply_move(&d, &mv);
    }
    let mut lk1 = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            lk1.push(d.linking_number(a, b).unwrap());
        }
    }
    assert_eq!(lk0, lk1, "pairwise linking numbers drifted");
    println!(
        "ACCEPTANCE invariance-suite: PASS (3 x 200 knot moves + 100 link moves, {:?})",
        t0.elapsed()
    );
}

#[test]
fn acceptance_multiplicativity() {
    let t0 = Instant::now();
    let all = vec![
        knot(fixtures::UNKNOT),
        knot(fixtures::TREFOIL),
        knot(fixtures::FIGURE_EIGHT),
        knot(fixtures::FIVE_TWO),
    ];
    for a in &all {
        for b in &all {
            let arc_a = a.components()[0].edges[0];
            let arc_b = b.components()[0].edges[0];
            let sum = a.connected_sum(arc_a, b, arc_b).unwrap();
            let lhs = alexander_polynomial(&sum).unwrap();
            let rhs = (&alexander_polynomial(a).unwrap() * &alexander_polynomial(b).unwrap())
                .unit_normalized();
            assert_eq!(lhs, rhs, "Δ({} # {}) != product", a.name, b.name);
        }
    }
    let k0 = untwisted_double(&knot(fixtures::TREFOIL)).unwrap();
    assert!(alexander_polynomial(&k0).unwrap().is_one());
    let k = knot(fixtures::TREFOIL);
    let base = alexander_polynomial(&k).unwrap();
    for n in 1..=3 {
        let amped = amplify(&k, &k0, n).unwrap();
        assert_eq!(
            alexander_polynomial(&amped).unwrap(),
            base,
            "amplify N={n} moved Δ"
        );
    }
    println!(
        "ACCEPTANCE multiplicativity: PASS (16 pairs + amplifier N=1..3, {:?})",
        t0.elapsed()
    );
}

#[test]
fn acceptance_determinism() {
    let t0 = Instant::now();
    let k = knot(fixtures::TREFOIL);
    let opts = CoverOptions {
        quotients: vec!["S3".parse().unwrap(), "D5".parse().unwrap()],
        stage_quotients: None,
        verify_stages: true,
        with_ribbon: true,
        budget: 10_000,
        seed: 0,
        minimality_attested: true,
    };
    let run = || {
        let (_, record) =
            build_cover_knot(&k, &StapleFixture::default_fixture(), &[1, 1, 1], &opts).unwrap();
        serde_json::to_string_pretty(&record).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(
        first, second,
        "identical inputs and seed must give identical JSON"
    );
    assert!(first.len() > 100);
    println!(
        "ACCEPTANCE determinism: PASS (byte-identical records, {:?})",
        t0.elapsed()
    );
}

// minimal word parser for the pullback check (mirrors the CLI's)
fn parse_word(text: &str) -> staplekit::group::Word {
    use staplekit::group::Word;
    let trimmed = text.trim();
    if trimmed == "1" || trimmed.is_empty() {
        return Word::identity();
    }
    let mut letters = Vec::new();
    for tok in trimmed.split_whitespace() {
        let (gen_part, exp) = match tok.split_once('^') {
            Some((g, e)) => (g, e.parse::<i32>().unwrap()),
            None => (tok, 1),
        };
        let idx: usize = gen_part.strip_prefix('x').unwrap().parse().unwrap();
        letters.push((idx, exp));
    }
    Word::from_letters(letters)
}

// keep BigInt linked for the oracle helpers
#[allow(dead_code)]
fn _unused(_: BigInt) {}

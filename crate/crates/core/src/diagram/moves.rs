//! Reidemeister moves detected and applied on PD data.
//!
//! Faces come from the rotation system the slot order defines: a dart
//! (crossing, slot) walks its edge and turns to the counterclockwise-next
//! slot at the far end, so each orbit traces one face (kept on the right of
//! travel). Monogons give R1, bigons with a coherent over-strand give R2,
//! and triangles with a top/middle/bottom strand pattern give R3.

use super::{Diagram, EdgeId, Endpoint, Orientation};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    R1Down {
        crossing: usize,
    },
    R2Down {
        c1: usize,
        c2: usize,
    },
    R3 {
        darts: [Endpoint; 3],
    },
    R1Up {
        edge: EdgeId,
        positive: bool,
    },
    R2Up {
        finger: Endpoint,
        target: Endpoint,
        finger_over: bool,
    },
}

/// All faces as dart orbits.
pub fn faces(d: &Diagram) -> Vec<Vec<Endpoint>> {
    let ends = d.endpoints();
    let mut seen: BTreeSet<Endpoint> = BTreeSet::new();
    let mut out = Vec::new();
    for ci in 0..d.crossings().len() {
        for si in 0..4u8 {
            let start = (ci, si);
            if seen.contains(&start) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = start;
            loop {
                orbit.push(cur);
                seen.insert(cur);
                let e = d.crossings()[cur.0].slots[cur.1 as usize];
                let other = d.other_end(e, cur, &ends);
                cur = (other.0, (other.1 + 1) % 4);
                if cur == start {
                    break;
                }
            }
            out.push(orbit);
        }
    }
    out
}

fn is_over_slot(s: u8) -> bool {
    s % 2 == 1
}

/// Enumerate the moves applicable to a validated diagram. `with_increasing`
/// adds R1/R2 insertions (used by the search's backtracking layer and by
/// perturbation tests).
pub fn available_moves(d: &Diagram, with_increasing: bool) -> Vec<Move> {
    let o = d.validate().expect("available_moves needs a valid diagram");
    let ends = d.endpoints();
    let mut moves = Vec::new();
    let all_faces = faces(d);

    for face in &all_faces {
        match face.len() {
            1 => {
                moves.push(Move::R1Down {
                    crossing: face[0].0,
                });
            }
            2 => {
                let (d1, d2) = (face[0], face[1]);
                if d1.0 == d2.0 {
                    continue;
                }
                let e = d.crossings()[d1.0].slots[d1.1 as usize];
                let f = d.crossings()[d2.0].slots[d2.1 as usize];
                if e == f {
                    continue;
                }
                let e_other = d.other_end(e, d1, &ends);
                let f_other = d.other_end(f, d2, &ends);
                let e_over = (is_over_slot(d1.1), is_over_slot(e_other.1));
                let f_over = (is_over_slot(d2.1), is_over_slot(f_other.1));
                let removable = (e_over == (true, true) && f_over == (false, false))
                    || (e_over == (false, false) && f_over == (true, true));
                if removable {
                    let (c1, c2) = if d1.0 < d2.0 {
                        (d1.0, d2.0)
                    } else {
                        (d2.0, d1.0)
                    };
                    let m = Move::R2Down { c1, c2 };
                    if !moves.contains(&m) {
                        moves.push(m);
                    }
                }
            }
            3
                if r3_classify(d, &o, face).is_some() => {
                    moves.push(Move::R3 {
                        darts: [face[0], face[1], face[2]],
                    });
                }
            _ => {}
        }
    }

    if with_increasing {
        let mut edges: Vec<EdgeId> = d
            .components()
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        edges.sort_unstable();
        for e in &edges {
            moves.push(Move::R1Up {
                edge: *e,
                positive: true,
            });
            moves.push(Move::R1Up {
                edge: *e,
                positive: false,
            });
        }
        for face in &all_faces {
            for &da in face {
                for &db in face {
                    if da == db {
                        continue;
                    }
                    let ea = d.crossings()[da.0].slots[da.1 as usize];
                    let eb = d.crossings()[db.0].slots[db.1 as usize];
                    if ea == eb {
                        continue;
                    }
                    for over in [true, false] {
                        moves.push(Move::R2Up {
                            finger: da,
                            target: db,
                            finger_over: over,
                        });
                    }
                }
            }
        }
    }

    moves
}

struct R3Data {
    /// T's crossings in T's flow order.
    f1: usize,
    f2: usize,
    /// the crossing of the two lower strands
    x: usize,
    e_top: EdgeId,
    ta: EdgeId,
    tb: EdgeId,
    /// strand under T at f1: its far edge beyond x and whether it flows away from x
    m: StrandAtX,
    /// strand under T at f2
    b: StrandAtX,
}

struct StrandAtX {
    far: EdgeId,
    flows_away: bool,
    under_pair: (EdgeId, EdgeId),
}

fn r3_classify(d: &Diagram, o: &Orientation, face: &[Endpoint]) -> Option<R3Data> {
    if face.len() != 3 {
        return None;
    }
    let cs: BTreeSet<usize> = face.iter().map(|p| p.0).collect();
    if cs.len() != 3 {
        return None;
    }
    let ends = d.endpoints();
    // classify sides by over/under parity at their two endpoints
    let mut top = None;
    let mut sides = Vec::new(); // (edge, endpoint-crossings)
    for &dart in face {
        let e = d.crossings()[dart.0].slots[dart.1 as usize];
        let other = d.other_end(e, dart, &ends);
        let parities = (is_over_slot(dart.1), is_over_slot(other.1));
        if parities == (true, true) {
            if top.replace((e, dart.0, other.0)).is_some() {
                return None;
            }
        } else {
            sides.push((e, dart.0, other.0, parities));
        }
    }
    let (e_top, y0, z0) = top?;
    if sides.len() != 2 {
        return None;
    }
    // need one mixed and one under-under side
    let n_mixed = sides
        .iter()
        .filter(|s| s.3 == (true, false) || s.3 == (false, true))
        .count();
    let n_bot = sides.iter().filter(|s| s.3 == (false, false)).count();
    if n_mixed != 1 || n_bot != 1 {
        return None;
    }
    let x = *cs.iter().find(|&&c| c != y0 && c != z0)?;

    // T's flow order through its two crossings
    let (f1, f2) = if o.over_out(d, y0) == e_top && o.over_in(d, z0) == e_top {
        (y0, z0)
    } else if o.over_out(d, z0) == e_top && o.over_in(d, y0) == e_top {
        (z0, y0)
    } else {
        return None;
    };
    let ta = o.over_in(d, f1);
    let tb = o.over_out(d, f2);

    // For each of T's crossings, locate the strand under T there and its
    // continuation beyond x: the face side connecting that crossing to x,
    // then the strand-partner slot at x.
    let strand_at = |c_t: usize| -> Option<StrandAtX> {
        let (side_edge, _, _, _) = *sides
            .iter()
            .find(|s| (s.1 == c_t && s.2 == x) || (s.1 == x && s.2 == c_t))?;
        // side_edge's slot at x
        let sx = ends.get(&side_edge)?.iter().find(|p| p.0 == x).copied()?;
        let partner = (sx.1 + 2) % 4;
        let far = d.crossings()[x].slots[partner as usize];
        let under_pair = (d.crossings()[c_t].slots[0], d.crossings()[c_t].slots[2]);
        // guards against self-touching configurations
        if far == side_edge || far == e_top || far == ta || far == tb {
            return None;
        }
        if far == under_pair.0 || far == under_pair.1 {
            return None;
        }
        let far_other = d.other_end(far, (x, partner), &ends);
        if far_other.0 == x {
            return None;
        }
        let flows_away = o.tails.get(&far).copied() == Some((x, partner));
        Some(StrandAtX {
            far,
            flows_away,
            under_pair,
        })
    };
    let m = strand_at(f1)?;
    let b = strand_at(f2)?;
    if m.far == b.far {
        return None;
    }
    // under pairs must not touch T's own edges
    let union_set: BTreeSet<EdgeId> = [
        m.under_pair.0,
        m.under_pair.1,
        b.under_pair.0,
        b.under_pair.1,
    ]
    .into_iter()
    .collect();
    if union_set.contains(&ta) || union_set.contains(&tb) || union_set.contains(&e_top) {
        return None;
    }
    Some(R3Data {
        f1,
        f2,
        x,
        e_top,
        ta,
        tb,
        m,
        b,
    })
}

pub fn apply_move(d: &Diagram, m: &Move) -> Diagram {
    match m {
        Move::R1Down { crossing } => apply_r1_down(d, *crossing),
        Move::R2Down { c1, c2 } => apply_r2_down(d, *c1, *c2),
        Move::R3 { darts } => apply_r3(d, darts),
        Move::R1Up { edge, positive } => apply_r1_up(d, *edge, *positive),
        Move::R2Up {
            finger,
            target,
            finger_over,
        } => apply_r2_up(d, *finger, *target, *finger_over),
    }
}

fn apply_r1_down(d: &Diagram, c: usize) -> Diagram {
    let x = &d.crossings()[c];
    let mut loop_edge = None;
    for s in 0..4u8 {
        let t = (s + 1) % 4;
        if x.slots[s as usize] == x.slots[t as usize] {
            loop_edge = Some((x.slots[s as usize], s, t));
            break;
        }
    }
    let (g, s, t) = loop_edge.expect("R1Down on a crossing without a kink");
    let rest: Vec<EdgeId> = (0..4u8)
        .filter(|&i| i != s && i != t)
        .map(|i| x.slots[i as usize])
        .collect();
    let mut remove = BTreeSet::new();
    remove.insert(c);
    let unions = vec![(rest[0], rest[1])];
    let mut dead_edges = BTreeSet::new();
    if rest[0] != g && rest[1] != g {
        dead_edges.insert(g);
    }
    remove_with_dead_edges(d, &remove, &unions, &dead_edges)
}

fn apply_r2_down(d: &Diagram, c1: usize, c2: usize) -> Diagram {
    let mut remove = BTreeSet::new();
    remove.insert(c1);
    remove.insert(c2);
    let mut unions = Vec::new();
    for &c in &[c1, c2] {
        let x = &d.crossings()[c];
        unions.push((x.slots[0], x.slots[2]));
        unions.push((x.slots[1], x.slots[3]));
    }
    remove_with_dead_edges(d, &remove, &unions, &BTreeSet::new())
}

fn remove_with_dead_edges(
    d: &Diagram,
    remove: &BTreeSet<usize>,
    unions: &[(EdgeId, EdgeId)],
    dead_edges: &BTreeSet<EdgeId>,
) -> Diagram {
    let mut out = d.remove_crossings(remove, unions, &BTreeSet::new());
    if !dead_edges.is_empty() {
        for comp in out.components_mut() {
            if comp.edges.len() == 1 {
                continue; // already a bare circle
            }
            comp.edges.retain(|e| !dead_edges.contains(e));
            if comp.edges.is_empty() {
                comp.edges.push(*dead_edges.iter().next().unwrap());
            } else {
                // removing the loop edge can make the fused pieces adjacent
                let mut cycle = Vec::with_capacity(comp.edges.len());
                for &e in comp.edges.iter() {
                    if cycle.last() == Some(&e) {
                        continue;
                    }
                    cycle.push(e);
                }
                while cycle.len() > 1 && cycle.first() == cycle.last() {
                    cycle.pop();
                }
                comp.edges = cycle;
            }
        }
    }
    debug_assert!(out.validate().is_ok(), "move produced invalid diagram");
    out
}

fn apply_r1_up(d: &Diagram, e: EdgeId, positive: bool) -> Diagram {
    let mut out = d.clone();
    out.bump_next_edge();
    let g = out.fresh_edge();
    let ends = d.endpoints();
    if ends.contains_key(&e) {
        let o = d.validate().expect("R1Up needs a valid diagram");
        let f = out.fresh_edge();
        let head = o.heads[&e];
        out.crossings_mut()[head.0].slots[head.1 as usize] = f;
        let slots = if positive { [e, g, g, f] } else { [e, f, g, g] };
        out.push_crossing(slots);
        for comp in out.components_mut() {
            if let Some(pos) = comp.edges.iter().position(|&x| x == e) {
                comp.edges.insert(pos + 1, f);
                comp.edges.insert(pos + 1, g);
                break;
            }
        }
    } else {
        // kink on a zero-crossing circle
        let slots = if positive { [e, g, g, e] } else { [e, e, g, g] };
        out.push_crossing(slots);
        for comp in out.components_mut() {
            if comp.edges == vec![e] {
                comp.edges.push(g);
                break;
            }
        }
    }
    debug_assert!(out.validate().is_ok());
    out
}

fn apply_r2_up(d: &Diagram, finger: Endpoint, target: Endpoint, finger_over: bool) -> Diagram {
    let o = d.validate().expect("R2Up needs a valid diagram");
    let e_a = d.crossings()[finger.0].slots[finger.1 as usize];
    let e_b = d.crossings()[target.0].slots[target.1 as usize];
    assert_ne!(e_a, e_b, "R2Up needs two distinct edges");

    // The face lies on the right of dart travel, so relative to e_b's flow
    // it sits on the right exactly when the dart leaves e_b's tail.
    let face_on_flow_right = o.tails[&e_b] == target;

    let mut out = d.clone();
    out.bump_next_edge();
    let a2 = out.fresh_edge();
    let a3 = out.fresh_edge();
    let b2 = out.fresh_edge();
    let b3 = out.fresh_edge();

    let head_a = o.heads[&e_a];
    out.crossings_mut()[head_a.0].slots[head_a.1 as usize] = a3;
    let head_b = o.heads[&e_b];
    // e_b's head may sit at the slot we just rewrote only if e_a and e_b share
    // a head slot, which is impossible; safe to rewrite directly.
    out.crossings_mut()[head_b.0].slots[head_b.1 as usize] = b3;

    let (x1, x2) = if finger_over {
        if face_on_flow_right {
            ([e_b, e_a, b2, a2], [b2, a3, b3, a2])
        } else {
            ([e_b, a2, b2, e_a], [b2, a2, b3, a3])
        }
    } else if face_on_flow_right {
        ([e_a, b2, a2, e_b], [a2, b2, a3, b3])
    } else {
        ([e_a, e_b, a2, b2], [a2, b3, a3, b2])
    };
    out.push_crossing(x1);
    out.push_crossing(x2);

    for comp in out.components_mut() {
        if let Some(pos) = comp.edges.iter().position(|&x| x == e_a) {
            comp.edges.insert(pos + 1, a3);
            comp.edges.insert(pos + 1, a2);
            break;
        }
    }
    for comp in out.components_mut() {
        if let Some(pos) = comp.edges.iter().position(|&x| x == e_b) {
            comp.edges.insert(pos + 1, b3);
            comp.edges.insert(pos + 1, b2);
            break;
        }
    }
    debug_assert!(out.validate().is_ok(), "R2Up produced invalid diagram");
    out
}

fn apply_r3(d: &Diagram, darts: &[Endpoint; 3]) -> Diagram {
    let o = d.validate().expect("R3 needs a valid diagram");
    let face: Vec<Endpoint> = darts.to_vec();
    let data = r3_classify(d, &o, &face).expect("R3 move no longer applicable");
    let R3Data {
        f1,
        f2,
        x,
        e_top,
        ta,
        tb,
        m,
        b,
    } = data;
    let sign1 = o.signs[f1];
    let sign2 = o.signs[f2];

    // Tear out T's two crossings, fusing the strands that passed under it.
    let mut remove = BTreeSet::new();
    remove.insert(f1);
    remove.insert(f2);
    let unions = vec![m.under_pair, b.under_pair];
    let mut out = d.remove_crossings(&remove, &unions, &BTreeSet::new());
    out.bump_next_edge();

    // min-root convention mirrored from remove_crossings
    let root = |e: EdgeId| -> EdgeId {
        let g1: BTreeSet<EdgeId> = [m.under_pair.0, m.under_pair.1].into_iter().collect();
        let g2: BTreeSet<EdgeId> = [b.under_pair.0, b.under_pair.1].into_iter().collect();
        if !g1.is_disjoint(&g2) {
            let merged: BTreeSet<EdgeId> = g1.union(&g2).copied().collect();
            if merged.contains(&e) {
                return *merged.iter().next().unwrap();
            }
            return e;
        }
        if g1.contains(&e) {
            return *g1.iter().next().unwrap();
        }
        if g2.contains(&e) {
            return *g2.iter().next().unwrap();
        }
        e
    };
    let rm = root(m.far);
    let rb = root(b.far);
    debug_assert_eq!(rm, m.far, "guards should keep far edges unmerged");
    debug_assert_eq!(rb, b.far, "guards should keep far edges unmerged");

    let x_new = x - remove.iter().filter(|&&r| r < x).count();

    let nm = out.fresh_edge();
    let nb = out.fresh_edge();

    // split each far edge: the piece adjacent to x keeps the old id
    let ends2 = out.endpoints();
    let far_end = |e: EdgeId| -> Endpoint {
        let v = &ends2[&e];
        debug_assert_eq!(v.len(), 2);
        if v[0].0 == x_new {
            v[1]
        } else {
            v[0]
        }
    };
    let fm = far_end(rm);
    let fb = far_end(rb);
    out.crossings_mut()[fm.0].slots[fm.1 as usize] = nm;
    out.crossings_mut()[fb.0].slots[fb.1 as usize] = nb;

    let oriented = |away: bool, near: EdgeId, far: EdgeId| -> (EdgeId, EdgeId) {
        if away {
            (near, far)
        } else {
            (far, near)
        }
    };
    // After the slide T meets the f2-strand first, then the f1-strand.
    let (b_in, b_out) = oriented(b.flows_away, rb, nb);
    let (m_in, m_out) = oriented(m.flows_away, rm, nm);
    out.push_crossing(crossing_record(sign2, b_in, b_out, ta, e_top));
    out.push_crossing(crossing_record(sign1, m_in, m_out, e_top, tb));

    insert_next_to(&mut out, rm, nm, m.flows_away);
    insert_next_to(&mut out, rb, nb, b.flows_away);

    debug_assert!(out.validate().is_ok(), "R3 produced invalid diagram");
    out
}

fn crossing_record(
    sign: i8,
    u_in: EdgeId,
    u_out: EdgeId,
    o_in: EdgeId,
    o_out: EdgeId,
) -> [EdgeId; 4] {
    if sign > 0 {
        [u_in, o_in, u_out, o_out]
    } else {
        [u_in, o_out, u_out, o_in]
    }
}

fn insert_next_to(d: &mut Diagram, anchor: EdgeId, new: EdgeId, after: bool) {
    for comp in d.components_mut() {
        if let Some(pos) = comp.edges.iter().position(|&x| x == anchor) {
            let at = if after { pos + 1 } else { pos };
            comp.edges.insert(at, new);
            return;
        }
    }
    panic!("anchor edge {anchor} not found in any component");
}

//! Gauss and DT exchange formats.
//!
//! The Gauss format is self-contained (it carries crossing signs, so it
//! re-imports without any embedding search):
//!
//! ```text
//! G <name> components=<n> crossings=<m>
//! S <sign per crossing>
//! C <idx>: <passages: +c over, -c under, crossings numbered from 1>
//! ```
//!
//! DT export follows the tables' convention: passages are numbered along
//! the traversal, each crossing pairs an odd and an even label, and for the
//! odd labels in order the paired even label is emitted, negated when the
//! odd passage runs over. Links are numbered component by component; the
//! starting passage of each component is chosen by search so every crossing
//! gets one odd and one even label, and export fails if no choice works.

use super::{ComponentRole, Diagram};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Passages of each component: (crossing index, over?) in traversal order.
fn passages(d: &Diagram) -> Result<Vec<Vec<(usize, bool)>>> {
    let o = d.validate()?;
    let mut out = Vec::new();
    for comp in d.components() {
        let mut seq = Vec::new();
        if comp.edges.len() == 1 && !o.heads.contains_key(&comp.edges[0]) {
            out.push(seq);
            continue;
        }
        for &e in &comp.edges {
            let (c, s) = o.heads[&e];
            seq.push((c, s % 2 == 1));
        }
        out.push(seq);
    }
    Ok(out)
}

pub fn gauss_code(d: &Diagram) -> Result<String> {
    let o = d.validate()?;
    let seqs = passages(d)?;
    let mut out = String::new();
    out.push_str(&format!(
        "G {} components={} crossings={}\n",
        d.name,
        d.component_count(),
        d.crossing_count()
    ));
    let signs: Vec<String> = o.signs.iter().map(|s| format!("{s:+}")).collect();
    out.push_str(&format!("S {}\n", signs.join(" ")));
    for (i, seq) in seqs.iter().enumerate() {
        let toks: Vec<String> = seq
            .iter()
            .map(|&(c, over)| {
                let n = (c + 1) as i64;
                if over {
                    format!("{n}")
                } else {
                    format!("{}", -n)
                }
            })
            .collect();
        out.push_str(&format!("C {}: {}\n", i, toks.join(" ")));
    }
    Ok(out)
}

pub fn parse_gauss(text: &str) -> Result<Diagram> {
    let mut name = String::new();
    let mut ncomp = 0usize;
    let mut ncross = 0usize;
    let mut signs: Vec<i8> = Vec::new();
    let mut comps: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut seen_header = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |col: usize, msg: String| Error::Parse {
            line: lineno + 1,
            col,
            msg,
        };
        let mut toks = line.split_whitespace();
        match toks.next().unwrap() {
            "G" => {
                seen_header = true;
                name = toks
                    .next()
                    .ok_or_else(|| err(2, "missing name".into()))?
                    .to_string();
                for tok in toks {
                    if let Some(v) = tok.strip_prefix("components=") {
                        ncomp = v.parse().map_err(|_| err(3, format!("bad {tok}")))?;
                    } else if let Some(v) = tok.strip_prefix("crossings=") {
                        ncross = v.parse().map_err(|_| err(4, format!("bad {tok}")))?;
                    } else {
                        return Err(err(3, format!("unknown header field {tok}")));
                    }
                }
            }
            "S" => {
                for tok in toks {
                    let v: i8 = tok.parse().map_err(|_| err(2, format!("bad sign {tok}")))?;
                    if v != 1 && v != -1 {
                        return Err(err(2, format!("sign must be ±1, got {v}")));
                    }
                    signs.push(v);
                }
            }
            "C" => {
                let idx_tok = toks.next().ok_or_else(|| err(2, "missing index".into()))?;
                let idx: usize = idx_tok
                    .strip_suffix(':')
                    .unwrap_or(idx_tok)
                    .parse()
                    .map_err(|_| err(2, format!("bad index {idx_tok}")))?;
                let mut seq = Vec::new();
                for tok in toks {
                    let v: i64 = tok
                        .parse()
                        .map_err(|_| err(3, format!("bad passage {tok}")))?;
                    if v == 0 || v.unsigned_abs() as usize > ncross {
                        return Err(err(3, format!("passage {v} out of range")));
                    }
                    seq.push(v);
                }
                comps.push((idx, seq));
            }
            t => return Err(err(1, format!("unknown line tag {t}"))),
        }
    }
    if !seen_header {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "missing G header".into(),
        });
    }
    if signs.len() != ncross {
        return Err(Error::Validation(format!(
            "expected {ncross} signs, got {}",
            signs.len()
        )));
    }
    if comps.len() != ncomp {
        return Err(Error::Validation(format!(
            "expected {ncomp} components, got {}",
            comps.len()
        )));
    }
    comps.sort_by_key(|(i, _)| *i);

    // Edge ids: one per passage (edge follows its passage); plus one per
    // zero-crossing component.
    let mut d = Diagram::new(name);
    let mut next_edge = 1u32;
    let mut edge_of: Vec<Vec<u32>> = Vec::new(); // component -> edge after passage j
    for (_, seq) in &comps {
        let mut ids = Vec::new();
        let n = seq.len().max(1);
        for _ in 0..n {
            ids.push(next_edge);
            next_edge += 1;
        }
        edge_of.push(ids);
    }

    // Per crossing: the under and over passage locations.
    let mut under_at: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut over_at: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (ci, (_, seq)) in comps.iter().enumerate() {
        for (j, &v) in seq.iter().enumerate() {
            let c = (v.unsigned_abs() - 1) as usize;
            let table = if v > 0 { &mut over_at } else { &mut under_at };
            if table.insert(c, (ci, j)).is_some() {
                return Err(Error::Validation(format!(
                    "crossing {} visited twice in the same role",
                    c + 1
                )));
            }
        }
    }
    #[allow(clippy::needless_range_loop)]
    for c in 0..ncross {
        let &(ui, uj) = under_at
            .get(&c)
            .ok_or_else(|| Error::Validation(format!("crossing {} has no under passage", c + 1)))?;
        let &(oi, oj) = over_at
            .get(&c)
            .ok_or_else(|| Error::Validation(format!("crossing {} has no over passage", c + 1)))?;
        let prev = |ci: usize, j: usize| {
            let k = comps[ci].1.len();
            edge_of[ci][(j + k - 1) % k]
        };
        let u_in = prev(ui, uj);
        let u_out = edge_of[ui][uj];
        let o_in = prev(oi, oj);
        let o_out = edge_of[oi][oj];
        let slots = if signs[c] > 0 {
            [u_in, o_in, u_out, o_out]
        } else {
            [u_in, o_out, u_out, o_in]
        };
        d.push_crossing(slots);
    }
    for (ci, (_, seq)) in comps.iter().enumerate() {
        let edges: Vec<u32> = if seq.is_empty() {
            vec![edge_of[ci][0]]
        } else {
            // edge j sits after passage j; cycle order matches passages
            edge_of[ci].clone()
        };
        d.push_component(edges, ComponentRole::Knot);
    }
    d.bump_next_edge();
    d.validate()?;
    Ok(d)
}

pub fn dt_code(d: &Diagram) -> Result<String> {
    let seqs = passages(d)?;
    let m = d.crossing_count();
    let total: usize = seqs.iter().map(|s| s.len()).sum();
    if total != 2 * m {
        return Err(Error::DtUnsupported("inconsistent passage count".into()));
    }
    let sizes: Vec<usize> = seqs.iter().map(|s| s.len()).collect();

    // choose a rotation for each component so every crossing pairs an odd
    // and an even label
    let nonempty: Vec<usize> = (0..seqs.len()).filter(|&i| sizes[i] > 0).collect();
    let mut rot = vec![0usize; seqs.len()];

    fn search(
        k: usize,
        nonempty: &[usize],
        seqs: &[Vec<(usize, bool)>],
        sizes: &[usize],
        rot: &mut Vec<usize>,
        m: usize,
    ) -> bool {
        // labels are assigned consecutively: component nonempty[0] first
        if k == nonempty.len() {
            return check_pairing(nonempty, seqs, sizes, rot, m).is_some();
        }
        let ci = nonempty[k];
        for r in 0..sizes[ci] {
            rot[ci] = r;
            // partial check: crossings entirely within assigned components
            if check_partial(&nonempty[..=k], seqs, sizes, rot, m)
                && search(k + 1, nonempty, seqs, sizes, rot, m) {
                    return true;
                }
        }
        false
    }

    fn labels_for(
        assigned: &[usize],
        seqs: &[Vec<(usize, bool)>],
        sizes: &[usize],
        rot: &[usize],
    ) -> BTreeMap<usize, Vec<(usize, bool)>> {
        // crossing -> list of (label, over)
        let mut map: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
        let mut base = 1usize;
        for &ci in assigned {
            for j in 0..sizes[ci] {
                let (c, over) = seqs[ci][(rot[ci] + j) % sizes[ci]];
                map.entry(c).or_default().push((base + j, over));
            }
            base += sizes[ci];
        }
        map
    }

    fn check_partial(
        assigned: &[usize],
        seqs: &[Vec<(usize, bool)>],
        sizes: &[usize],
        rot: &[usize],
        _m: usize,
    ) -> bool {
        let map = labels_for(assigned, seqs, sizes, rot);
        for labels in map.values() {
            if labels.len() == 2 && labels[0].0 % 2 == labels[1].0 % 2 {
                return false;
            }
        }
        true
    }

    fn check_pairing(
        assigned: &[usize],
        seqs: &[Vec<(usize, bool)>],
        sizes: &[usize],
        rot: &[usize],
        m: usize,
    ) -> Option<BTreeMap<usize, Vec<(usize, bool)>>> {
        let map = labels_for(assigned, seqs, sizes, rot);
        if map.len() != m {
            return None;
        }
        for labels in map.values() {
            if labels.len() != 2 || labels[0].0 % 2 == labels[1].0 % 2 {
                return None;
            }
        }
        Some(map)
    }

    if !search(0, &nonempty, &seqs, &sizes, &mut rot, m) {
        return Err(Error::DtUnsupported(
            "no passage numbering pairs odd with even at every crossing".into(),
        ));
    }
    let map = check_pairing(&nonempty, &seqs, &sizes, &rot, m).unwrap();

    // odd label -> signed even partner
    let mut pairs: BTreeMap<usize, i64> = BTreeMap::new();
    for labels in map.values() {
        let (a, b) = (labels[0], labels[1]);
        let (odd, even) = if a.0 % 2 == 1 { (a, b) } else { (b, a) };
        let val = if odd.1 {
            -(even.0 as i64)
        } else {
            even.0 as i64
        };
        pairs.insert(odd.0, val);
    }

    // emit one line per nonempty component: the entries for its odd labels
    let mut out = String::new();
    let mut base = 1usize;
    for &ci in &nonempty {
        let mut toks = Vec::new();
        for j in 0..sizes[ci] {
            let label = base + j;
            if label % 2 == 1 {
                toks.push(pairs[&label].to_string());
            }
        }
        base += sizes[ci];
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    Ok(out)
}

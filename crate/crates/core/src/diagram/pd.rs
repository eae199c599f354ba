//! PD text format.
//!
//! ```text
//! L <name> components=<n>
//! X <a> <b> <c> <d>        one line per crossing, counterclockwise from
//!                          the incoming under-strand
//! C <idx>: <arc ids in orientation order>
//! ```
//!
//! All integers are decimal and whitespace-separated; lines end with `\n`.
//! A zero-crossing component is a `C` line with a single arc id that occurs
//! in no `X` line.

use super::{ComponentRole, Diagram};
use crate::error::{Error, Result};

impl Diagram {
    /// Parse and validate PD text.
    pub fn parse_pd(text: &str) -> Result<Diagram> {
        let mut name = String::new();
        let mut declared_components: Option<usize> = None;
        let mut crossings: Vec<[u32; 4]> = Vec::new();
        let mut components: Vec<(usize, Vec<u32>)> = Vec::new();
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
            let mut tokens = line.split_whitespace();
            let tag = tokens.next().unwrap();
            match tag {
                "L" => {
                    if seen_header {
                        return Err(err(1, "duplicate header line".into()));
                    }
                    seen_header = true;
                    name = tokens
                        .next()
                        .ok_or_else(|| err(2, "missing diagram name".into()))?
                        .to_string();
                    let comp_tok = tokens
                        .next()
                        .ok_or_else(|| err(3, "missing components=<n>".into()))?;
                    let n = comp_tok
                        .strip_prefix("components=")
                        .and_then(|v| v.parse::<usize>().ok())
                        .ok_or_else(|| {
                            err(3, format!("expected components=<n>, got {comp_tok}"))
                        })?;
                    declared_components = Some(n);
                }
                "X" => {
                    if !seen_header {
                        return Err(err(1, "crossing before header".into()));
                    }
                    let mut slots = [0u32; 4];
                    for (i, s) in slots.iter_mut().enumerate() {
                        let tok = tokens
                            .next()
                            .ok_or_else(|| err(2 + i, "crossing needs 4 arc ids".into()))?;
                        *s = tok
                            .parse()
                            .map_err(|_| err(2 + i, format!("bad arc id {tok}")))?;
                    }
                    if tokens.next().is_some() {
                        return Err(err(6, "trailing tokens after crossing".into()));
                    }
                    crossings.push(slots);
                }
                "C" => {
                    if !seen_header {
                        return Err(err(1, "component before header".into()));
                    }
                    let idx_tok = tokens
                        .next()
                        .ok_or_else(|| err(2, "missing component index".into()))?;
                    let idx_str = idx_tok.strip_suffix(':').unwrap_or(idx_tok);
                    let idx: usize = idx_str
                        .parse()
                        .map_err(|_| err(2, format!("bad component index {idx_tok}")))?;
                    let mut edges = Vec::new();
                    for tok in tokens {
                        let e: u32 = tok
                            .parse()
                            .map_err(|_| err(3 + edges.len(), format!("bad arc id {tok}")))?;
                        edges.push(e);
                    }
                    if edges.is_empty() {
                        return Err(err(3, format!("component {idx} lists no arcs")));
                    }
                    components.push((idx, edges));
                }
                _ => {
                    return Err(err(1, format!("unknown line tag {tag}")));
                }
            }
        }

        if !seen_header {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "missing L header".into(),
            });
        }
        let declared = declared_components.unwrap();
        if components.len() != declared {
            return Err(Error::Validation(format!(
                "header declares {declared} components, found {}",
                components.len()
            )));
        }
        components.sort_by_key(|(i, _)| *i);
        for (want, (got, _)) in components.iter().enumerate() {
            if *got != want {
                return Err(Error::Validation(format!(
                    "component indices must be 0..{declared}, missing {want}"
                )));
            }
        }

        let mut d = Diagram::new(name);
        for slots in crossings {
            d.push_crossing(slots);
        }
        for (_, edges) in components {
            d.push_component(edges, ComponentRole::Knot);
        }
        d.bump_next_edge();
        d.validate()?;
        Ok(d)
    }

    /// Serialize as-is (no relabeling).
    pub fn to_pd_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "L {} components={}\n",
            self.name,
            self.component_count()
        ));
        for x in self.crossings() {
            out.push_str(&format!(
                "X {} {} {} {}\n",
                x.slots[0], x.slots[1], x.slots[2], x.slots[3]
            ));
        }
        for (i, c) in self.components().iter().enumerate() {
            let ids: Vec<String> = c.edges.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("C {}: {}\n", i, ids.join(" ")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_header_is_unknot() {
        let d = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn trefoil_parses() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.edge_count(), 6);
        let o = d.validate().unwrap();
        assert!(o.signs.iter().all(|&s| s == 1));
        assert_eq!(d.writhe(0).unwrap(), 3);
    }

    #[test]
    fn arc_used_three_times_rejected() {
        let text = "L bad components=1\nX 1 4 2 5\nX 3 6 4 1\nX 5 2 6 4\nC 0: 1 2 3 4 5 6\n";
        let e = Diagram::parse_pd(text).unwrap_err();
        assert!(e.to_string().contains("times"), "{e}");
    }

    #[test]
    fn mismatched_orientation_rejected() {
        // trefoil with one component cycle order corrupted
        let text = "L bad components=1\nX 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\nC 0: 1 2 3 4 6 5\n";
        let e = Diagram::parse_pd(text).unwrap_err();
        assert!(
            e.to_string().contains("orientation") || e.to_string().contains("mismatched"),
            "{e}"
        );
    }

    #[test]
    fn roundtrip_is_identity_on_canonical_text() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let canon = d.canonical_code();
        let d2 = Diagram::parse_pd(&canon).unwrap();
        assert_eq!(d2.canonical_code(), canon);
    }

    #[test]
    fn split_unlink_validates() {
        let d = Diagram::parse_pd("L unlink components=2\nC 0: 1\nC 1: 2\n").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 2);
        d.validate().unwrap();
    }
}

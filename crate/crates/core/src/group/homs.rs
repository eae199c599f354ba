//! Finite quotients: symmetric, alternating, and dihedral groups, with
//! enumeration of all representations of a Wirtinger presentation.

use super::Presentation;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_ORDER_BOUND: usize = 120;

/// The default verification battery: small symmetric groups, the smallest
/// nonabelian simple group, and the odd dihedral groups through 13 (these
/// see every Fox p-coloring for odd p <= 13).
pub fn default_battery() -> Vec<GroupDesc> {
    vec![
        GroupDesc::Symmetric(3),
        GroupDesc::Symmetric(4),
        GroupDesc::Symmetric(5),
        GroupDesc::Alternating(5),
        GroupDesc::Dihedral(3),
        GroupDesc::Dihedral(5),
        GroupDesc::Dihedral(7),
        GroupDesc::Dihedral(9),
        GroupDesc::Dihedral(11),
        GroupDesc::Dihedral(13),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum GroupDesc {
    Symmetric(u8),
    Alternating(u8),
    Dihedral(u8),
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Symmetric(n) => write!(f, "S{n}"),
            GroupDesc::Alternating(n) => write!(f, "A{n}"),
            GroupDesc::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}

impl FromStr for GroupDesc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, num) = s.split_at(1);
        let n: u8 = num
            .parse()
            .map_err(|_| Error::UnknownGroup(s.to_string()))?;
        match kind {
            "S" | "s" => Ok(GroupDesc::Symmetric(n)),
            "A" | "a" => Ok(GroupDesc::Alternating(n)),
            "D" | "d" => Ok(GroupDesc::Dihedral(n)),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// A small group with fully tabulated multiplication.
#[derive(Debug)]
pub struct FiniteGroup {
    pub desc: GroupDesc,
    pub order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    /// conjugacy classes, each sorted; class 0 is the identity's
    pub classes: Vec<Vec<u16>>,
}

impl FiniteGroup {
    pub fn new(desc: GroupDesc, order_bound: usize) -> Result<FiniteGroup> {
        let elements: Vec<Vec<u8>> = match desc {
            GroupDesc::Symmetric(n) => permutations(n),
            GroupDesc::Alternating(n) => permutations(n)
                .into_iter()
                .filter(|p| perm_parity(p))
                .collect(),
            GroupDesc::Dihedral(n) => dihedral_elements(n),
        };
        let order = elements.len();
        if order == 0 {
            return Err(Error::UnknownGroup(desc.to_string()));
        }
        if order > order_bound {
            return Err(Error::GroupOrderBound(desc.to_string(), order, order_bound));
        }
        let index: BTreeMap<Vec<u8>, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u16))
            .collect();
        type Compose = Box<dyn Fn(&[u8], &[u8]) -> Vec<u8>>;
        let compose: Compose = match desc {
            GroupDesc::Dihedral(n) => Box::new(move |a: &[u8], b: &[u8]| dihedral_mul(n, a, b)),
            _ => Box::new(|a: &[u8], b: &[u8]| {
                // (a*b)(i) = a(b(i))
                b.iter().map(|&i| a[i as usize]).collect()
            }),
        };
        let mut mul = vec![0u16; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * order + j] = index[&compose(a, b)];
            }
        }
        let mut inv = vec![0u16; order];
        let id = index
            .get(&identity_of(&desc))
            .copied()
            .expect("identity present");
        for i in 0..order {
            for j in 0..order {
                if mul[i * order + j] == id {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        // conjugacy classes by orbit
        let mut class_of = vec![usize::MAX; order];
        let mut classes: Vec<Vec<u16>> = Vec::new();
        for x in 0..order as u16 {
            if class_of[x as usize] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut orbit = Vec::new();
            for g in 0..order as u16 {
                let gi = inv[g as usize];
                let y =
                    mul[(mul[(g as usize) * order + x as usize] as usize) * order + gi as usize];
                if class_of[y as usize] == usize::MAX {
                    class_of[y as usize] = cid;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        // put the identity class first for stable reporting
        classes.sort_by_key(|c| (c.len() != 1 || c[0] != id, c.clone()));
        Ok(FiniteGroup {
            desc,
            order,
            mul,
            inv,
            classes,
        })
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[(a as usize) * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn identity(&self) -> u16 {
        // identity is its own inverse and fixed by conjugation; class 0
        self.classes[0][0]
    }

    pub fn conjugate(&self, g: u16, x: u16) -> u16 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// One representative per left coset of the centralizer of x.
    pub fn centralizer_coset_reps(&self, x: u16) -> Vec<u16> {
        let cent: Vec<u16> = (0..self.order as u16)
            .filter(|&h| self.mul(h, x) == self.mul(x, h))
            .collect();
        let mut reps = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for h in 0..self.order as u16 {
            let key = cent.iter().map(|&c| self.mul(h, c)).min().unwrap();
            if seen.insert(key) {
                reps.push(h);
            }
        }
        reps
    }

    pub fn eval_word(&self, w: &super::Word, images: &[u16]) -> u16 {
        let mut acc = self.identity();
        for (g, e) in w.expand() {
            let v = if e > 0 {
                images[g]
            } else {
                self.inv(images[g])
            };
            acc = self.mul(acc, v);
        }
        acc
    }
}

fn permutations(n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

fn perm_parity(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Dihedral element encoding: [kind, power] with kind 0 = rotation r^k,
/// kind 1 = reflection s·r^k.
fn dihedral_elements(n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for kind in 0..2u8 {
        for k in 0..n {
            out.push(vec![kind, k]);
        }
    }
    out
}

fn dihedral_mul(n: u8, a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = n as i32;
    let (ka, pa) = (a[0], a[1] as i32);
    let (kb, pb) = (b[0], b[1] as i32);
    // r^p * r^q = r^(p+q); r^p * s r^q = s r^(q-p); s r^p * r^q = s r^(p+q);
    // s r^p * s r^q = r^(q-p)
    let (kind, pow) = match (ka, kb) {
        (0, 0) => (0, pa + pb),
        (0, 1) => (1, pb - pa),
        (1, 0) => (1, pa + pb),
        (1, 1) => (0, pb - pa),
        _ => unreachable!(),
    };
    vec![kind, pow.rem_euclid(n) as u8]
}

fn identity_of(desc: &GroupDesc) -> Vec<u8> {
    match desc {
        GroupDesc::Symmetric(n) | GroupDesc::Alternating(n) => (0..*n).collect(),
        GroupDesc::Dihedral(_) => vec![0, 0],
    }
}

pub type Hom = Vec<u16>;

/// Enumerate all homomorphisms of the diagram group into G: assignments of
/// arc generators satisfying every crossing relation. When
/// `meridian_class` names a conjugacy class, the meridian's component is
/// restricted to it. In every case the search exploits that Wirtinger
/// relations keep a component's arcs inside one conjugacy class, branching
/// only over class members once a component has any assigned arc.
pub fn enumerate_homs(
    pres: &Presentation,
    group: &FiniteGroup,
    meridian_class: Option<usize>,
) -> Result<Vec<Hom>> {
    let ctx = SearchCtx::new(pres, group, meridian_class)?;
    let n = pres.generator_count();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    // Enumerate one fiber per conjugacy class of the first generator's
    // image, then translate by centralizer coset representatives: fibers
    // over conjugate values are conjugate.
    let mut results: Vec<Hom> = Vec::new();
    let class_ids: Vec<usize> = match meridian_class {
        Some(c) if pres.arc_component[0] == pres.arc_component[pres.meridian] => vec![c],
        _ => (0..group.classes.len()).collect(),
    };
    for class_id in class_ids {
        let rep = group.classes[class_id][0];
        let mut vals: Vec<Option<u16>> = vec![None; n];
        vals[0] = Some(rep);
        let mut trail = vec![0usize];
        if !propagate(&ctx, &mut vals, &mut trail) {
            continue;
        }
        let mut fiber: Vec<Hom> = Vec::new();
        search(&ctx, &mut vals, &mut |v| {
            fiber.push(v.iter().map(|x| x.unwrap()).collect())
        });
        let keep = |h: &Hom| match meridian_class {
            None => true,
            Some(c) => group.classes[c].contains(&h[pres.meridian]),
        };
        for h in group.centralizer_coset_reps(rep) {
            for f in &fiber {
                let translated: Hom = f
                    .iter()
                    .map(|&x| group.mul(group.mul(h, x), group.inv(h)))
                    .collect();
                if keep(&translated) {
                    results.push(translated);
                }
            }
        }
    }
    results.sort_unstable();
    Ok(results)
}

/// Count homomorphisms without materializing them. Fibers over conjugate
/// images of the first generator have equal size, so only one class
/// representative per conjugacy class is searched.
pub fn count_homs(
    pres: &Presentation,
    group: &FiniteGroup,
    meridian_class: Option<usize>,
) -> Result<usize> {
    let ctx = SearchCtx::new(pres, group, meridian_class)?;
    let n = pres.generator_count();
    if n == 0 {
        return Ok(1);
    }
    let classes: Vec<usize> = match meridian_class {
        Some(c) => vec![c],
        None => (0..group.classes.len()).collect(),
    };
    let mut total = 0usize;
    for c in classes {
        let class = &group.classes[c];
        let rep = class[0];
        let mut vals: Vec<Option<u16>> = vec![None; n];
        vals[0] = Some(rep);
        let mut count = 0usize;
        let mut trail = vec![0usize];
        if propagate(&ctx, &mut vals, &mut trail) {
            search(&ctx, &mut vals, &mut |_| count += 1);
        }
        total += class.len() * count;
    }
    Ok(total)
}

struct SearchCtx<'a> {
    pres: &'a Presentation,
    group: &'a FiniteGroup,
    class_of: Vec<usize>,
    meridian_class: Option<usize>,
    meridian_comp: usize,
    /// generator -> relations mentioning it
    gen_relations: Vec<Vec<usize>>,
}

impl<'a> SearchCtx<'a> {
    fn new(
        pres: &'a Presentation,
        group: &'a FiniteGroup,
        meridian_class: Option<usize>,
    ) -> Result<Self> {
        if let Some(c) = meridian_class {
            if c >= group.classes.len() {
                return Err(Error::Other(format!("no conjugacy class {c}")));
            }
        }
        let mut class_of = vec![0; group.order];
        for (ci, class) in group.classes.iter().enumerate() {
            for &x in class {
                class_of[x as usize] = ci;
            }
        }
        let mut gen_relations = vec![Vec::new(); pres.generator_count()];
        for (ri, r) in pres.relations.iter().enumerate() {
            for g in [r.over, r.under_in, r.under_out] {
                if !gen_relations[g].contains(&ri) {
                    gen_relations[g].push(ri);
                }
            }
        }
        Ok(SearchCtx {
            pres,
            group,
            class_of,
            meridian_class,
            meridian_comp: pres.arc_component[pres.meridian],
            gen_relations,
        })
    }

    fn branch_set(&self, vals: &[Option<u16>], g: usize) -> Vec<u16> {
        let comp = self.pres.arc_component[g];
        for (other, v) in vals.iter().enumerate() {
            if let Some(x) = v {
                if self.pres.arc_component[other] == comp {
                    return self.group.classes[self.class_of[*x as usize]].clone();
                }
            }
        }
        match self.meridian_class {
            Some(c) if comp == self.meridian_comp => self.group.classes[c].clone(),
            _ => (0..self.group.order as u16).collect(),
        }
    }

    /// Prefer the most constrained arc: an unknown over-strand whose
    /// relation already knows both under arcs fails or propagates
    /// immediately, then one with a single known neighbor.
    fn pick_branch(&self, vals: &[Option<u16>]) -> Option<usize> {
        let mut single: Option<usize> = None;
        for r in &self.pres.relations {
            if vals[r.over].is_some() {
                continue;
            }
            match (vals[r.under_in].is_some(), vals[r.under_out].is_some()) {
                (true, true) => return Some(r.over),
                (false, false) => {}
                _ => {
                    if single.is_none() {
                        single = Some(r.over);
                    }
                }
            }
        }
        single.or_else(|| vals.iter().position(|v| v.is_none()))
    }

    /// Fire one relation; Ok(Some(g)) when it assigned g, Err(()) on clash.
    fn fire(
        &self,
        r: &super::CrossingRel,
        vals: &mut [Option<u16>],
    ) -> std::result::Result<Option<usize>, ()> {
        let group = self.group;
        match (vals[r.over], vals[r.under_in], vals[r.under_out]) {
            (Some(o), Some(a), maybe_b) => {
                let conj = if r.sign > 0 {
                    group.mul(group.mul(group.inv(o), a), o)
                } else {
                    group.mul(group.mul(o, a), group.inv(o))
                };
                match maybe_b {
                    Some(b) if b != conj => Err(()),
                    Some(_) => Ok(None),
                    None => {
                        vals[r.under_out] = Some(conj);
                        Ok(Some(r.under_out))
                    }
                }
            }
            (Some(o), None, Some(b)) => {
                let unconj = if r.sign > 0 {
                    group.mul(group.mul(o, b), group.inv(o))
                } else {
                    group.mul(group.mul(group.inv(o), b), o)
                };
                vals[r.under_in] = Some(unconj);
                Ok(Some(r.under_in))
            }
            _ => Ok(None),
        }
    }
}

/// Worklist propagation from the generators named on the trail.
fn propagate(ctx: &SearchCtx, vals: &mut [Option<u16>], trail: &mut Vec<usize>) -> bool {
    let mut queue: Vec<usize> = trail.clone();
    while let Some(g) = queue.pop() {
        for &ri in &ctx.gen_relations[g] {
            match ctx.fire(&ctx.pres.relations[ri], vals) {
                Err(()) => return false,
                Ok(Some(newg)) => {
                    trail.push(newg);
                    queue.push(newg);
                }
                Ok(None) => {}
            }
        }
    }
    true
}

fn search(ctx: &SearchCtx, vals: &mut Vec<Option<u16>>, emit: &mut dyn FnMut(&[Option<u16>])) {
    match ctx.pick_branch(vals) {
        None => {
            // fully assigned and every relation satisfied along the way;
            // double-check cheaply in debug builds
            debug_assert!(ctx
                .pres
                .relations
                .iter()
                .all(|r| { ctx.fire(r, &mut vals.clone()).is_ok() }));
            emit(vals);
        }
        Some(g) => {
            for img in ctx.branch_set(vals, g) {
                let mut trail = vec![g];
                vals[g] = Some(img);
                if propagate(ctx, vals, &mut trail) {
                    search(ctx, vals, emit);
                }
                for t in trail {
                    vals[t] = None;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::wirtinger;
    use super::*;
    use crate::diagram::Diagram;
    use crate::fixtures;

    fn group(s: &str) -> FiniteGroup {
        FiniteGroup::new(s.parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = group("S3");
        assert_eq!(g.order, 6);
        assert_eq!(g.classes.len(), 3);
        let sizes: Vec<usize> = g.classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn dihedral_structure() {
        let g = group("D5");
        assert_eq!(g.order, 10);
        for a in 0..g.order as u16 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn a5_has_order_60() {
        assert_eq!(group("A5").order, 60);
    }

    #[test]
    fn order_bound_enforced() {
        let e = FiniteGroup::new("S5".parse().unwrap(), 100).unwrap_err();
        assert!(matches!(e, Error::GroupOrderBound(_, 120, 100)));
    }

    #[test]
    fn unknot_homs_count_group_order() {
        let d = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        let g = group("S3");
        assert_eq!(enumerate_homs(&p, &g, None).unwrap().len(), 6);
    }

    #[test]
    fn trefoil_s3_transposition_homs() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        let g = group("S3");
        // transpositions are the class of size 3
        let class = g.classes.iter().position(|c| c.len() == 3).unwrap();
        let homs = enumerate_homs(&p, &g, Some(class)).unwrap();
        assert_eq!(homs.len(), 9, "3 constant + 6 dihedral colorings");
    }

    #[test]
    fn figure_eight_not_tricolorable() {
        let d = Diagram::parse_pd(fixtures::FIGURE_EIGHT).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        let g = group("S3");
        let class = g.classes.iter().position(|c| c.len() == 3).unwrap();
        let homs = enumerate_homs(&p, &g, Some(class)).unwrap();
        assert_eq!(homs.len(), 3, "only the constant maps");
    }
}

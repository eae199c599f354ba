//! Dense polynomials over a field, with the Laurent-ring membership test
//! used to decide Alexander-module classes over F[t, t⁻¹].

use super::field::Field;
use super::laurent::Laurent;

/// Polynomial over F, dense, trailing zeros trimmed. The zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Debug)]
pub struct FPoly<F: Field>(pub Vec<F>);

impl<F: Field> FPoly<F> {
    pub fn zero() -> Self {
        FPoly(Vec::new())
    }

    pub fn one() -> Self {
        FPoly(vec![F::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trim(mut v: Vec<F>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        FPoly(v)
    }

    pub fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.0.len() - 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(F::zero);
            let b = rhs.0.get(i).cloned().unwrap_or_else(F::zero);
            v.push(a.add(&b));
        }
        FPoly::trim(v)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(F::zero);
            let b = rhs.0.get(i).cloned().unwrap_or_else(F::zero);
            v.push(a.sub(&b));
        }
        FPoly::trim(v)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return FPoly::zero();
        }
        let mut v = vec![F::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        FPoly::trim(v)
    }

    /// Multiply by the monomial t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return FPoly::zero();
        }
        let mut v = vec![F::zero(); k];
        v.extend(self.0.iter().cloned());
        FPoly(v)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() || self.0.len() < d.0.len() {
            return (FPoly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let dd = d.0.len();
        let lead_inv = d.0[dd - 1].inv();
        let mut quot = vec![F::zero(); rem.len() - dd + 1];
        for i in (0..=rem.len() - dd).rev() {
            let c = rem[i + dd - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for j in 0..dd {
                rem[i + j] = rem[i + j].sub(&c.mul(&d.0[j]));
            }
            quot[i] = c;
        }
        (FPoly::trim(quot), FPoly::trim(rem))
    }

    /// t-adic valuation and t-free part: self = t^val * part with part(0) != 0.
    pub fn strip_t(&self) -> (Self, usize) {
        if self.is_zero() {
            return (FPoly::zero(), 0);
        }
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (FPoly(self.0[k..].to_vec()), k)
    }

    pub fn from_laurent(p: &Laurent) -> Self {
        // Image of p up to a global t^k unit: the t-free polynomial part.
        if p.is_zero() {
            return FPoly::zero();
        }
        let v: Vec<F> = p.coeffs().iter().map(|c| F::from_int(c)).collect();
        FPoly::trim(v).strip_t().0
    }
}

/// A row vector over F[t, t⁻¹], stored as plain F[t] entries. Rows are only
/// meaningful up to a global t^k unit, which `normalize` strips.
#[derive(Clone, Debug, PartialEq)]
pub struct FRow<F: Field>(pub Vec<FPoly<F>>);

impl<F: Field> FRow<F> {
    /// Build from a Laurent row; the global unit t^min is dropped.
    pub fn from_laurents(row: &[Laurent]) -> Self {
        let mut r = FRow(
            row.iter()
                .map(|p| {
                    if p.is_zero() {
                        FPoly::zero()
                    } else {
                        // keep relative shifts between entries
                        let v: Vec<F> = p.coeffs().iter().map(|c| F::from_int(c)).collect();
                        FPoly::trim(v).shift((p.min_exp() - row_min(row)) as usize)
                    }
                })
                .collect(),
        );
        r.normalize();
        r
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }

    fn leading_col(&self) -> Option<usize> {
        self.0.iter().position(|p| !p.is_zero())
    }

    /// a*self + b*t^k*other, entrywise.
    fn combine(&self, a: &FPoly<F>, other: &Self, b: &FPoly<F>, k: usize) -> Self {
        FRow(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a.mul(x).add(&b.mul(&y.shift(k))))
                .collect(),
        )
    }

    /// Strip the common power of t dividing every entry (a global unit).
    fn normalize(&mut self) {
        let mut min_val: Option<usize> = None;
        for p in &self.0 {
            if !p.is_zero() {
                let v = p.strip_t().1;
                min_val = Some(min_val.map_or(v, |m| m.min(v)));
            }
        }
        if let Some(v) = min_val {
            if v > 0 {
                for p in &mut self.0 {
                    if !p.is_zero() {
                        *p = FPoly(p.0[v..].to_vec());
                    }
                }
            }
        }
    }
}

fn row_min(row: &[Laurent]) -> i64 {
    row.iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.min_exp())
        .min()
        .unwrap_or(0)
}

/// Row span of a matrix over F[t, t⁻¹], kept in echelon form (distinct
/// leading columns, pivots absorbing gcds) so membership queries reduce
/// against one pivot per column.
pub struct LaurentSpan<F: Field> {
    rows: Vec<(usize, FRow<F>)>, // sorted by pivot column
}

impl<F: Field> LaurentSpan<F> {
    pub fn new() -> Self {
        LaurentSpan { rows: Vec::new() }
    }

    pub fn insert(&mut self, mut row: FRow<F>) {
        row.normalize();
        loop {
            let Some(col) = row.leading_col() else { return };
            let slot = self.rows.iter().position(|(c, _)| *c == col);
            match slot {
                None => {
                    let pos = self
                        .rows
                        .iter()
                        .position(|(c, _)| *c > col)
                        .unwrap_or(self.rows.len());
                    self.rows.insert(pos, (col, row));
                    return;
                }
                Some(i) => {
                    // Euclid on the stripped pivot entries; t powers are units.
                    let (sp, vp) = self.rows[i].1 .0[col].strip_t();
                    let (sq, vq) = row.0[col].strip_t();
                    if sq.deg() >= sp.deg() {
                        // row[col] -= (sq div sp) * t^(vq-vp) * pivot
                        let q = sq.div_rem(&sp).0;
                        let neg_q = q.mul(&FPoly(vec![F::one().neg()]));
                        if vq >= vp {
                            row = row.combine(&FPoly::one(), &self.rows[i].1, &neg_q, vq - vp);
                        } else {
                            // scale row globally by t^(vp-vq) first
                            row = row.combine(
                                &FPoly::one().shift(vp - vq),
                                &self.rows[i].1,
                                &neg_q,
                                0,
                            );
                        }
                        row.normalize();
                        if row.0[col].is_zero() {
                            continue; // move to next leading column
                        }
                    } else {
                        std::mem::swap(&mut self.rows[i].1, &mut row);
                        // old pivot keeps a nonzero entry at col; keep reducing
                    }
                }
            }
        }
    }

    /// Is `v` in the span over F[t, t⁻¹]?
    pub fn contains(&self, v: &FRow<F>) -> bool {
        let mut v = v.clone();
        v.normalize();
        loop {
            let Some(col) = v.leading_col() else {
                return true;
            };
            let Some(i) = self.rows.iter().position(|(c, _)| *c == col) else {
                return false;
            };
            let (sp, vp) = self.rows[i].1 .0[col].strip_t();
            let (sq, vq) = v.0[col].strip_t();
            let (q, r) = sq.div_rem(&sp);
            if !r.is_zero() {
                return false;
            }
            let neg_q = q.mul(&FPoly(vec![F::one().neg()]));
            if vq >= vp {
                v = v.combine(&FPoly::one(), &self.rows[i].1, &neg_q, vq - vp);
            } else {
                v = v.combine(&FPoly::one().shift(vp - vq), &self.rows[i].1, &neg_q, 0);
            }
            v.normalize();
            debug_assert!(v.0[col].is_zero());
        }
    }
}

impl<F: Field> Default for LaurentSpan<F> {
    fn default() -> Self {
        Self::new()
    }
}

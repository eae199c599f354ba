//! Fox calculus and the Alexander polynomial/module.
//!
//! For a knot presentation every generator abelianizes to t, so the Fox
//! derivative of a word is a row over ℤ[t, t⁻¹]. The polynomial is the
//! determinant of the matrix with one relator row and one generator column
//! removed, computed by sparse elimination on unit pivots (Wirtinger rows
//! always offer one) with a fraction-free dense finish.

use super::{wirtinger, Presentation, Word};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::{FRow, Fp, Laurent, LaurentSpan, Rat};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Fox derivative row of a word, abelianized with every generator sent
/// to t. Entry g holds d(w)/d(x_g).
pub fn fox_row(n: usize, w: &Word) -> Vec<Laurent> {
    let mut row = vec![Laurent::zero(); n];
    let mut prefix: i64 = 0;
    for (g, e) in w.expand() {
        if e > 0 {
            row[g] = &row[g] + &Laurent::monomial(1, prefix);
            prefix += 1;
        } else {
            prefix -= 1;
            row[g] = &row[g] - &Laurent::monomial(1, prefix);
        }
    }
    row
}

/// Full Fox matrix: one row per relator, one column per generator.
pub fn fox_matrix(pres: &Presentation) -> Vec<Vec<Laurent>> {
    let n = pres.generator_count();
    pres.relator_words().iter().map(|w| fox_row(n, w)).collect()
}

/// Alexander polynomial of a knot diagram, normalized so the lowest
/// exponent is 0 and the top coefficient positive. Fails loudly when
/// Δ(1) ≠ ±1, which signals a corrupt presentation.
pub fn alexander_polynomial(d: &Diagram) -> Result<Laurent> {
    if d.component_count() != 1 {
        return Err(Error::NeedsComponentSelection(d.component_count()));
    }
    alexander_polynomial_via(d, 0, 0)
}

/// Same, deleting the chosen relator row and generator column; any choice
/// yields the same normalized polynomial (tested as an invariant).
pub fn alexander_polynomial_via(d: &Diagram, drop_row: usize, drop_col: usize) -> Result<Laurent> {
    if d.component_count() != 1 {
        return Err(Error::NeedsComponentSelection(d.component_count()));
    }
    let pres = wirtinger(d, 0)?;
    presentation_alexander_via(&pres, drop_row, drop_col)
}

/// Alexander polynomial straight from a knot presentation.
pub fn presentation_alexander(pres: &Presentation) -> Result<Laurent> {
    presentation_alexander_via(pres, 0, 0)
}

pub fn presentation_alexander_via(
    pres: &Presentation,
    drop_row: usize,
    drop_col: usize,
) -> Result<Laurent> {
    if !pres.is_knot_presentation() {
        return Err(Error::NeedsComponentSelection(pres.component_count));
    }
    let n = pres.generator_count();
    if pres.relations.is_empty() {
        return Ok(Laurent::one());
    }
    if drop_row >= pres.relations.len() || drop_col >= n {
        return Err(Error::Other("row/column out of range".into()));
    }
    let matrix = fox_matrix(pres);
    let mut rows: Vec<BTreeMap<usize, Laurent>> = Vec::new();
    for (i, row) in matrix.iter().enumerate() {
        if i == drop_row {
            continue;
        }
        let mut sparse = BTreeMap::new();
        for (j, p) in row.iter().enumerate() {
            if j != drop_col && !p.is_zero() {
                sparse.insert(j, p.clone());
            }
        }
        rows.push(sparse);
    }
    let det = det_sparse(rows)?;
    if det.is_zero() {
        return Err(Error::AlexanderAtOne("0".into()));
    }
    let norm = det.unit_normalized();
    let at_one = norm.eval_at_one();
    if at_one != BigInt::one() && at_one != -BigInt::one() {
        return Err(Error::AlexanderAtOne(at_one.to_string()));
    }
    Ok(norm)
}

/// Determinant of a square sparse Laurent matrix, up to ±t^k (which is all
/// the Alexander normalization keeps). Eliminates on monomial pivots first,
/// then runs fraction-free Bareiss on the dense remainder.
fn det_sparse(mut rows: Vec<BTreeMap<usize, Laurent>>) -> Result<Laurent> {
    let n = rows.len();
    let mut active_rows: Vec<usize> = (0..n).collect();
    let mut active_cols: Vec<usize> = {
        let mut cols: Vec<usize> = rows
            .iter()
            .flat_map(|r| r.keys().copied())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        cols.sort_unstable();
        cols
    };
    if active_cols.len() != n {
        return Ok(Laurent::zero()); // structurally singular
    }

    loop {
        // Pick the unit (monomial ±t^k) pivot with least fill-in.
        let mut best: Option<(usize, usize, usize)> = None; // (cost, row, col)
        let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
        for &ri in &active_rows {
            for &c in rows[ri].keys() {
                *col_count.entry(c).or_insert(0) += 1;
            }
        }
        for &ri in &active_rows {
            for (&c, p) in &rows[ri] {
                if p.is_unit() {
                    let cost = (rows[ri].len() - 1) * (col_count[&c] - 1);
                    if best.is_none_or(|(bc, _, _)| cost < bc) {
                        best = Some((cost, ri, c));
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };

        let pivot = rows[pr][&pc].clone();
        let pivot_row = rows[pr].clone();
        let ri_pos = active_rows.iter().position(|&r| r == pr).unwrap();
        let ci_pos = active_cols.iter().position(|&c| c == pc).unwrap();
        active_rows.remove(ri_pos);
        active_cols.remove(ci_pos);

        // det = (-1)^(i+j) * pivot * det(minor); fold sign and unit into a
        // running factor applied at the end. Since the result is normalized
        // up to units, only the minor matters; still, keep exactness.
        for &ri in &active_rows {
            let Some(coef) = rows[ri].get(&pc).cloned() else {
                continue;
            };
            let factor = coef.div_exact(&pivot);
            let mut updated = rows[ri].clone();
            updated.remove(&pc);
            for (&c, p) in &pivot_row {
                if c == pc {
                    continue;
                }
                let delta = &factor * p;
                let cur = updated.remove(&c).unwrap_or_else(Laurent::zero);
                let next = &cur - &delta;
                if !next.is_zero() {
                    updated.insert(c, next);
                }
            }
            rows[ri] = updated;
        }
        if active_rows.is_empty() {
            return Ok(Laurent::one());
        }
    }

    // Dense fraction-free finish on whatever is left.
    let k = active_rows.len();
    if k == 0 {
        return Ok(Laurent::one());
    }
    let mut m: Vec<Vec<Laurent>> = active_rows
        .iter()
        .map(|&ri| {
            active_cols
                .iter()
                .map(|&c| rows[ri].get(&c).cloned().unwrap_or_else(Laurent::zero))
                .collect()
        })
        .collect();
    // clear negative exponents; result only matters up to units
    for row in m.iter_mut() {
        let min = row
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.min_exp())
            .min()
            .unwrap_or(0);
        if min != 0 {
            for p in row.iter_mut() {
                *p = p.shifted(-min);
            }
        }
    }
    det_bareiss(m)
}

/// Fraction-free Bareiss determinant over ℤ[t], result up to sign.
fn det_bareiss(mut m: Vec<Vec<Laurent>>) -> Result<Laurent> {
    let n = m.len();
    if n == 0 {
        return Ok(Laurent::one());
    }
    let mut prev = Laurent::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Laurent::zero());
            };
            m.swap(k, swap);
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let a = &(&m[i][j] * &pivot) - &(&m[i][k] * &m[k][j]);
                m[i][j] = a.div_exact(&prev);
            }
            m[i][k] = Laurent::zero();
        }
        prev = pivot;
    }
    Ok(m[n - 1][n - 1].clone())
}

/// Per-ring outcome of the Alexander-module membership test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    /// Rings tested, by name, with a zero/nonzero verdict each.
    pub rings: Vec<(String, bool)>,
    /// The Fox row of the word (the class vector), printed per generator.
    pub class_vector: Vec<String>,
    /// True when the class vanished over every tested ring.
    pub zero: bool,
}

/// Decide whether a word of exponent sum 0 maps to zero in the Alexander
/// module tensored with ℚ[t,t⁻¹] and with 𝔽_p[t,t⁻¹] for p in {2,3,5,7}:
/// the computable shadow of membership in the second commutator subgroup.
pub fn alexander_class(pres: &Presentation, w: &Word) -> Result<ClassReport> {
    if !pres.is_knot_presentation() {
        return Err(Error::NeedsComponentSelection(pres.component_count));
    }
    let s = w.exponent_sum();
    if s != 0 {
        return Err(Error::NonzeroExponentSum(s));
    }
    let n = pres.generator_count();
    let matrix = fox_matrix(pres);
    let target = fox_row(n, w);

    fn member<F: crate::poly::Field>(matrix: &[Vec<Laurent>], target: &[Laurent]) -> bool {
        let mut span = LaurentSpan::<F>::new();
        for row in matrix {
            span.insert(FRow::from_laurents(row));
        }
        span.contains(&FRow::from_laurents(target))
    }

    let rings: Vec<(String, bool)> = vec![
        ("Q[t,t^-1]".to_string(), member::<Rat>(&matrix, &target)),
        ("F2[t,t^-1]".to_string(), member::<Fp<2>>(&matrix, &target)),
        ("F3[t,t^-1]".to_string(), member::<Fp<3>>(&matrix, &target)),
        ("F5[t,t^-1]".to_string(), member::<Fp<5>>(&matrix, &target)),
        ("F7[t,t^-1]".to_string(), member::<Fp<7>>(&matrix, &target)),
    ];
    let zero = rings.iter().all(|(_, z)| *z);
    Ok(ClassReport {
        rings,
        class_vector: target.iter().map(|p| p.to_string()).collect(),
        zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn delta(text: &str) -> Laurent {
        let d = Diagram::parse_pd(text).unwrap();
        alexander_polynomial(&d).unwrap()
    }

    #[test]
    fn unknot_is_one() {
        assert!(delta(fixtures::UNKNOT).is_one());
    }

    #[test]
    fn trefoil_polynomial() {
        assert_eq!(
            delta(fixtures::TREFOIL),
            Laurent::from_coeffs(0, vec![1, -1, 1])
        );
    }

    #[test]
    fn figure_eight_polynomial() {
        assert_eq!(
            delta(fixtures::FIGURE_EIGHT),
            Laurent::from_coeffs(0, vec![1, -3, 1])
        );
    }

    #[test]
    fn five_two_polynomial() {
        assert_eq!(
            delta(fixtures::FIVE_TWO),
            Laurent::from_coeffs(0, vec![2, -3, 2])
        );
    }

    #[test]
    fn column_choice_does_not_matter() {
        let d = Diagram::parse_pd(fixtures::FIGURE_EIGHT).unwrap();
        let base = alexander_polynomial(&d).unwrap();
        for row in 0..4 {
            for col in 0..4 {
                assert_eq!(alexander_polynomial_via(&d, row, col).unwrap(), base);
            }
        }
    }

    #[test]
    fn commutator_of_meridian_and_longitude_unknot_is_zero() {
        let d = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
        let pres = wirtinger(&d, 0).unwrap();
        let m = Word::generator(pres.meridian);
        let l = pres.longitude.clone();
        let w = m.concat(&l).concat(&m.inverse()).concat(&l.inverse());
        let rep = alexander_class(&pres, &w).unwrap();
        assert!(rep.zero);
    }

    #[test]
    fn trefoil_commutator_of_generators_is_nonzero() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let pres = wirtinger(&d, 0).unwrap();
        let a = Word::generator(0);
        let b = Word::generator(1);
        let w = a.concat(&b).concat(&a.inverse()).concat(&b.inverse());
        let rep = alexander_class(&pres, &w).unwrap();
        assert!(!rep.zero);
        // over Q it is already nonzero
        assert!(!rep.rings[0].1);
    }

    #[test]
    fn meridian_rejected_by_precondition() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let pres = wirtinger(&d, 0).unwrap();
        let err = alexander_class(&pres, &Word::generator(0)).unwrap_err();
        assert!(matches!(err, Error::NonzeroExponentSum(1)));
    }
}

//! Freely reduced words in the presentation's generators.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A word as (generator, exponent) letters, adjacent letters merged and
/// zero exponents dropped.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Word(Vec<(usize, i32)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn from_letters(letters: Vec<(usize, i32)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: usize, e: i32) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, e));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::identity();
        for &(g, e) in self.0.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    pub fn conjugate_by(&self, conj: &Word) -> Word {
        conj.concat(self).concat(&conj.inverse())
    }

    pub fn pow(&self, n: i32) -> Word {
        let mut w = Word::identity();
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        for _ in 0..n.abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Substitute each generator by a word (the map of a homomorphism on
    /// free words) and freely reduce.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.0 {
            out = out.concat(&images[g].pow(e));
        }
        out
    }

    /// Expand into single-exponent letters.
    pub fn expand(&self) -> Vec<(usize, i32)> {
        let mut out = Vec::new();
        for &(g, e) in &self.0 {
            let step = if e > 0 { 1 } else { -1 };
            for _ in 0..e.abs() {
                out.push((g, step));
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("x{g}")
                } else {
                    format!("x{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

//! Exact Laurent polynomials over ℤ with arbitrary-precision coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of ℤ[t, t⁻¹]. Zero is the empty coefficient vector; otherwise
/// `coeffs[0]` (the t^min coefficient) and the last entry are nonzero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    min: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            min: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    /// c·t^k
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent {
                min: k,
                coeffs: vec![c],
            }
        }
    }

    /// Build from integer coefficients starting at exponent `min`.
    pub fn from_coeffs(min: i64, coeffs: Vec<i64>) -> Self {
        Laurent::from_big(min, coeffs.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big(min: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Laurent { min, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_exp(&self) -> i64 {
        self.min
    }

    pub fn max_exp(&self) -> i64 {
        self.min + self.coeffs.len() as i64 - 1
    }

    /// Degree span (number of stored coefficients). Zero polynomial -> 0.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        if k < self.min || k > self.max_exp() {
            BigInt::zero()
        } else {
            self.coeffs[(k - self.min) as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True when the polynomial is a unit of ℤ[t,t⁻¹]: ±t^k.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn shifted(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            min: self.min + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Substitute t -> 1/t.
    pub fn reciprocal(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        Laurent::from_big(-self.max_exp(), coeffs)
    }

    /// gcd of all coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    /// Exact division, panicking if `d` does not divide `self` in ℤ[t,t⁻¹].
    /// Used by fraction-free elimination where divisibility is guaranteed.
    pub fn div_exact(&self, d: &Laurent) -> Laurent {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let m = d.coeffs.len();
        assert!(n >= m, "non-exact polynomial division");
        let lead = &d.coeffs[m - 1];
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let top = rem[i + m - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::div_rem(top, lead.clone());
            assert!(r.is_zero(), "non-exact polynomial division");
            for j in 0..m {
                let t = &d.coeffs[j] * &q;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "non-exact polynomial division"
        );
        Laurent::from_big(self.min - d.min, quot)
    }

    /// Multiply by c·t^k in place semantics (returns new value).
    pub fn scale(&self, c: &BigInt, k: i64) -> Laurent {
        if c.is_zero() || self.is_zero() {
            return Laurent::zero();
        }
        Laurent::from_big(self.min + k, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Normalize up to units: lowest exponent 0, top coefficient positive.
    pub fn unit_normalized(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut p = self.clone();
        p.min = 0;
        if p.coeffs.last().unwrap().is_negative() {
            for c in &mut p.coeffs {
                *c = -std::mem::take(c);
            }
        }
        p
    }

    /// Equality up to multiplication by ±t^k.
    pub fn eq_up_to_units(&self, other: &Laurent) -> bool {
        self.unit_normalized() == other.unit_normalized()
    }

    /// Primitive part (content divided out), sign preserved.
    pub fn primitive_part(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let c = self.content();
        Laurent::from_big(self.min, self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// gcd in ℤ[t] up to sign, computed by primitive PRS. The result is
    /// primitive times the gcd of contents, unit-normalized at the end.
    pub fn gcd(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.unit_normalized();
        }
        if other.is_zero() {
            return self.unit_normalized();
        }
        let content = num_integer::gcd(self.content(), other.content());
        let mut a = self.primitive_part().unit_normalized();
        let mut b = other.primitive_part().unit_normalized();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part().unit_normalized();
            a = b;
            b = r;
        }
        a.scale(&content, 0).unit_normalized()
    }

    /// Pseudo-remainder of self by d (both treated as elements of ℤ[t] after
    /// unit normalization; result well-defined up to units, which is all the
    /// PRS gcd needs).
    fn pseudo_rem(&self, d: &Laurent) -> Laurent {
        let mut a = self.unit_normalized();
        let b = d.unit_normalized();
        if a.span() < b.span() {
            return a;
        }
        let lead = b.coeffs.last().unwrap().clone();
        while !a.is_zero() && a.span() >= b.span() {
            let top = a.coeffs.last().unwrap().clone();
            let shift = a.max_exp() - b.max_exp();
            let scaled_a = a.scale(&lead, 0);
            let scaled_b = b.scale(&top, shift);
            a = &scaled_a - &scaled_b;
        }
        a
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut r = Laurent::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min.min(rhs.min);
        let max = self.max_exp().max(rhs.max_exp());
        let mut coeffs = vec![BigInt::zero(); (max - min + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min - min) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min - min) as usize + i] += c;
        }
        Laurent::from_big(min, coeffs)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            min: self.min,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::from_big(self.min + rhs.min, coeffs)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.min + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
        Ok(())
    }
}

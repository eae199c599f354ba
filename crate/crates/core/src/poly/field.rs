//! Field scalars for module computations: ℚ and the small prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: &BigInt) -> Self;
}

/// ℤ/p for a small prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // p is tiny; exponentiation suffices
        let mut acc = 1u64;
        let mut base = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
    fn from_int(n: &BigInt) -> Self {
        let m = n.mod_floor(&BigInt::from(P));
        Fp(m.try_into().unwrap_or(0))
    }
}

/// Arbitrary-precision rational, always stored reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat {
    num: BigInt,
    den: BigInt,
}

impl Rat {
    fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Rat {
                num,
                den: BigInt::one(),
            };
        }
        let g = num_integer::gcd(num.clone(), den.clone());
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rat { num, den }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }
    fn one() -> Self {
        Rat {
            num: BigInt::one(),
            den: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn neg(&self) -> Self {
        Rat {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        Rat::new(self.den.clone(), self.num.clone())
    }
    fn from_int(n: &BigInt) -> Self {
        Rat {
            num: n.clone(),
            den: BigInt::one(),
        }
    }
}

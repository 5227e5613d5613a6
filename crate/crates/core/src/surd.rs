//! Nonnegative sums `Σ c_i √m_i` with integer `c_i, m_i`, compared against
//! integers exactly and rendered in decimal without floating point.
//!
//! A sum is an integer iff every radicand with a nonzero coefficient is a
//! perfect square; otherwise it is irrational, and refining the precision
//! of its floor always terminates.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Surd {
    terms: Vec<(BigUint, BigUint)>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn integer(c: impl Into<BigUint>) -> Self {
        Surd::zero().plus(c, 1u32)
    }

    /// Adds `coeff * sqrt(radicand)`.
    pub fn plus(mut self, coeff: impl Into<BigUint>, radicand: impl Into<BigUint>) -> Self {
        let coeff = coeff.into();
        let radicand = radicand.into();
        if coeff.is_zero() || radicand.is_zero() {
            return self;
        }
        let root = radicand.sqrt();
        if &root * &root == radicand {
            self.terms.push((coeff * root, BigUint::one()));
        } else {
            self.terms.push((coeff, radicand));
        }
        self
    }

    pub fn terms(&self) -> &[(BigUint, BigUint)] {
        &self.terms
    }

    /// The exact value when it is an integer.
    pub fn as_integer(&self) -> Option<BigUint> {
        self.terms
            .iter()
            .all(|(_, m)| m.is_one())
            .then(|| self.terms.iter().map(|(c, _)| c).sum())
    }

    // Σ floor(c √m · scale); the true scaled value lies in [S, S + terms).
    fn scaled_lower(&self, scale: &BigUint) -> BigUint {
        self.terms
            .iter()
            .map(|(c, m)| {
                if m.is_one() {
                    c * scale
                } else {
                    let cs = c * scale;
                    (&cs * &cs * m).sqrt()
                }
            })
            .sum()
    }

    pub fn floor(&self) -> BigUint {
        if let Some(v) = self.as_integer() {
            return v;
        }
        let slack = BigUint::from(self.terms.len());
        let mut bits = 32u64;
        loop {
            let lower = self.scaled_lower(&(BigUint::one() << bits));
            let lo = &lower >> bits;
            let hi = (&lower + &slack) >> bits;
            if lo == hi {
                return lo;
            }
            bits *= 2;
        }
    }

    pub fn ceil(&self) -> BigUint {
        match self.as_integer() {
            Some(v) => v,
            None => self.floor() + 1u32,
        }
    }

    /// `a <= self`, decided exactly.
    pub fn is_at_least(&self, a: &BigUint) -> bool {
        a <= &self.floor()
    }

    /// Decimal scientific notation with `sig` significant digits, e.g.
    /// `7.21110255093e0` for `2√13` and `sig = 12`.
    pub fn to_scientific(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.terms.is_empty() {
            return alloc::format!("{}e0", pad_mantissa("0", sig));
        }
        let ten = BigUint::from(10u32);
        let mut k = sig as u32 + 8;
        let digits = loop {
            let lower = self.scaled_lower(&ten.pow(k)).to_string();
            if lower.len() >= sig + 6 {
                break (lower, k);
            }
            k += 16;
        };
        let (s, k) = digits;
        let mut exp = s.len() as i64 - 1 - k as i64;
        let mut mantissa: Vec<u8> = s.as_bytes()[..sig].iter().map(|b| b - b'0').collect();
        if s.as_bytes()[sig] >= b'5' {
            let mut i = sig;
            loop {
                if i == 0 {
                    mantissa.insert(0, 1);
                    mantissa.truncate(sig);
                    exp += 1;
                    break;
                }
                i -= 1;
                if mantissa[i] == 9 {
                    mantissa[i] = 0;
                } else {
                    mantissa[i] += 1;
                    break;
                }
            }
        }
        let text: String = mantissa.iter().map(|d| char::from(b'0' + d)).collect();
        alloc::format!("{}e{}", pad_mantissa(&text, sig), exp)
    }
}

fn pad_mantissa(digits: &str, sig: usize) -> String {
    let mut out = String::with_capacity(sig + 1);
    out.push_str(&digits[..1]);
    if sig > 1 {
        out.push('.');
        out.push_str(&digits[1..]);
        for _ in digits.len()..sig {
            out.push('0');
        }
    }
    out
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scientific(30))
    }
}

//! Finite fields `F_q`, `q = p^k`, with exact arithmetic.
//!
//! An element is stored as a single packed integer: the residue
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is encoded as `c_0 + c_1 p + ... +
//! c_{k-1} p^{k-1}`. Ascending packed values are exactly the enumeration
//! order of the field, so `0` and `1` are the first two elements and the
//! prime subfield occupies the packed values `0..p`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest field order the engine accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of some [`GaloisField`], in packed residue form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = FieldElement(0);
    pub const ONE: Self = FieldElement(1);

    /// Position of the element in the field's enumeration order.
    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
}

struct LogTables {
    log: Vec<u32>,
    // exp[i] = g^i for 0 <= i < 2(q-1), so log sums never need a reduction.
    exp: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    // p^i for i in 0..k
    place: Vec<u32>,
    tables: Option<LogTables>,
}

/// The finite field `F_{p^k}` presented as `F_p[x] / (modulus)`.
///
/// Cloning is cheap; the multiplication tables are shared.
#[derive(Clone)]
pub struct GaloisField {
    inner: Arc<Inner>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.inner.p)
            .field("k", &self.inner.k)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    /// Builds `F_{p^k}`.
    ///
    /// With `k > 1` and no modulus, the lexicographically smallest monic
    /// irreducible polynomial of degree `k` is chosen, comparing coefficient
    /// sequences from the constant term upwards. A supplied modulus is given
    /// in ascending coefficient order and must have `k + 1` entries; for
    /// `k = 1` it must be the polynomial `x`.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidExtensionDegree(k));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::BudgetExceeded {
                what: "field order",
                size: p as u128,
                limit: MAX_FIELD_ORDER as u128,
            });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::BudgetExceeded {
                what: "field order",
                size: q,
                limit: MAX_FIELD_ORDER as u128,
            });
        }
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                validate_modulus(p, k, m)?;
                m.to_vec()
            }
            None if k == 1 => vec![0, 1],
            None => smallest_irreducible(p, k),
        };
        let place = (0..k).map(|i| p.pow(i)).collect();
        let mut inner = Inner {
            p,
            k,
            q: q as u32,
            modulus,
            place,
            tables: None,
        };
        if k > 1 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(GaloisField {
            inner: Arc::new(inner),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^e}` for a prime base field; base-field constants keep their
    /// packed value in the extension.
    pub fn extension(&self, e: u32) -> Result<Self> {
        if e == 1 {
            return Ok(self.clone());
        }
        if self.inner.k != 1 {
            return Err(Error::UnsupportedExtension);
        }
        Self::new(self.inner.p as u64, e, None)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Ascending coefficients of the defining polynomial (`[0, 1]` for a
    /// prime field).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The element at position `index` of the enumeration order.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.inner.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    #[inline]
    pub(crate) fn element_unchecked(&self, index: u32) -> FieldElement {
        debug_assert!(index < self.inner.q);
        FieldElement(index)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.inner.k as usize {
            return Err(Error::ArityMismatch {
                expected: self.inner.k as usize,
                found: coeffs.len(),
            });
        }
        let mut packed = 0u32;
        for (&c, &w) in coeffs.iter().zip(&self.inner.place) {
            if c >= self.inner.p {
                return Err(Error::FieldMismatch);
            }
            packed += c * w;
        }
        Ok(FieldElement(packed))
    }

    /// Residue coefficients `c_0, ..., c_{k-1}` of `a`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.inner.k as usize);
        let mut v = a.0;
        for _ in 0..self.inner.k {
            out.push(v % self.inner.p);
            v /= self.inner.p;
        }
        out
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.inner.q
    }

    pub fn check(&self, a: FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// All `q` elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.inner.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= inner.p { s - inner.p } else { s });
        }
        if inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &inner.place {
            let s = x % inner.p + y % inner.p;
            out += if s >= inner.p { s - inner.p } else { s } * w;
            x /= inner.p;
            y /= inner.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.k == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { inner.p - a.0 });
        }
        if inner.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &inner.place {
            let c = x % inner.p;
            if c != 0 {
                out += (inner.p - c) * w;
            }
            x /= inner.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        match &inner.tables {
            None => FieldElement(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32),
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElement(0)
                } else {
                    FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
                }
            }
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on the
    /// residue and the modulus.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Ok(FieldElement(inv_mod(a.0, p)));
        }
        let residue = trim(self.coeffs(a));
        let inv = fp::inverse_mod(&residue, &self.inner.modulus, p);
        let mut padded = inv;
        padded.resize(self.inner.k as usize, 0);
        self.from_coeffs(&padded)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by repeated squaring; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Checked binary/unary arithmetic; `b` is ignored for `Neg`.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Neg => self.neg(a),
        })
    }

    /// Reference multiplication by schoolbook polynomial product and
    /// reduction, independent of the log tables.
    #[cfg(test)]
    pub(crate) fn mul_by_reduction(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let prod = fp::mul(&self.coeffs(a), &self.coeffs(b), self.inner.p);
        let mut r = fp::rem(&prod, &self.inner.modulus, self.inner.p);
        r.resize(self.inner.k as usize, 0);
        self.from_coeffs(&r).expect("reduced residue is canonical")
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn validate_modulus(p: u32, k: u32, m: &[u32]) -> Result<()> {
    if m.len() != k as usize + 1 {
        return Err(Error::InvalidModulus("modulus must have k+1 coefficients"));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus("coefficient outside [0, p)"));
    }
    if m[k as usize] != 1 {
        return Err(Error::InvalidModulus("modulus must be monic"));
    }
    if k == 1 {
        if m != [0, 1] {
            return Err(Error::InvalidModulus("prime fields use the modulus x"));
        }
        return Ok(());
    }
    if !fp::is_irreducible(m, p) {
        return Err(Error::NotIrreducible(p));
    }
    Ok(())
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    // Counting upwards with c_0 as the most significant digit walks the
    // candidates in ascending lexicographic order from the constant term.
    let mut digits = vec![0u32; k as usize];
    loop {
        let mut cand = digits.clone();
        cand.push(1);
        if fp::is_irreducible(&cand, p) {
            return cand;
        }
        let mut i = k as usize;
        loop {
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn build_tables(inner: &Inner) -> LogTables {
    let p = inner.p;
    let k = inner.k as usize;
    let q = inner.q;
    let order = q - 1;
    let pack = |c: &[u32]| -> u32 { c.iter().zip(&inner.place).map(|(a, w)| a * w).sum() };
    let unpack = |mut v: u32| -> Vec<u32> {
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            out.push(v % p);
            v /= p;
        }
        trim(out)
    };
    let mulmod = |a: &[u32], b: &[u32]| fp::rem(&fp::mul(a, b, p), &inner.modulus, p);
    let powmod = |a: &[u32], mut e: u32| {
        let mut acc = vec![1u32];
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base);
            }
            base = mulmod(&base, &base);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(order);
    let generator = (2..q)
        .map(unpack)
        .find(|g| factors.iter().all(|&l| powmod(g, order / l) != [1]))
        .expect("the multiplicative group of a finite field is cyclic");

    let mut log = vec![0u32; q as usize];
    let mut exp = vec![0u32; 2 * order as usize];
    let mut cur = vec![1u32];
    for i in 0..order {
        let mut padded = cur.clone();
        padded.resize(k, 0);
        let v = pack(&padded);
        exp[i as usize] = v;
        exp[(i + order) as usize] = v;
        log[v as usize] = i;
        cur = mulmod(&cur, &generator);
    }
    LogTables { log, exp }
}

/// Dense polynomials over `F_p`, ascending coefficients, no trailing zeros.
pub(crate) mod fp {
    use alloc::vec;
    use alloc::vec::Vec;

    use super::{inv_mod, trim};

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p) as u64;
        let mut quot = vec![0u32; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
            quot[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (c as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        divmod(a, b, p).1
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub fn inverse_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quot, r2) = divmod(&r0, &r1, p);
            let t2 = sub(&t0, &mul(&quot, &t1, p), p);
            (r0, r1) = (r1, r2);
            (t0, t1) = (t1, t2);
        }
        // r0 is a nonzero constant since gcd(a, m) = 1.
        let c = inv_mod(r0[0], p);
        mul(&t0, &[c], p)
    }

    /// Exhaustive trial division by every monic polynomial of degree at
    /// most `deg(f) / 2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let deg = f.len().saturating_sub(1);
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let mut low = vec![0u32; d];
            loop {
                let mut cand = low.clone();
                cand.push(1);
                if rem(&f, &cand, p).is_empty() {
                    return false;
                }
                let mut i = 0;
                loop {
                    if i == d {
                        break;
                    }
                    low[i] += 1;
                    if low[i] < p {
                        break;
                    }
                    low[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<GaloisField> {
        let mut out = Vec::new();
        for p in 2..=49u64 {
            if !is_prime(p) {
                continue;
            }
            let mut k = 1;
            while p.pow(k) <= 49 {
                out.push(GaloisField::new(p, k, None).unwrap());
                k += 1;
            }
        }
        out
    }

    #[test]
    fn prime_field_construction() {
        let f = GaloisField::new(5, 1, None).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
        assert!(f.is_prime_field());
    }

    #[test]
    fn f4_modulus_matches_exhaustive_search() {
        // Oracle: a monic quadratic over F_2 is irreducible iff it has no root.
        let mut irreducible = Vec::new();
        for c0 in 0..2u32 {
            for c1 in 0..2u32 {
                let has_root = (0..2u32).any(|x| (x * x + c1 * x + c0) % 2 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f = GaloisField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), irreducible[0].as_slice());
    }

    #[test]
    fn search_picks_lexicographically_smallest() {
        // x^3 + x^2 + 1 = (1,0,1,1) precedes x^3 + x + 1 = (1,1,0,1).
        assert_eq!(
            GaloisField::new(2, 3, None).unwrap().modulus(),
            &[1, 0, 1, 1]
        );
        assert_eq!(GaloisField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(GaloisField::new(5, 2, None).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            GaloisField::new(6, 1, None).unwrap_err(),
            Error::NotPrime(6)
        );
        assert_eq!(
            GaloisField::new(1, 1, None).unwrap_err(),
            Error::NotPrime(1)
        );
        assert!(matches!(
            GaloisField::new(2, 21, None),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            GaloisField::new(1_048_583, 1, None),
            Err(Error::BudgetExceeded { .. })
        ));
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(
            GaloisField::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::NotIrreducible(2)
        );
        assert!(matches!(
            GaloisField::new(2, 2, Some(&[1, 1, 0])),
            Err(Error::InvalidModulus(_))
        ));
        assert_eq!(
            GaloisField::new(2, 0, None).unwrap_err(),
            Error::InvalidExtensionDegree(0)
        );
        // x^4 + x^3 + x^2 + x + 1 has no root over F_2 but is irreducible;
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1 has no root yet factors.
        assert!(GaloisField::new(2, 4, Some(&[1, 1, 1, 1, 1])).is_ok());
        assert_eq!(
            GaloisField::new(2, 4, Some(&[1, 0, 1, 0, 1])).unwrap_err(),
            Error::NotIrreducible(2)
        );
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = GaloisField::prime(5).unwrap();
        let e = |i| f.element(i).unwrap();
        assert_eq!(f.arith(e(3), e(4), FieldOp::Add).unwrap(), e(2));
        assert_eq!(f.arith(e(3), e(4), FieldOp::Mul).unwrap(), e(2));
        assert_eq!(f.arith(e(3), e(4), FieldOp::Sub).unwrap(), e(4));
        assert_eq!(f.arith(e(3), e(0), FieldOp::Neg).unwrap(), e(2));
        assert_eq!(f.inv(e(2)).unwrap(), e(3));
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(
            f7.inv(f7.element(3).unwrap()).unwrap(),
            f7.element(5).unwrap()
        );
        assert_eq!(f.inv(e(0)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn f4_arithmetic() {
        let f = GaloisField::new(2, 2, None).unwrap();
        let g = f.from_coeffs(&[0, 1]).unwrap();
        let g1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(g, g), g1);
        assert_eq!(f.inv(g).unwrap(), g1);
        assert_eq!(f.coeffs(g1), vec![1, 1]);
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let f = GaloisField::prime(5).unwrap();
        let foreign = GaloisField::prime(7).unwrap().element(6).unwrap();
        assert_eq!(
            f.arith(foreign, f.one(), FieldOp::Add).unwrap_err(),
            Error::FieldMismatch
        );
        assert_eq!(f.element(5).unwrap_err(), Error::FieldMismatch);
        assert_eq!(f.from_coeffs(&[5]).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn enumeration_order() {
        let f3 = GaloisField::prime(3).unwrap();
        let idx: Vec<u32> = f3.elements().map(FieldElement::index).collect();
        assert_eq!(idx, vec![0, 1, 2]);
        let f4 = GaloisField::new(2, 2, None).unwrap();
        let coeffs: Vec<Vec<u32>> = f4.elements().map(|a| f4.coeffs(a)).collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(GaloisField::new(5, 2, None).unwrap().elements().count(), 25);
    }

    #[test]
    fn enumeration_is_a_bijection() {
        for f in small_fields() {
            let all: Vec<Vec<u32>> = f.elements().map(|a| f.coeffs(a)).collect();
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), f.order() as usize);
            for (a, c) in f.elements().zip(&all) {
                assert_eq!(f.from_coeffs(c).unwrap(), a);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.mul(a, f.one()), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "{f:?} {a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.mul_by_reduction(a, b));
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order() as u64), a);
            }
        }
    }

    #[test]
    fn extension_embeds_prime_subfield() {
        let f = GaloisField::prime(3).unwrap();
        let f9 = f.extension(2).unwrap();
        assert_eq!(f9.order(), 9);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f9.mul(a, b), f.mul(a, b));
                assert_eq!(f9.add(a, b), f.add(a, b));
            }
        }
        assert_eq!(f9.extension(2).unwrap_err(), Error::UnsupportedExtension);
    }

    #[test]
    fn large_field_tables() {
        let f = GaloisField::new(2, 16, None).unwrap();
        let a = f.element(12345).unwrap();
        let b = f.element(54321).unwrap();
        assert_eq!(f.mul(a, b), f.mul_by_reduction(a, b));
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ring_laws(fi in 0usize..3, a in 0u32..1 << 20, b in 0u32..1 << 20, c in 0u32..1 << 20) {
                let f = [
                    GaloisField::new(3, 5, None).unwrap(),
                    GaloisField::new(7, 3, None).unwrap(),
                    GaloisField::prime(1_009).unwrap(),
                ][fi].clone();
                let q = f.order();
                let (a, b, c) = (
                    f.element(a % q).unwrap(),
                    f.element(b % q).unwrap(),
                    f.element(c % q).unwrap(),
                );
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }
}

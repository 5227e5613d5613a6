//! Sparse multivariate polynomials over a [`GaloisField`].
//!
//! Terms are kept in canonical form: nonzero coefficients, distinct exponent
//! vectors, sorted lexicographically descending. Two polynomials are equal
//! iff their term lists are identical.
//!
//! The text form is `coeff:e0,e1,...` terms joined by `" + "`. For `k > 1`
//! the coefficient is written `c0;c1;...;c_{k-1}` in ascending basis order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};

/// Cap on the total degree of a single term.
pub const MAX_TERM_DEGREE: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElement,
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    field: GaloisField,
    nvars: usize,
    terms: Vec<Term>,
}

/// Verdict of [`SparsePolynomial::homogeneity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(u64),
    /// The zero polynomial.
    AnyDegree,
    NotHomogeneous,
}

/// Verdict of [`SparsePolynomial::multihomogeneity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multihomogeneity {
    Degrees(Vec<u64>),
    AnyDegree,
    NotMultihomogeneous,
}

/// Consecutive blocks of variables, e.g. `[2, 2]` splits four variables into
/// `{X0, X1}` and `{X2, X3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGrouping {
    sizes: Vec<usize>,
}

impl VariableGrouping {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidGrouping);
        }
        Ok(VariableGrouping { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn nvars(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    fn group_degrees(&self, exponents: &[u32]) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut start = 0;
        for &len in &self.sizes {
            out.push(
                exponents[start..start + len]
                    .iter()
                    .map(|&e| e as u64)
                    .sum(),
            );
            start += len;
        }
        out
    }
}

impl SparsePolynomial {
    pub fn zero(field: &GaloisField, nvars: usize) -> Self {
        SparsePolynomial {
            field: field.clone(),
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &GaloisField, nvars: usize, c: FieldElement) -> Result<Self> {
        Self::from_terms(field, nvars, [(c, vec![0; nvars])])
    }

    /// The monomial `X_var`.
    pub fn variable(field: &GaloisField, nvars: usize, var: usize) -> Result<Self> {
        if var >= nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                limit: nvars,
            });
        }
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::from_terms(field, nvars, [(field.one(), e)])
    }

    /// Normalizes an arbitrary term list: like terms are combined and zero
    /// coefficients dropped.
    pub fn from_terms<I>(field: &GaloisField, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FieldElement, Vec<u32>)>,
    {
        let mut raw = Vec::new();
        for (coeff, exponents) in terms {
            field.check(coeff)?;
            if exponents.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: exponents.len(),
                });
            }
            let deg: u64 = exponents.iter().map(|&e| e as u64).sum();
            if deg > MAX_TERM_DEGREE {
                return Err(Error::DegreeTooLarge(deg));
            }
            raw.push(Term { coeff, exponents });
        }
        Ok(Self::normalize(field, nvars, raw))
    }

    fn normalize(field: &GaloisField, nvars: usize, mut raw: Vec<Term>) -> Self {
        raw.sort_by(|a, b| b.exponents.cmp(&a.exponents));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.exponents == t.exponents => {
                    last.coeff = field.add(last.coeff, t.coeff);
                }
                _ => terms.push(t),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        SparsePolynomial {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(Term::degree).max()
    }

    /// Parses the term grammar described in the module docs.
    pub fn parse(text: &str, nvars: usize, field: &GaloisField) -> Result<Self> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
            field,
        }
        .polynomial()
    }

    /// Canonical text form; the zero polynomial prints as `0:0,...,0`.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let zero_term = [Term {
            coeff: FieldElement::ZERO,
            exponents: vec![0; self.nvars],
        }];
        let terms: &[Term] = if self.terms.is_empty() {
            &zero_term
        } else {
            &self.terms
        };
        for (i, t) in terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if self.field.is_prime_field() {
                write!(out, "{}", t.coeff.index()).unwrap();
            } else {
                for (j, c) in self.field.coeffs(t.coeff).iter().enumerate() {
                    if j > 0 {
                        out.push(';');
                    }
                    write!(out, "{c}").unwrap();
                }
            }
            out.push(':');
            for (j, e) in t.exponents.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{e}").unwrap();
            }
        }
        out
    }

    /// Value at `point`, which may lie in any field whose packed values
    /// embed this polynomial's coefficients (the field itself, or an
    /// extension of a prime field).
    pub fn eval_in(&self, field: &GaloisField, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if field != &self.field
            && !(self.field.is_prime_field()
                && field.characteristic() == self.field.characteristic())
        {
            return Err(Error::FieldMismatch);
        }
        for &x in point {
            field.check(x)?;
        }
        Ok(self.eval_unchecked(field, point))
    }

    /// [`eval_in`](Self::eval_in) over the polynomial's own field.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        self.eval_in(&self.field.clone(), point)
    }

    #[inline]
    pub(crate) fn eval_unchecked(
        &self,
        field: &GaloisField,
        point: &[FieldElement],
    ) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for t in &self.terms {
            let mut m = t.coeff;
            for (&x, &e) in point.iter().zip(&t.exponents) {
                if e != 0 {
                    m = field.mul(m, field.pow(x, e as u64));
                    if m.is_zero() {
                        break;
                    }
                }
            }
            acc = field.add(acc, m);
        }
        acc
    }

    /// Formal partial derivative in `X_var`; the exponent is reduced mod `p`
    /// before it multiplies the coefficient.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                limit: self.nvars,
            });
        }
        let f = &self.field;
        let raw = self
            .terms
            .iter()
            .filter(|t| t.exponents[var] > 0)
            .map(|t| {
                let mut exponents = t.exponents.clone();
                exponents[var] -= 1;
                Term {
                    coeff: f.mul(t.coeff, f.from_int(t.exponents[var] as i64)),
                    exponents,
                }
            })
            .collect();
        Ok(Self::normalize(f, self.nvars, raw))
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.iter().map(Term::degree);
        match degrees.next() {
            None => Homogeneity::AnyDegree,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::NotHomogeneous,
        }
    }

    pub fn multihomogeneity(&self, grouping: &VariableGrouping) -> Result<Multihomogeneity> {
        if grouping.nvars() != self.nvars {
            return Err(Error::InvalidGrouping);
        }
        let mut degrees = self
            .terms
            .iter()
            .map(|t| grouping.group_degrees(&t.exponents));
        Ok(match degrees.next() {
            None => Multihomogeneity::AnyDegree,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Multihomogeneity::Degrees(d)
                } else {
                    Multihomogeneity::NotMultihomogeneous
                }
            }
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let raw = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self::normalize(&self.field, self.nvars, raw))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: self.field.mul(t.coeff, c),
                exponents: t.exponents.clone(),
            })
            .collect();
        Self::normalize(&self.field, self.nvars, raw)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field.neg(FieldElement::ONE)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let f = &self.field;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let exponents: Vec<u32> = a
                    .exponents
                    .iter()
                    .zip(&b.exponents)
                    .map(|(x, y)| x + y)
                    .collect();
                let deg: u64 = exponents.iter().map(|&e| e as u64).sum();
                if deg > MAX_TERM_DEGREE {
                    return Err(Error::DegreeTooLarge(deg));
                }
                raw.push(Term {
                    coeff: f.mul(a.coeff, b.coeff),
                    exponents,
                });
            }
        }
        Ok(Self::normalize(f, self.nvars, raw))
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: &'a GaloisField,
}

impl Parser<'_> {
    fn syntax(&self, message: &'static str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message,
        }
    }

    fn polynomial(mut self) -> Result<SparsePolynomial> {
        if self.src.is_empty() {
            return Err(self.syntax("empty polynomial"));
        }
        let mut raw = Vec::new();
        loop {
            raw.push(self.term()?);
            if self.pos == self.src.len() {
                break;
            }
            if self.src[self.pos..].starts_with(b" + ") {
                self.pos += 3;
            } else {
                return Err(self.syntax("expected \" + \" between terms"));
            }
        }
        Ok(SparsePolynomial::normalize(self.field, self.nvars, raw))
    }

    fn number(&mut self) -> Result<Option<u64>> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a decimal integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<u64>().ok())
    }

    fn expect(&mut self, byte: u8, message: &'static str) -> Result<()> {
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(message))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let term_start = self.pos;
        let p = self.field.characteristic() as u64;
        let k = self.field.degree() as usize;
        let mut coeffs = Vec::with_capacity(k);
        if k == 1 {
            let at = self.pos;
            match self.number()? {
                Some(c) if c < p => coeffs.push(c as u32),
                _ => return Err(Error::CoefficientOutOfRange { offset: at }),
            }
        } else {
            for i in 0..k {
                if i > 0 {
                    self.expect(b';', "expected ';' between coefficient digits")?;
                }
                let at = self.pos;
                match self.number()? {
                    Some(c) if c < p => coeffs.push(c as u32),
                    _ => return Err(Error::CoefficientOutOfRange { offset: at }),
                }
            }
        }
        self.expect(b':', "expected ':' after the coefficient")?;
        let mut exponents = Vec::with_capacity(self.nvars);
        loop {
            let at = self.pos;
            let e = match self.number()? {
                Some(e) if e <= MAX_TERM_DEGREE => e,
                Some(e) => return Err(Error::DegreeTooLarge(e)),
                None => {
                    self.pos = at;
                    return Err(self.syntax("exponent does not fit in 64 bits"));
                }
            };
            exponents.push(e as u32);
            if self.src.get(self.pos) == Some(&b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if exponents.len() != self.nvars {
            return Err(Error::ExponentArityMismatch {
                offset: term_start,
                expected: self.nvars,
                found: exponents.len(),
            });
        }
        let deg: u64 = exponents.iter().map(|&e| e as u64).sum();
        if deg > MAX_TERM_DEGREE {
            return Err(Error::DegreeTooLarge(deg));
        }
        Ok(Term {
            coeff: self.field.from_coeffs(&coeffs)?,
            exponents,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> GaloisField {
        GaloisField::prime(p).unwrap()
    }

    fn pt(field: &GaloisField, xs: &[u32]) -> Vec<FieldElement> {
        xs.iter().map(|&x| field.element(x).unwrap()).collect()
    }

    #[test]
    fn parse_examples() {
        let f5 = f(5);
        let cone = SparsePolynomial::parse("1:1,1,0,0 + 4:0,0,2,0", 4, &f5).unwrap();
        assert_eq!(cone.terms().len(), 2);
        assert_eq!(cone.terms()[0].exponents, vec![1, 1, 0, 0]);
        assert_eq!(cone.terms()[1].coeff, f5.neg(f5.one()));

        let zero = SparsePolynomial::parse("2:1,0 + 3:1,0", 2, &f5).unwrap();
        assert!(zero.is_zero());

        let f7 = f(7);
        let fermat = SparsePolynomial::parse("1:3,0,0 + 1:0,3,0 + 1:0,0,3", 3, &f7).unwrap();
        assert_eq!(fermat.homogeneity(), Homogeneity::Degree(3));
        assert_eq!(fermat.to_text(), "1:3,0,0 + 1:0,3,0 + 1:0,0,3");
    }

    #[test]
    fn parse_canonicalizes_order() {
        let f5 = f(5);
        let a = SparsePolynomial::parse("4:0,0,2,0 + 1:1,1,0,0", 4, &f5).unwrap();
        assert_eq!(a.to_text(), "1:1,1,0,0 + 4:0,0,2,0");
    }

    #[test]
    fn parse_extension_coefficients() {
        let f4 = GaloisField::new(2, 2, None).unwrap();
        let g = SparsePolynomial::parse("0;1:1,0 + 1;1:0,1", 2, &f4).unwrap();
        assert_eq!(g.terms()[0].coeff, f4.from_coeffs(&[0, 1]).unwrap());
        assert_eq!(g.to_text(), "0;1:1,0 + 1;1:0,1");
    }

    #[test]
    fn parse_errors() {
        let f5 = f(5);
        let err = |s: &str| SparsePolynomial::parse(s, 2, &f5).unwrap_err();
        assert_eq!(
            err("1:1,0+1:0,1"),
            Error::Syntax {
                offset: 5,
                message: "expected \" + \" between terms"
            }
        );
        assert!(matches!(err(""), Error::Syntax { offset: 0, .. }));
        assert!(matches!(
            err("1:1,0 + x:0,1"),
            Error::Syntax { offset: 8, .. }
        ));
        assert!(matches!(err("1 :1,0"), Error::Syntax { offset: 1, .. }));
        assert_eq!(
            err("1:1,0 + 1:0,1,0"),
            Error::ExponentArityMismatch {
                offset: 8,
                expected: 2,
                found: 3
            }
        );
        assert_eq!(err("5:1,0"), Error::CoefficientOutOfRange { offset: 0 });
        assert_eq!(err("1:70000,0"), Error::DegreeTooLarge(70000));
        assert!(matches!(err("1:1,0 "), Error::Syntax { offset: 5, .. }));
    }

    #[test]
    fn eval_examples() {
        let f5 = f(5);
        let cone = SparsePolynomial::parse("1:1,1,0,0 + 4:0,0,2,0", 4, &f5).unwrap();
        assert_eq!(cone.eval(&pt(&f5, &[1, 1, 1, 0])).unwrap(), f5.zero());
        assert_eq!(cone.eval(&pt(&f5, &[1, 2, 1, 0])).unwrap(), f5.one());
        let f7 = f(7);
        let fermat = SparsePolynomial::parse("1:3,0,0 + 1:0,3,0 + 1:0,0,3", 3, &f7).unwrap();
        assert_eq!(
            fermat.eval(&pt(&f7, &[1, 1, 1])).unwrap(),
            f7.element(3).unwrap()
        );
        assert_eq!(
            cone.eval(&pt(&f5, &[1, 1, 1])).unwrap_err(),
            Error::ArityMismatch {
                expected: 4,
                found: 3
            }
        );
        let foreign = vec![
            FieldElement::default(),
            f7.element(6).unwrap(),
            f5.zero(),
            f5.zero(),
        ];
        assert_eq!(cone.eval(&foreign).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn eval_over_extension() {
        let f3 = f(3);
        let f9 = f3.extension(2).unwrap();
        // X0^2 + X1^2 has the F_9 zero (1 : i) with i^2 = -1.
        let g = SparsePolynomial::parse("1:2,0 + 1:0,2", 2, &f3).unwrap();
        let roots = f9
            .elements()
            .filter(|&y| g.eval_in(&f9, &[f9.one(), y]).unwrap().is_zero())
            .count();
        assert_eq!(roots, 2);
        let f4 = GaloisField::new(2, 2, None).unwrap();
        assert_eq!(
            g.eval_in(&f4, &[f4.one(), f4.one()]).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn derivative_examples() {
        let f5 = f(5);
        let cone = SparsePolynomial::parse("1:1,1,0,0 + 4:0,0,2,0", 4, &f5).unwrap();
        assert_eq!(cone.partial_derivative(2).unwrap().to_text(), "3:0,0,1,0");
        let f2 = f(2);
        let sq = SparsePolynomial::parse("1:0,0,2", 3, &f2).unwrap();
        assert!(sq.partial_derivative(2).unwrap().is_zero());
        let f7 = f(7);
        let cube = SparsePolynomial::parse("1:3,0,0", 3, &f7).unwrap();
        assert_eq!(cube.partial_derivative(0).unwrap().to_text(), "3:2,0,0");
        assert_eq!(
            cube.partial_derivative(3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, limit: 3 }
        );
    }

    #[test]
    fn homogeneity_verdicts() {
        let f5 = f(5);
        let cone = SparsePolynomial::parse("1:1,1,0 + 4:0,0,2", 3, &f5).unwrap();
        assert_eq!(cone.homogeneity(), Homogeneity::Degree(2));
        let mixed = SparsePolynomial::parse("1:1,0 + 1:0,2", 2, &f5).unwrap();
        assert_eq!(mixed.homogeneity(), Homogeneity::NotHomogeneous);
        assert_eq!(
            SparsePolynomial::zero(&f5, 2).homogeneity(),
            Homogeneity::AnyDegree
        );
    }

    #[test]
    fn multihomogeneity_verdicts() {
        let f5 = f(5);
        let g = VariableGrouping::new(vec![2, 2]).unwrap();
        let p = |s| SparsePolynomial::parse(s, 4, &f5).unwrap();
        assert_eq!(
            p("1:1,0,1,0").multihomogeneity(&g).unwrap(),
            Multihomogeneity::Degrees(vec![1, 1])
        );
        assert_eq!(
            p("1:1,1,0,0 + 1:0,0,2,0").multihomogeneity(&g).unwrap(),
            Multihomogeneity::NotMultihomogeneous
        );
        assert_eq!(
            p("1:2,0,1,0").multihomogeneity(&g).unwrap(),
            Multihomogeneity::Degrees(vec![2, 1])
        );
        assert_eq!(
            SparsePolynomial::zero(&f5, 4).multihomogeneity(&g).unwrap(),
            Multihomogeneity::AnyDegree
        );
        let bad = VariableGrouping::new(vec![3]).unwrap();
        assert_eq!(
            p("1:1,0,1,0").multihomogeneity(&bad).unwrap_err(),
            Error::InvalidGrouping
        );
        assert_eq!(
            VariableGrouping::new(vec![2, 0]).unwrap_err(),
            Error::InvalidGrouping
        );
    }

    #[test]
    fn arithmetic_helpers() {
        let f5 = f(5);
        let x = SparsePolynomial::variable(&f5, 2, 0).unwrap();
        let y = SparsePolynomial::variable(&f5, 2, 1).unwrap();
        let s = x.add(&y).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.to_text(), "1:2,0 + 2:1,1 + 1:0,2");
        assert!(s.sub(&s).unwrap().is_zero());
        assert_eq!(SparsePolynomial::zero(&f5, 2).to_text(), "0:0,0");
        let c = SparsePolynomial::constant(&f5, 2, f5.element(3).unwrap()).unwrap();
        assert_eq!(c.to_text(), "3:0,0");
        assert_eq!(sq.total_degree(), Some(2));
    }
}

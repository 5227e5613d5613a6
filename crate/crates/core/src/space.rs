//! Affine and projective spaces over a finite field, enumerated in a fixed
//! order that can be split into disjoint index ranges for parallel workers.
//!
//! Affine tuples are ordered like an odometer, last coordinate fastest.
//! Projective points use the representative whose first nonzero coordinate
//! is `1`, grouped by the position of that coordinate (pivot `0` first).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};

/// Largest number of tuples or points a single enumeration may produce.
pub const MAX_ENUMERATION: u64 = 1 << 26;

/// `p_r = q^r + ... + q + 1`, the number of points of `P^r(F_q)`.
pub fn count_projective(q: u64, r: u32) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = BigUint::from(0u32);
    let mut pow = BigUint::from(1u32);
    for _ in 0..=r {
        acc += &pow;
        pow *= &q;
    }
    acc
}

fn checked_pow(q: u64, n: u32) -> Option<u64> {
    q.checked_pow(n)
}

pub(crate) fn budget(what: &'static str, size: Option<u64>) -> Result<u64> {
    match size {
        Some(s) if s <= MAX_ENUMERATION => Ok(s),
        Some(s) => Err(Error::BudgetExceeded {
            what,
            size: s as u128,
            limit: MAX_ENUMERATION as u128,
        }),
        None => Err(Error::BudgetExceeded {
            what,
            size: u128::MAX,
            limit: MAX_ENUMERATION as u128,
        }),
    }
}

/// Splits `range` into at most `parts` contiguous, nonempty pieces.
pub fn split_range(range: Range<u64>, parts: usize) -> Vec<Range<u64>> {
    let len = range.end.saturating_sub(range.start);
    if len == 0 {
        return Vec::new();
    }
    let parts = (parts.max(1) as u64).min(len);
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = range.start;
    for i in 0..parts {
        let size = base + u64::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// Mixed counter over `len` digits in `0..base`, most significant first.
#[derive(Clone, Debug)]
pub struct Odometer {
    base: u32,
    digits: Vec<u32>,
}

impl Odometer {
    pub fn new(base: u32, len: usize) -> Self {
        Odometer {
            base,
            digits: vec![0; len],
        }
    }

    pub fn at(base: u32, len: usize, mut index: u64) -> Self {
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = (index % base as u64) as u32;
            index /= base as u64;
        }
        Odometer { base, digits }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Advances by one. Returns the index of the most significant digit
    /// that changed, or `None` on wrap-around.
    pub fn step(&mut self) -> Option<usize> {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                return Some(i);
            }
            self.digits[i] = 0;
        }
        None
    }
}

/// A point of `P^n` in canonical form: first nonzero coordinate equal to `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec<FieldElement>);

impl ProjPoint {
    /// Scales `coords` so that its first nonzero entry becomes `1`.
    pub fn normalize(field: &GaloisField, coords: &[FieldElement]) -> Result<Self> {
        for &c in coords {
            field.check(c)?;
        }
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::InvalidInput("projective point with all coordinates zero".into())
            })?;
        let s = field.inv(lead)?;
        Ok(ProjPoint(coords.iter().map(|&c| field.mul(c, s)).collect()))
    }

    pub(crate) fn from_canonical(coords: Vec<FieldElement>) -> Self {
        debug_assert_eq!(
            coords.iter().find(|c| !c.is_zero()).copied(),
            Some(FieldElement::ONE)
        );
        ProjPoint(coords)
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<FieldElement> {
        self.0
    }

    pub fn pivot(&self) -> usize {
        self.0
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical point")
    }
}

/// `F_q^n`, enumerated as an odometer.
#[derive(Clone, Debug)]
pub struct AffineSpace {
    field: GaloisField,
    dim: usize,
    len: u64,
}

impl AffineSpace {
    pub fn new(field: &GaloisField, dim: usize) -> Result<Self> {
        let len = budget(
            "affine enumeration",
            checked_pow(field.order() as u64, dim as u32),
        )?;
        Ok(AffineSpace {
            field: field.clone(),
            dim,
            len,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, index: u64) -> Vec<FieldElement> {
        assert!(index < self.len, "affine index out of range");
        Odometer::at(self.field.order(), self.dim, index)
            .digits()
            .iter()
            .map(|&d| self.field.element_unchecked(d))
            .collect()
    }

    pub fn index_of(&self, point: &[FieldElement]) -> u64 {
        point.iter().fold(0u64, |acc, c| {
            acc * self.field.order() as u64 + c.index() as u64
        })
    }

    pub fn iter(&self) -> AffineIter {
        self.iter_range(0..self.len)
    }

    pub fn iter_range(&self, range: Range<u64>) -> AffineIter {
        let end = range.end.min(self.len);
        AffineIter {
            field: self.field.clone(),
            odometer: Odometer::at(self.field.order(), self.dim, range.start.min(end)),
            remaining: end.saturating_sub(range.start),
        }
    }
}

pub struct AffineIter {
    field: GaloisField,
    odometer: Odometer,
    remaining: u64,
}

impl Iterator for AffineIter {
    type Item = Vec<FieldElement>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self
            .odometer
            .digits()
            .iter()
            .map(|&d| self.field.element_unchecked(d))
            .collect();
        self.odometer.step();
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for AffineIter {}

/// `P^n(F_q)` enumerated by pivot stratum.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: GaloisField,
    n: usize,
    // offsets[i] = index of the first point with pivot i; offsets[n+1] = len
    offsets: Vec<u64>,
}

impl ProjectiveSpace {
    pub fn new(field: &GaloisField, n: usize) -> Result<Self> {
        let q = field.order() as u64;
        let mut offsets = Vec::with_capacity(n + 2);
        let mut acc = 0u64;
        offsets.push(0);
        for pivot in 0..=n {
            let stratum = checked_pow(q, (n - pivot) as u32);
            acc = budget(
                "projective enumeration",
                stratum.and_then(|s| acc.checked_add(s)),
            )?;
            offsets.push(acc);
        }
        Ok(ProjectiveSpace {
            field: field.clone(),
            n,
            offsets,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn len(&self) -> u64 {
        self.offsets[self.n + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ambient dimension `n` (points have `n + 1` coordinates).
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn point(&self, index: u64) -> ProjPoint {
        assert!(index < self.len(), "projective index out of range");
        let pivot = self.offsets.partition_point(|&o| o <= index) - 1;
        let tail = Odometer::at(
            self.field.order(),
            self.n - pivot,
            index - self.offsets[pivot],
        );
        let mut coords = vec![FieldElement::ZERO; self.n + 1];
        coords[pivot] = FieldElement::ONE;
        for (c, &d) in coords[pivot + 1..].iter_mut().zip(tail.digits()) {
            *c = self.field.element_unchecked(d);
        }
        ProjPoint::from_canonical(coords)
    }

    pub fn index_of(&self, point: &ProjPoint) -> u64 {
        let pivot = point.pivot();
        let q = self.field.order() as u64;
        self.offsets[pivot]
            + point.coords()[pivot + 1..]
                .iter()
                .fold(0u64, |acc, c| acc * q + c.index() as u64)
    }

    pub fn iter(&self) -> ProjectiveIter<'_> {
        self.iter_range(0..self.len())
    }

    pub fn iter_range(&self, range: Range<u64>) -> ProjectiveIter<'_> {
        let end = range.end.min(self.len());
        let start = range.start.min(end);
        ProjectiveIter {
            space: self,
            next: start,
            end,
            current: if start < end {
                Some(self.point(start).into_coords())
            } else {
                None
            },
        }
    }
}

pub struct ProjectiveIter<'a> {
    space: &'a ProjectiveSpace,
    next: u64,
    end: u64,
    current: Option<Vec<FieldElement>>,
}

impl Iterator for ProjectiveIter<'_> {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        if self.next >= self.end {
            return None;
        }
        let cur = self.current.take()?;
        self.next += 1;
        if self.next < self.end {
            let mut succ = cur.clone();
            let pivot = succ.iter().position(|c| !c.is_zero()).unwrap();
            let q = self.space.field.order();
            let mut carried = true;
            for c in succ[pivot + 1..].iter_mut().rev() {
                let v = c.index() + 1;
                if v < q {
                    *c = self.space.field.element_unchecked(v);
                    carried = false;
                    break;
                }
                *c = FieldElement::ZERO;
            }
            if carried {
                // next stratum: pivot moves one place right, tail all zero
                succ[pivot] = FieldElement::ZERO;
                succ[pivot + 1] = FieldElement::ONE;
            }
            self.current = Some(succ);
        }
        Some(ProjPoint::from_canonical(cur))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ProjectiveIter<'_> {}

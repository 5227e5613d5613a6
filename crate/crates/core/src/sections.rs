//! Linear sections `V ∩ L`, `L = {γ_0·x = ... = γ_s·x = 0}`.
//!
//! `N(γ)` counts projective `F_q`-points of the section. A tuple passes the
//! smoothness check when its covectors are independent and, at every
//! `F_{q^e}`-point `x` of `V ∩ L` for `e <= E`, the matrix stacking the
//! Jacobian of `V` at `x` over the `s + 1` covectors has full rank
//! `n - r + s + 1`. Checking rational points only is a proxy for geometric
//! smoothness; it is exact when the singular locus of every section is
//! defined over the fields checked. Whether the section has pure dimension
//! `r - s - 1` is not checked separately.
//!
//! Tuples are enumerated with `γ_0` as the most significant digit. In
//! affine mode each covector ranges over `F_q^{n+1}` in odometer order; in
//! projective mode over the canonical points of `P^n(F_q)`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::bounds;
use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};
use crate::linalg;
use crate::space::{budget, AffineSpace, Odometer, ProjPoint, ProjectiveSpace};
use crate::variety::VarietyDescriptor;

/// Number of failure witnesses kept in a [`ScanReport`].
pub const MAX_WITNESSES: usize = 10;

/// `γ = (γ_0, ..., γ_s)`, each covector with `n + 1` entries in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SectionTuple {
    covectors: Vec<Vec<FieldElement>>,
}

impl SectionTuple {
    pub fn new(covectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let Some(first) = covectors.first() else {
            return Err(Error::InvalidInput(
                "a section needs at least one covector".into(),
            ));
        };
        let width = first.len();
        if let Some(bad) = covectors.iter().find(|c| c.len() != width) {
            return Err(Error::ArityMismatch {
                expected: width,
                found: bad.len(),
            });
        }
        Ok(SectionTuple { covectors })
    }

    /// The all-zero tuple of `len` covectors.
    pub fn zero(len: usize, nvars: usize) -> Self {
        SectionTuple {
            covectors: vec![vec![FieldElement::ZERO; nvars]; len.max(1)],
        }
    }

    pub fn covectors(&self) -> &[Vec<FieldElement>] {
        &self.covectors
    }

    /// `s + 1`
    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn width(&self) -> usize {
        self.covectors[0].len()
    }

    pub fn is_degenerate(&self, field: &GaloisField) -> bool {
        linalg::rank(field, &self.covectors) < self.covectors.len()
    }

    fn check(&self, v: &VarietyDescriptor) -> Result<()> {
        if self.width() != v.nvars() {
            return Err(Error::ArityMismatch {
                expected: v.nvars(),
                found: self.width(),
            });
        }
        for c in self.covectors.iter().flatten() {
            v.field().check(*c)?;
        }
        Ok(())
    }
}

#[inline]
fn dot(field: &GaloisField, a: &[FieldElement], x: &[FieldElement]) -> FieldElement {
    a.iter().zip(x).fold(FieldElement::ZERO, |acc, (&c, &xi)| {
        field.add(acc, field.mul(c, xi))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Pass,
    /// First point, in enumeration order over `F_q, F_{q^2}, ...`, where the
    /// stacked matrix loses rank.
    RankFail(ProjPoint),
    /// The covectors are linearly dependent.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionVerdict {
    pub gamma: SectionTuple,
    /// `N(γ)` over `F_q`.
    pub point_count: u64,
    pub classification: Classification,
    pub checked_extensions: u32,
}

struct LevelData {
    field: GaloisField,
    points: Vec<Vec<FieldElement>>,
    // codim x nvars per point, row-major
    jacobians: Vec<Vec<FieldElement>>,
}

/// Rational points of `V` over `F_q, ..., F_{q^E}` with their Jacobians,
/// computed once and shared by every section test.
pub struct SectionContext<'a> {
    variety: &'a VarietyDescriptor,
    levels: Vec<LevelData>,
}

impl<'a> SectionContext<'a> {
    pub fn new(variety: &'a VarietyDescriptor, max_ext: u32) -> Result<Self> {
        if max_ext == 0 {
            return Err(Error::InvalidInput(
                "extension depth must be at least 1".into(),
            ));
        }
        let mut levels = Vec::with_capacity(max_ext as usize);
        for e in 1..=max_ext {
            let field = variety.point_field(e)?;
            let points: Vec<Vec<FieldElement>> = variety
                .rational_points(e)?
                .into_iter()
                .map(ProjPoint::into_coords)
                .collect();
            let jacobians = points
                .iter()
                .map(|x| variety.jacobian_rows(&field, x))
                .collect();
            levels.push(LevelData {
                field,
                points,
                jacobians,
            });
        }
        Ok(SectionContext { variety, levels })
    }

    pub fn variety(&self) -> &VarietyDescriptor {
        self.variety
    }

    pub fn max_ext(&self) -> u32 {
        self.levels.len() as u32
    }

    /// `|V(F_{q^e})|`
    pub fn point_count(&self, e: u32) -> u64 {
        self.levels[e as usize - 1].points.len() as u64
    }

    fn annihilated(field: &GaloisField, covectors: &[&[FieldElement]], x: &[FieldElement]) -> bool {
        covectors.iter().all(|c| dot(field, c, x).is_zero())
    }

    /// `N(γ)` over `F_{q^e}`, `e <= max_ext`.
    pub fn count(&self, covectors: &[&[FieldElement]], e: u32) -> u64 {
        let level = &self.levels[e as usize - 1];
        level
            .points
            .iter()
            .filter(|x| Self::annihilated(&level.field, covectors, x))
            .count() as u64
    }

    /// Classification of a tuple given as borrowed covectors.
    pub fn classify(&self, covectors: &[&[FieldElement]]) -> Classification {
        let base = self.variety.field();
        let nvars = self.variety.nvars();
        let rows = covectors.len();
        let mut scratch: Vec<FieldElement> =
            Vec::with_capacity((self.variety.codim() + rows) * nvars);
        for c in covectors {
            scratch.extend_from_slice(c);
        }
        if linalg::rank_in_place(base, &mut scratch, rows, nvars) < rows {
            return Classification::Degenerate;
        }
        let full = self.variety.codim() + rows;
        for level in &self.levels {
            for (x, jac) in level.points.iter().zip(&level.jacobians) {
                if !Self::annihilated(&level.field, covectors, x) {
                    continue;
                }
                scratch.clear();
                scratch.extend_from_slice(jac);
                for c in covectors {
                    scratch.extend_from_slice(c);
                }
                if linalg::rank_in_place(&level.field, &mut scratch, full, nvars) < full {
                    return Classification::RankFail(
                        ProjPoint::normalize(&level.field, x).expect("point on V"),
                    );
                }
            }
        }
        Classification::Pass
    }

    pub fn verdict(&self, gamma: &SectionTuple) -> Result<SectionVerdict> {
        gamma.check(self.variety)?;
        let covectors: Vec<&[FieldElement]> = gamma.covectors.iter().map(Vec::as_slice).collect();
        Ok(SectionVerdict {
            gamma: gamma.clone(),
            point_count: self.count(&covectors, 1),
            classification: self.classify(&covectors),
            checked_extensions: self.max_ext(),
        })
    }
}

/// `N(γ) = |V ∩ L (F_{q^e})|`; the all-zero tuple gives `|V(F_{q^e})|`.
pub fn section_count(v: &VarietyDescriptor, gamma: &SectionTuple, e: u32) -> Result<u64> {
    gamma.check(v)?;
    let field = v.point_field(e)?;
    let covectors: Vec<&[FieldElement]> = gamma.covectors.iter().map(Vec::as_slice).collect();
    let space = v.point_space(e)?;
    Ok(space
        .iter()
        .filter(|x| {
            v.vanishes_at(&field, x.coords())
                && SectionContext::annihilated(&field, &covectors, x.coords())
        })
        .count() as u64)
}

fn check_sing_range(v: &VarietyDescriptor, s: i64) -> Result<()> {
    if s < 0 || s > v.dim() as i64 - 2 {
        return Err(Error::BadSingularDim { s, r: v.dim() });
    }
    Ok(())
}

/// Smoothness verdict for the section cut by `gamma`, checking rational
/// points over `F_{q^e}` for `e = 1..=max_ext`.
pub fn section_smooth_check(
    v: &VarietyDescriptor,
    gamma: &SectionTuple,
    max_ext: u32,
) -> Result<SectionVerdict> {
    gamma.check(v)?;
    check_sing_range(v, gamma.len() as i64 - 1)?;
    SectionContext::new(v, max_ext)?.verdict(gamma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every tuple of `(F_q^{n+1})^{s+1}`.
    Affine,
    /// Every tuple of `(P^n(F_q))^{s+1}`.
    Projective,
}

impl ScanMode {
    pub fn label(self) -> &'static str {
        match self {
            ScanMode::Affine => "affine",
            ScanMode::Projective => "projective",
        }
    }
}

/// A failing tuple together with the first point where the rank drops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailWitness {
    pub index: u64,
    pub gamma: SectionTuple,
    pub point: ProjPoint,
}

/// Counts over a contiguous range of tuple indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanTally {
    pub pass: u64,
    pub fail: u64,
    pub degenerate: u64,
    /// Earliest failures in the range, at most [`MAX_WITNESSES`].
    pub witnesses: Vec<FailWitness>,
}

impl ScanTally {
    /// Combines tallies of consecutive ranges, `self` first.
    pub fn merge(mut self, later: ScanTally) -> ScanTally {
        self.pass += later.pass;
        self.fail += later.fail;
        self.degenerate += later.degenerate;
        self.witnesses.extend(later.witnesses);
        self.witnesses.truncate(MAX_WITNESSES);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub q: u64,
    pub s: usize,
    pub max_ext: u32,
    pub total: u64,
    pub pass: u64,
    pub fail: u64,
    pub degenerate: u64,
    /// `d = D^{r-s-1}(D+r-s)δ`
    pub bertini_degree: BigUint,
    /// `(q - d)^{s+1} q^{n(s+1)}` when `q > d`, else zero.
    pub floor: BigUint,
    /// `η_{s+1}((d, ..., d), (n, ..., n))`
    pub eta_ceiling: BigInt,
    pub witnesses: Vec<FailWitness>,
}

/// Exhaustive classification of every tuple of a fixed shape.
pub struct BertiniScan<'a> {
    context: SectionContext<'a>,
    mode: ScanMode,
    s: usize,
    covectors: Vec<Vec<FieldElement>>,
    total: u64,
}

impl<'a> BertiniScan<'a> {
    pub fn new(v: &'a VarietyDescriptor, s: i64, max_ext: u32, mode: ScanMode) -> Result<Self> {
        check_sing_range(v, s)?;
        let s = s as usize;
        let field = v.field();
        let covectors: Vec<Vec<FieldElement>> = match mode {
            ScanMode::Affine => {
                let space = AffineSpace::new(field, v.nvars())?;
                space.iter().collect()
            }
            ScanMode::Projective => {
                let space = ProjectiveSpace::new(field, v.ambient_dim())?;
                space.iter().map(ProjPoint::into_coords).collect()
            }
        };
        let total = budget(
            "section tuples",
            (covectors.len() as u64).checked_pow(s as u32 + 1),
        )?;
        Ok(BertiniScan {
            context: SectionContext::new(v, max_ext)?,
            mode,
            s,
            covectors,
            total,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn tuple(&self, index: u64) -> SectionTuple {
        let digits = Odometer::at(self.covectors.len() as u32, self.s + 1, index);
        SectionTuple {
            covectors: digits
                .digits()
                .iter()
                .map(|&d| self.covectors[d as usize].clone())
                .collect(),
        }
    }

    pub fn scan_range(&self, range: Range<u64>) -> ScanTally {
        let end = range.end.min(self.total);
        let mut tally = ScanTally::default();
        if range.start >= end {
            return tally;
        }
        let mut odo = Odometer::at(self.covectors.len() as u32, self.s + 1, range.start);
        let mut refs: Vec<&[FieldElement]> = Vec::with_capacity(self.s + 1);
        for index in range.start..end {
            refs.clear();
            refs.extend(
                odo.digits()
                    .iter()
                    .map(|&d| self.covectors[d as usize].as_slice()),
            );
            match self.context.classify(&refs) {
                Classification::Pass => tally.pass += 1,
                Classification::Degenerate => tally.degenerate += 1,
                Classification::RankFail(point) => {
                    tally.fail += 1;
                    if tally.witnesses.len() < MAX_WITNESSES {
                        tally.witnesses.push(FailWitness {
                            index,
                            gamma: self.tuple(index),
                            point,
                        });
                    }
                }
            }
            odo.step();
        }
        tally
    }

    /// Attaches the theoretical floor and ceiling to a complete tally.
    pub fn report(&self, tally: ScanTally) -> Result<ScanReport> {
        let v = self.context.variety();
        let q = v.field().order() as u64;
        let n = v.ambient_dim() as u64;
        let s = self.s as u64;
        let d = bounds::bertini_degree(v.big_d(), v.dim(), self.s as i64, v.delta())?;
        let qb = BigUint::from(q);
        let floor = if qb > d {
            (&qb - &d).pow(s as u32 + 1) * qb.pow((n * (s + 1)) as u32)
        } else {
            BigUint::zero()
        };
        let d_small: u64 = d
            .clone()
            .try_into()
            .map_err(|_| Error::ArithmeticOverflow("bertini degree"))?;
        let groups = self.s + 1;
        let eta_ceiling = bounds::eta(q, &vec![d_small; groups], &vec![n; groups])?;
        Ok(ScanReport {
            mode: self.mode,
            q,
            s: self.s,
            max_ext: self.context.max_ext(),
            total: self.total,
            pass: tally.pass,
            fail: tally.fail,
            degenerate: tally.degenerate,
            bertini_degree: d,
            floor,
            eta_ceiling,
            witnesses: tally.witnesses,
        })
    }

    pub fn run(&self) -> Result<ScanReport> {
        self.report(self.scan_range(0..self.total))
    }
}

/// Sequential scan with `s` taken from the descriptor.
pub fn bertini_scan(v: &VarietyDescriptor, max_ext: u32, mode: ScanMode) -> Result<ScanReport> {
    BertiniScan::new(v, v.sing_dim(), max_ext, mode)?.run()
}

/// `N(γ)` for every `γ ∈ F_q^{(n+1)(s+1)}`, in tuple order, via per-covector
/// bitmasks over `V(F_q)`.
pub struct MomentContext {
    field: GaloisField,
    nvars: usize,
    s: usize,
    points: Vec<Vec<FieldElement>>,
    words: usize,
    // masks for every covector when s >= 1; s = 0 computes them on the fly
    table: Option<Vec<u64>>,
    covector_count: u64,
    total: u64,
    q_pow: u128,
}

impl MomentContext {
    pub fn new(v: &VarietyDescriptor, s: i64) -> Result<Self> {
        if s < 0 {
            return Err(Error::InvalidInput(
                "the section codimension index s must be >= 0".into(),
            ));
        }
        let s = s as usize;
        let field = v.field().clone();
        let q = field.order() as u64;
        let covector_count = budget("covectors", q.checked_pow(v.nvars() as u32))?;
        let total = budget("section tuples", covector_count.checked_pow(s as u32 + 1))?;
        let points: Vec<Vec<FieldElement>> = v
            .rational_points(1)?
            .into_iter()
            .map(ProjPoint::into_coords)
            .collect();
        let words = points.len().div_ceil(64).max(1);
        let mut ctx = MomentContext {
            field,
            nvars: v.nvars(),
            s,
            points,
            words,
            table: None,
            covector_count,
            total,
            q_pow: (q as u128).pow(s as u32 + 1),
        };
        if s >= 1 {
            let mut table = vec![0u64; covector_count as usize * words];
            let covectors = AffineSpace::new(&ctx.field, ctx.nvars)?;
            for (i, c) in covectors.iter().enumerate() {
                ctx.fill_mask(&c, &mut table[i * words..(i + 1) * words]);
            }
            ctx.table = Some(table);
        }
        Ok(ctx)
    }

    fn fill_mask(&self, covector: &[FieldElement], out: &mut [u64]) {
        out.fill(0);
        for (j, x) in self.points.iter().enumerate() {
            if dot(&self.field, covector, x).is_zero() {
                out[j / 64] |= 1 << (j % 64);
            }
        }
    }

    /// `N = |V(F_q)|`
    pub fn point_count(&self) -> u64 {
        self.points.len() as u64
    }

    /// `q^{(n+1)(s+1)}`
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `q^{s+1}`
    pub fn q_pow(&self) -> u128 {
        self.q_pow
    }

    /// Calls `f(index, N(γ))` for every tuple index in `range`.
    pub fn for_each_count(&self, range: Range<u64>, mut f: impl FnMut(u64, u64)) {
        let end = range.end.min(self.total);
        if range.start >= end {
            return;
        }
        let w = self.words;
        let q = self.field.order();
        if self.s == 0 {
            let space = AffineSpace::new(&self.field, self.nvars).expect("within budget");
            let mut mask = vec![0u64; w];
            for (index, c) in (range.start..end).zip(space.iter_range(range.start..end)) {
                self.fill_mask(&c, &mut mask);
                f(index, mask.iter().map(|m| m.count_ones() as u64).sum());
            }
            return;
        }
        let table = self.table.as_ref().expect("mask table for s >= 1");
        let mut odo = Odometer::at(self.covector_count as u32, self.s + 1, range.start);
        // prefix[i] = AND of the masks of covectors 0..=i
        let mut prefix = vec![0u64; (self.s + 1) * w];
        let mut dirty = 0usize;
        let _ = q;
        for index in range.start..end {
            for i in dirty..=self.s {
                let c = odo.digits()[i] as usize;
                let mask = &table[c * w..(c + 1) * w];
                if i == 0 {
                    prefix[..w].copy_from_slice(mask);
                } else {
                    let (done, rest) = prefix.split_at_mut(i * w);
                    for ((dst, &prev), &m) in
                        rest[..w].iter_mut().zip(&done[(i - 1) * w..]).zip(mask)
                    {
                        *dst = prev & m;
                    }
                }
            }
            let count = prefix[self.s * w..]
                .iter()
                .map(|m| m.count_ones() as u64)
                .sum();
            f(index, count);
            dirty = odo.step().unwrap_or(0);
        }
    }

    /// `Σ (N - q^{s+1} N(γ))^2` over `range`, overflow-checked.
    pub fn moment_partial(&self, range: Range<u64>) -> Result<u128> {
        let n = self.point_count() as i128;
        let qp = self.q_pow as i128;
        let mut acc: Option<u128> = Some(0);
        self.for_each_count(range, |_, c| {
            let diff = qp
                .checked_mul(c as i128)
                .and_then(|t| n.checked_sub(t))
                .map(|d| d.unsigned_abs());
            acc = acc
                .zip(diff)
                .and_then(|(a, d)| d.checked_mul(d).and_then(|sq| a.checked_add(sq)));
        });
        acc.ok_or(Error::ArithmeticOverflow("second moment"))
    }

    /// Number of tuples in `range` with `(N - q^{s+1} N(γ))^2 <= 2N(q^{s+1} - 1)`.
    pub fn census_partial(&self, range: Range<u64>) -> Result<u64> {
        let n = self.point_count() as i128;
        let qp = self.q_pow as i128;
        let limit = 2 * n as u128 * (self.q_pow - 1);
        let mut satisfying = 0u64;
        let mut overflow = false;
        self.for_each_count(range, |_, c| {
            match qp.checked_mul(c as i128).and_then(|t| n.checked_sub(t)) {
                Some(d) => {
                    let d = d.unsigned_abs();
                    if d.checked_mul(d).is_some_and(|sq| sq <= limit) {
                        satisfying += 1;
                    }
                }
                None => overflow = true,
            }
        });
        if overflow {
            return Err(Error::ArithmeticOverflow("hooley census"));
        }
        Ok(satisfying)
    }

    /// `N q^{(n+1)(s+1)} (q^{s+1} - 1)`
    pub fn lemma_value(&self) -> Result<u128> {
        (self.point_count() as u128)
            .checked_mul(self.total as u128)
            .and_then(|x| x.checked_mul(self.q_pow - 1))
            .ok_or(Error::ArithmeticOverflow("second moment closed form"))
    }

    pub fn finish_moment(&self, computed: u128) -> Result<SecondMoment> {
        let lemma_value = self.lemma_value()?;
        Ok(SecondMoment {
            computed,
            lemma_value,
            equal: computed == lemma_value,
        })
    }

    pub fn finish_census(&self, satisfying: u64) -> HooleyCensus {
        HooleyCensus {
            satisfying,
            total: self.total,
            half_mass: 2 * satisfying as u128 >= self.total as u128,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecondMoment {
    pub computed: u128,
    pub lemma_value: u128,
    pub equal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HooleyCensus {
    pub satisfying: u64,
    pub total: u64,
    pub half_mass: bool,
}

/// `Σ_{γ ∈ F_q^{(n+1)(s+1)}} (N - q^{s+1} N(γ))^2` next to its closed form.
pub fn second_moment(v: &VarietyDescriptor, s: i64) -> Result<SecondMoment> {
    let ctx = MomentContext::new(v, s)?;
    let computed = ctx.moment_partial(0..ctx.total())?;
    ctx.finish_moment(computed)
}

/// How many tuples satisfy `|N - q^{s+1} N(γ)| <= sqrt(2N(q^{s+1} - 1))`.
pub fn hooley_condition_census(v: &VarietyDescriptor, s: i64) -> Result<HooleyCensus> {
    let ctx = MomentContext::new(v, s)?;
    let satisfying = ctx.census_partial(0..ctx.total())?;
    Ok(ctx.finish_census(satisfying))
}

/// The first affine tuple, in scan order, whose section passes the rank
/// check over `F_q` and satisfies the census inequality.
pub fn find_good_section(v: &VarietyDescriptor, s: i64) -> Result<Option<SectionTuple>> {
    let scan = BertiniScan::new(v, s, 1, ScanMode::Affine)?;
    let moments = MomentContext::new(v, s)?;
    let n = moments.point_count() as i128;
    let qp = moments.q_pow() as i128;
    let limit = 2 * n as u128 * (moments.q_pow() - 1);
    let mut found = None;
    moments.for_each_count(0..moments.total(), |index, c| {
        if found.is_some() {
            return;
        }
        let d = (n - qp * c as i128).unsigned_abs();
        if d * d <= limit {
            let gamma = scan.tuple(index);
            let refs: Vec<&[FieldElement]> = gamma.covectors().iter().map(Vec::as_slice).collect();
            if scan.context.classify(&refs) == Classification::Pass {
                found = Some(gamma);
            }
        }
    });
    Ok(found)
}

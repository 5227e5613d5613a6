//! Complete intersections `V = V(F_1, ..., F_{n-r}) ⊂ P^n` with asserted
//! dimension `r` and singular-locus dimension `s`.
//!
//! The asserted `r` is checked against the generator count only; whether
//! the generators really cut out a complete intersection of that dimension,
//! and whether `s` is the true dimension of the singular locus, are inputs
//! the engine takes on trust. Every bound derived from a descriptor is
//! conditional on them.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};
use crate::linalg;
use crate::poly::{Homogeneity, SparsePolynomial};
use crate::space::{count_projective, ProjPoint, ProjectiveSpace};

#[derive(Clone, Debug)]
pub struct VarietyDescriptor {
    field: GaloisField,
    nvars: usize,
    generators: Vec<SparsePolynomial>,
    degrees: Vec<u64>,
    dim: usize,
    sing_dim: i64,
    multidegree: Vec<u64>,
    delta: u64,
    big_d: u64,
    // jacobian[i][j] = dF_i / dX_j
    jacobian: Vec<Vec<SparsePolynomial>>,
}

/// Result of the Jacobian criterion at one rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClassification {
    pub point: ProjPoint,
    pub jacobian_rank: usize,
    pub smooth: bool,
}

impl VarietyDescriptor {
    /// Validates the generators and derives `d`, `δ = Π d_i` and
    /// `D = Σ (d_i - 1)`. `sing_dim = -1` means nonsingular.
    pub fn new(
        field: &GaloisField,
        nvars: usize,
        generators: Vec<SparsePolynomial>,
        dim: i64,
        sing_dim: i64,
    ) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidInput(
                "the ambient space needs at least one variable".into(),
            ));
        }
        let mut degrees = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            match g.homogeneity() {
                Homogeneity::AnyDegree => return Err(Error::ZeroGenerator(i)),
                Homogeneity::NotHomogeneous => return Err(Error::NotHomogeneous(i)),
                Homogeneity::Degree(0) => {
                    return Err(Error::InvalidInput(alloc::format!(
                        "generator {i} is a nonzero constant"
                    )))
                }
                Homogeneity::Degree(d) => degrees.push(d),
            }
        }
        let expected = nvars as i64 - 1 - generators.len() as i64;
        if expected < 0 || dim != expected {
            return Err(Error::DimensionMismatch {
                asserted: dim,
                generators: generators.len(),
                ambient: nvars - 1,
                expected,
            });
        }
        let dim = dim as usize;
        if sing_dim < -1 || sing_dim >= dim as i64 {
            return Err(Error::BadSingularDim {
                s: sing_dim,
                r: dim,
            });
        }
        let mut multidegree = degrees.clone();
        multidegree.sort_unstable_by(|a, b| b.cmp(a));
        let delta = multidegree
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::ArithmeticOverflow("degree product"))?;
        let big_d = multidegree.iter().map(|d| d - 1).sum();
        let jacobian = generators
            .iter()
            .map(|g| {
                (0..nvars)
                    .map(|j| g.partial_derivative(j))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VarietyDescriptor {
            field: field.clone(),
            nvars,
            generators,
            degrees,
            dim,
            sing_dim,
            multidegree,
            delta,
            big_d,
            jacobian,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `n`, the dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sing_dim(&self) -> i64 {
        self.sing_dim
    }

    pub fn codim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[SparsePolynomial] {
        &self.generators
    }

    /// Degrees of the generators in file order.
    pub fn generator_degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Generator degrees sorted descending.
    pub fn multidegree(&self) -> &[u64] {
        &self.multidegree
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn big_d(&self) -> u64 {
        self.big_d
    }

    /// `F_{q^e}`; extensions beyond `e = 1` need a prime base field.
    pub fn point_field(&self, e: u32) -> Result<GaloisField> {
        if e == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be at least 1".into(),
            ));
        }
        self.field.extension(e)
    }

    /// Projective space of the ambient `P^n` over `F_{q^e}`.
    pub fn point_space(&self, e: u32) -> Result<ProjectiveSpace> {
        ProjectiveSpace::new(&self.point_field(e)?, self.ambient_dim())
    }

    #[inline]
    pub(crate) fn vanishes_at(&self, field: &GaloisField, x: &[FieldElement]) -> bool {
        self.generators
            .iter()
            .all(|g| g.eval_unchecked(field, x).is_zero())
    }

    /// Whether every generator vanishes at `x`, coordinates in `field`.
    pub fn contains(&self, field: &GaloisField, x: &[FieldElement]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval_in(field, x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of points of `V` among the points of `space` with indices in
    /// `range`.
    pub fn count_points_in(&self, space: &ProjectiveSpace, range: core::ops::Range<u64>) -> u64 {
        let field = space.field();
        space
            .iter_range(range)
            .filter(|x| self.vanishes_at(field, x.coords()))
            .count() as u64
    }

    /// `|V(F_{q^e})|` by exhaustive enumeration of `P^n(F_{q^e})`.
    pub fn count_points(&self, e: u32) -> Result<u64> {
        let space = self.point_space(e)?;
        Ok(self.count_points_in(&space, 0..space.len()))
    }

    /// Points of `V` in `range`, in enumeration order.
    pub fn points_in(
        &self,
        space: &ProjectiveSpace,
        range: core::ops::Range<u64>,
    ) -> Vec<ProjPoint> {
        let field = space.field();
        space
            .iter_range(range)
            .filter(|x| self.vanishes_at(field, x.coords()))
            .collect()
    }

    /// All of `V(F_{q^e})` in enumeration order.
    pub fn rational_points(&self, e: u32) -> Result<Vec<ProjPoint>> {
        let space = self.point_space(e)?;
        Ok(self.points_in(&space, 0..space.len()))
    }

    /// Jacobian matrix at `x` as `codim` rows of `n + 1` entries.
    pub(crate) fn jacobian_rows(
        &self,
        field: &GaloisField,
        x: &[FieldElement],
    ) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.codim() * self.nvars);
        for row in &self.jacobian {
            for d in row {
                out.push(d.eval_unchecked(field, x));
            }
        }
        out
    }

    /// Rank of `(∂F_i/∂X_j)(x)` for a point `x` of `V` over `field`.
    pub fn jacobian_rank_in(&self, field: &GaloisField, x: &[FieldElement]) -> Result<usize> {
        if !self.contains(field, x)? {
            return Err(Error::PointNotOnVariety);
        }
        let mut m = self.jacobian_rows(field, x);
        Ok(linalg::rank_in_place(
            field,
            &mut m,
            self.codim(),
            self.nvars,
        ))
    }

    /// [`jacobian_rank_in`](Self::jacobian_rank_in) over the base field.
    pub fn jacobian_rank_at(&self, x: &ProjPoint) -> Result<usize> {
        self.jacobian_rank_in(&self.field.clone(), x.coords())
    }

    pub fn classify_in(&self, field: &GaloisField, x: &ProjPoint) -> Result<PointClassification> {
        let jacobian_rank = self.jacobian_rank_in(field, x.coords())?;
        Ok(PointClassification {
            point: x.clone(),
            jacobian_rank,
            smooth: jacobian_rank == self.codim(),
        })
    }

    /// Singular points of `V(F_{q^e})`, in enumeration order.
    pub fn rational_singular_points(&self, e: u32) -> Result<Vec<PointClassification>> {
        let field = self.point_field(e)?;
        let mut out = Vec::new();
        for x in self.rational_points(e)? {
            let c = self.classify_in(&field, &x)?;
            if !c.smooth {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Whether a point count over `F_{q^e}` lies in `[p_r / (2δ), 2δ p_r]`.
    /// A count outside this window usually means the asserted dimension is
    /// wrong.
    pub fn count_is_plausible(&self, e: u32, count: u64) -> bool {
        let qe = (self.field.order() as u64).pow(e);
        let p_r = count_projective(qe, self.dim as u32);
        let two_delta = BigUint::from(2 * self.delta);
        let c = BigUint::from(count);
        &c * &two_delta >= p_r && c <= two_delta * p_r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn variety(
        p: u64,
        nvars: usize,
        polys: &[&str],
        dim: i64,
        s: i64,
    ) -> Result<VarietyDescriptor> {
        let f = GaloisField::prime(p)?;
        let gens = polys
            .iter()
            .map(|t| SparsePolynomial::parse(t, nvars, &f))
            .collect::<Result<Vec<_>>>()?;
        VarietyDescriptor::new(&f, nvars, gens, dim, s)
    }

    const CONE: &str = "1:1,1,0,0 + 12:0,0,2,0";

    #[test]
    fn derived_invariants() {
        let cone = variety(13, 4, &[CONE], 2, 0).unwrap();
        assert_eq!(cone.multidegree(), &[2]);
        assert_eq!((cone.delta(), cone.big_d()), (2, 1));
        let two = variety(
            5,
            5,
            &[
                "1:2,0,0,0,0 + 1:0,2,0,0,0 + 1:0,0,2,0,0",
                "1:0,0,0,1,1 + 1:1,1,0,0,0",
            ],
            2,
            -1,
        )
        .unwrap();
        assert_eq!(two.multidegree(), &[2, 2]);
        assert_eq!((two.delta(), two.big_d()), (4, 2));
        let mixed = variety(5, 4, &["1:1,0,0,0", "1:0,3,0,0 + 1:0,0,3,0"], 1, -1).unwrap();
        assert_eq!(mixed.multidegree(), &[3, 1]);
        assert_eq!(mixed.generator_degrees(), &[1, 3]);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            variety(5, 4, &["1:1,0,0,0", "1:0,1,0,0"], 2, -1),
            Err(Error::DimensionMismatch {
                asserted: 2,
                expected: 1,
                ..
            })
        ));
        assert_eq!(
            variety(5, 3, &["1:1,0,0 + 1:0,2,0"], 1, -1).unwrap_err(),
            Error::NotHomogeneous(0)
        );
        assert_eq!(
            variety(5, 3, &["1:1,0,0", "2:1,0,0 + 3:1,0,0"], 0, -1).unwrap_err(),
            Error::ZeroGenerator(1)
        );
        assert_eq!(
            variety(13, 4, &[CONE], 2, 2).unwrap_err(),
            Error::BadSingularDim { s: 2, r: 2 }
        );
        assert_eq!(
            variety(13, 4, &[CONE], 2, -2).unwrap_err(),
            Error::BadSingularDim { s: -2, r: 2 }
        );
        assert!(matches!(
            variety(5, 3, &["1:0,0,0"], 1, -1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn jacobian_rank_examples() {
        let cone = variety(5, 4, &["1:1,1,0,0 + 4:0,0,2,0"], 2, 0).unwrap();
        let f = cone.field().clone();
        let pt = |c: &[u32]| {
            ProjPoint::normalize(
                &f,
                &c.iter().map(|&x| f.element(x).unwrap()).collect::<Vec<_>>(),
            )
            .unwrap()
        };
        assert_eq!(cone.jacobian_rank_at(&pt(&[0, 0, 0, 1])).unwrap(), 0);
        assert_eq!(cone.jacobian_rank_at(&pt(&[1, 0, 0, 0])).unwrap(), 1);
        assert_eq!(
            cone.jacobian_rank_at(&pt(&[1, 1, 0, 0])).unwrap_err(),
            Error::PointNotOnVariety
        );
    }

    #[test]
    fn singular_points() {
        let cone = variety(5, 4, &["1:1,1,0,0 + 4:0,0,2,0"], 2, 0).unwrap();
        let sing = cone.rational_singular_points(1).unwrap();
        assert_eq!(sing.len(), 1);
        let coords: Vec<u32> = sing[0].point.coords().iter().map(|c| c.index()).collect();
        assert_eq!(coords, vec![0, 0, 0, 1]);
        assert_eq!(sing[0].jacobian_rank, 0);

        let smooth = variety(3, 4, &["1:1,1,0,0 + 2:0,0,1,1"], 2, -1).unwrap();
        assert!(smooth.rational_singular_points(1).unwrap().is_empty());
        let fermat = variety(7, 3, &["1:3,0,0 + 1:0,3,0 + 1:0,0,3"], 1, -1).unwrap();
        assert!(fermat.rational_singular_points(1).unwrap().is_empty());
    }

    #[test]
    fn extension_counts() {
        // x^2 + y^2 + z^2 over F_3 is a smooth conic: q^e + 1 points.
        let conic = variety(3, 3, &["1:2,0,0 + 1:0,2,0 + 1:0,0,2"], 1, -1).unwrap();
        assert_eq!(conic.count_points(1).unwrap(), 4);
        assert_eq!(conic.count_points(2).unwrap(), 10);
        assert_eq!(conic.count_points(3).unwrap(), 28);
        assert!(matches!(conic.count_points(0), Err(Error::InvalidInput(_))));

        let f4 = GaloisField::new(2, 2, None).unwrap();
        let line = SparsePolynomial::parse("1;0:1,0,0", 3, &f4).unwrap();
        let v = VarietyDescriptor::new(&f4, 3, vec![line], 1, -1).unwrap();
        assert_eq!(v.count_points(1).unwrap(), 5);
        assert_eq!(v.count_points(2).unwrap_err(), Error::UnsupportedExtension);
    }

    #[test]
    fn plausibility_window() {
        let cone = variety(13, 4, &[CONE], 2, 0).unwrap();
        assert!(cone.count_is_plausible(1, 183));
        // a surface miscounted as if it were a curve
        assert!(!cone.count_is_plausible(1, 14));
        assert!(!cone.count_is_plausible(1, 5000));
    }
}

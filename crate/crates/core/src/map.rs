//! The three-parameter piecewise-affine plane map family.
//!
//! The map sends `(x, y)` to `(1 + y - a|x| - cx, bx)`. It is glued from two
//! globally affine branches along the divider `x = 0`; the divider maps onto
//! the `x`-axis. This module holds the branches, the inverse, derivatives,
//! the fixed points with their eigendata, and the period-two point in the
//! right half-plane.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameter triple `(a, b, c)`. `a` is the slope-sum parameter, `b` the
/// Jacobian magnitude, `c` the asymmetry parameter; `c = 0` gives the
/// classical symmetric family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params<R: Real> {
    pub a: R,
    pub b: R,
    pub c: R,
}

impl<R: Real> Params<R> {
    pub fn new(a: R, b: R, c: R) -> Self {
        Self { a, b, c }
    }

    pub fn from_f64(a: f64, b: f64, c: f64) -> Self {
        Self::new(R::from_f64(a), R::from_f64(b), R::from_f64(c))
    }
}

/// Parameters that passed the (A1)-(A3) assumption checks.
///
/// Constructed through [`Params::validated`](crate::conditions); routines
/// whose contracts require the assumptions take this wrapper.
#[derive(Clone, Copy, Debug)]
pub struct ValidParams<R: Real>(pub(crate) Params<R>);

impl<R: Real> std::ops::Deref for ValidParams<R> {
    type Target = Params<R>;
    fn deref(&self) -> &Params<R> {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint<R: Real> {
    pub x: R,
    pub y: R,
}

impl<R: Real> PlanePoint<R> {
    pub fn new(x: R, y: R) -> Self {
        Self { x, y }
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        Self::new(R::from_f64(x), R::from_f64(y))
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Self) -> R {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneVector<R: Real> {
    pub dx: R,
    pub dy: R,
}

impl<R: Real> PlaneVector<R> {
    pub fn new(dx: R, dy: R) -> Self {
        Self { dx, dy }
    }

    pub fn from_f64(dx: f64, dy: f64) -> Self {
        Self::new(R::from_f64(dx), R::from_f64(dy))
    }

    pub fn norm(&self) -> R {
        (self.dx * self.dx + self.dy * self.dy).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.dx == R::zero() && self.dy == R::zero()
    }
}

/// The two affine branches. `LeftAffine` applies for `x <= 0`, `RightAffine`
/// for `x >= 0`; they agree on the divider.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    LeftAffine,
    RightAffine,
}

/// Row-major 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<R: Real> {
    pub m00: R,
    pub m01: R,
    pub m10: R,
    pub m11: R,
}

impl<R: Real> Mat2<R> {
    pub fn det(&self) -> R {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn mul_vec(&self, v: PlaneVector<R>) -> PlaneVector<R> {
        PlaneVector::new(
            self.m00 * v.dx + self.m01 * v.dy,
            self.m10 * v.dx + self.m11 * v.dy,
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det == R::zero() {
            return Err(Error::Precondition("matrix determinant is zero".into()));
        }
        Ok(Self {
            m00: self.m11 / det,
            m01: -self.m01 / det,
            m10: -self.m10 / det,
            m11: self.m00 / det,
        })
    }
}

/// Apply one branch on all of the plane (each branch is globally affine).
pub fn eval_branch<R: Real>(params: &Params<R>, branch: Branch, p: PlanePoint<R>) -> PlanePoint<R> {
    let slope = match branch {
        Branch::LeftAffine => params.a - params.c,
        Branch::RightAffine => -(params.a + params.c),
    };
    PlanePoint::new(R::one() + p.y + slope * p.x, params.b * p.x)
}

/// Apply the glued map. At `x = 0` the right branch is used; both branches
/// agree there, so the choice only fixes determinism.
pub fn eval<R: Real>(params: &Params<R>, p: PlanePoint<R>) -> PlanePoint<R> {
    if p.x < R::zero() {
        eval_branch(params, Branch::LeftAffine, p)
    } else {
        eval_branch(params, Branch::RightAffine, p)
    }
}

/// Invert the glued map; requires `b != 0`.
pub fn inverse<R: Real>(params: &Params<R>, q: PlanePoint<R>) -> Result<PlanePoint<R>> {
    if params.b == R::zero() {
        return Err(Error::Precondition("inverse requires b != 0".into()));
    }
    let x = q.y / params.b;
    let slope = if x < R::zero() {
        params.a - params.c
    } else {
        -(params.a + params.c)
    };
    Ok(PlanePoint::new(x, q.x - (R::one() + slope * x)))
}

/// Derivative of the given branch; constant over the plane.
pub fn jacobian<R: Real>(params: &Params<R>, branch: Branch) -> Mat2<R> {
    let top_left = match branch {
        Branch::LeftAffine => params.a - params.c,
        Branch::RightAffine => -(params.a + params.c),
    };
    Mat2 {
        m00: top_left,
        m01: R::one(),
        m10: params.b,
        m11: R::zero(),
    }
}

/// Eigenvalues and eigenvectors of a branch derivative. Eigenvectors are
/// `(lambda, b)` up to scale.
#[derive(Clone, Copy, Debug)]
pub struct EigenData<R: Real> {
    pub lambda_unstable: R,
    pub lambda_stable: R,
    pub vec_unstable: PlaneVector<R>,
    pub vec_stable: PlaneVector<R>,
}

fn eigen_for_branch<R: Real>(params: &Params<R>, branch: Branch) -> EigenData<R> {
    let tr = match branch {
        Branch::LeftAffine => params.a - params.c,
        Branch::RightAffine => -(params.a + params.c),
    };
    let four = R::from_f64(4.0);
    let two = R::from_f64(2.0);
    let disc = (tr * tr + four * params.b).sqrt();
    let l1 = (tr + disc) / two;
    let l2 = (tr - disc) / two;
    let (unstable, stable) = if l1.abs() >= l2.abs() { (l1, l2) } else { (l2, l1) };
    EigenData {
        lambda_unstable: unstable,
        lambda_stable: stable,
        vec_unstable: PlaneVector::new(unstable, params.b),
        vec_stable: PlaneVector::new(stable, params.b),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FixedPoint<R: Real> {
    pub point: PlanePoint<R>,
    pub eigen: EigenData<R>,
}

/// The two branch fixed points: `x` for the right branch (first quadrant
/// for validated parameters), `y` for the left branch (third quadrant).
#[derive(Clone, Copy, Debug)]
pub struct FixedPoints<R: Real> {
    pub x: FixedPoint<R>,
    pub y: FixedPoint<R>,
}

pub fn fixed_points<R: Real>(params: &Params<R>) -> Result<FixedPoints<R>> {
    let one = R::one();
    let den_x = one + params.a - params.b + params.c;
    let den_y = one - params.a - params.b + params.c;
    if den_x == R::zero() {
        return Err(Error::Precondition(
            "fixed point X requires 1 + a - b + c != 0".into(),
        ));
    }
    if den_y == R::zero() {
        return Err(Error::Precondition(
            "fixed point Y requires 1 - a - b + c != 0".into(),
        ));
    }
    Ok(FixedPoints {
        x: FixedPoint {
            point: PlanePoint::new(one / den_x, params.b / den_x),
            eigen: eigen_for_branch(params, Branch::RightAffine),
        },
        y: FixedPoint {
            point: PlanePoint::new(one / den_y, params.b / den_y),
            eigen: eigen_for_branch(params, Branch::LeftAffine),
        },
    })
}

/// The period-two point `Q` in the right half-plane; its image lies in the
/// left half-plane and the second iterate returns to `Q`.
pub fn period2_point<R: Real>(params: &Params<R>) -> Result<PlanePoint<R>> {
    let one = R::one();
    let den = params.a * params.a + (params.b - one) * (params.b - one) - params.c * params.c;
    if !(den > R::zero()) {
        return Err(Error::Precondition(
            "period-two point requires a^2 + (b-1)^2 - c^2 > 0".into(),
        ));
    }
    let xq = (one + params.a - params.b - params.c) / den;
    let yq = -(params.b * (params.a + params.b + params.c - one)) / den;
    Ok(PlanePoint::new(xq, yq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(a: f64, b: f64, c: f64) -> Params<f64> {
        Params::from_f64(a, b, c)
    }

    fn pt(x: f64, y: f64) -> PlanePoint<f64> {
        PlanePoint::from_f64(x, y)
    }

    #[test]
    fn eval_samples() {
        let params = p(1.8, 0.3, 0.0);
        let q = eval(&params, pt(1.0, 0.0));
        assert_eq!(q, pt(-0.8, 0.3));
        let q = eval(&params, pt(-1.0, 0.0));
        assert_eq!(q, pt(-0.8, -0.3));
        for y in [-2.0, 0.0, 0.5, 3.0] {
            let q = eval(&params, pt(0.0, y));
            assert_eq!(q, pt(1.0 + y, 0.0));
        }
    }

    #[test]
    fn branches_extend_affinely_and_agree_on_divider() {
        let params = p(1.8, 0.3, 0.0);
        let left = eval_branch(&params, Branch::LeftAffine, pt(1.0, 0.0));
        assert_eq!(left, pt(2.8, 0.3));
        let right = eval_branch(&params, Branch::RightAffine, pt(1.0, 0.0));
        assert_eq!(right, eval(&params, pt(1.0, 0.0)));
        let l = eval_branch(&params, Branch::LeftAffine, pt(0.0, 5.0));
        let r = eval_branch(&params, Branch::RightAffine, pt(0.0, 5.0));
        assert_eq!(l, pt(6.0, 0.0));
        assert_eq!(l, r);
    }

    #[test]
    fn branch_consistency_everywhere() {
        let params = p(1.77, 0.41, 0.08);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let point = pt(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let expected = if point.x < 0.0 {
                eval_branch(&params, Branch::LeftAffine, point)
            } else {
                eval_branch(&params, Branch::RightAffine, point)
            };
            assert_eq!(eval(&params, point), expected);
            // Orientation: the image's vertical sign equals the source's
            // horizontal sign, exactly, because y' = b x.
            assert_eq!(eval(&params, point).y > 0.0, point.x > 0.0);
            assert_eq!(eval(&params, point).y == 0.0, point.x == 0.0);
        }
    }

    #[test]
    fn determinant_is_minus_b() {
        for (a, b, c) in [(1.8, 0.3, 0.0), (1.8, 0.3, 0.05), (1.63, 0.27, 0.1)] {
            let params = p(a, b, c);
            assert_eq!(jacobian(&params, Branch::LeftAffine).det(), -b);
            assert_eq!(jacobian(&params, Branch::RightAffine).det(), -b);
        }
        let j = jacobian(&p(1.8, 0.3, 0.0), Branch::RightAffine);
        assert_eq!((j.m00, j.m01, j.m10, j.m11), (-1.8, 1.0, 0.3, 0.0));
        let j = jacobian(&p(1.8, 0.3, 0.05), Branch::LeftAffine);
        assert_eq!((j.m00, j.m01, j.m10, j.m11), (1.75, 1.0, 0.3, 0.0));
    }

    #[test]
    fn inverse_round_trip() {
        let params = p(1.8, 0.3, 0.0);
        assert_eq!(inverse(&params, pt(-0.8, 0.3)).unwrap(), pt(1.0, 0.0));
        for y in [-1.0, 0.25, 2.0] {
            let back = inverse(&params, pt(1.0 + y, 0.0)).unwrap();
            assert_eq!(back, pt(0.0, y));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let asym = p(1.72, 0.33, 0.09);
        for _ in 0..10_000 {
            let point = pt(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let back = inverse(&asym, eval(&asym, point)).unwrap();
            let scale = point.x.abs().max(point.y.abs()).max(1.0);
            assert!(back.distance(&point) <= 1e-12 * scale);
            let fwd = eval(&asym, inverse(&asym, point).unwrap());
            assert!(fwd.distance(&point) <= 1e-12 * scale);
        }
        assert!(inverse(&p(1.8, 0.0, 0.0), pt(0.0, 0.0)).is_err());
    }

    #[test]
    fn fixed_points_match_closed_forms() {
        let params = p(1.8, 0.3, 0.0);
        let fps = fixed_points(&params).unwrap();
        assert!((fps.x.point.x - 0.4).abs() < 1e-15);
        assert!((fps.x.point.y - 0.12).abs() < 1e-15);
        assert!((fps.y.point.x + 10.0 / 11.0).abs() < 1e-15);
        assert!((fps.y.point.y + 3.0 / 11.0).abs() < 1e-15);

        // X is fixed under the glued map, Y under the left branch.
        let fx = eval(&params, fps.x.point);
        assert!(fx.distance(&fps.x.point) < 1e-12);
        let fy = eval_branch(&params, Branch::LeftAffine, fps.y.point);
        assert!(fy.distance(&fps.y.point) < 1e-12);

        let l1 = 0.5 * (-1.8 - 4.44f64.sqrt());
        assert!((fps.x.eigen.lambda_unstable - l1).abs() < 1e-12);
        // Eigen sign pattern: right branch lambda_1 < -1, 0 < lambda_2 < 1;
        // left branch lambda_1 > 1, -1 < lambda_2 < 0.
        assert!(fps.x.eigen.lambda_unstable < -1.0);
        assert!(fps.x.eigen.lambda_stable > 0.0 && fps.x.eigen.lambda_stable < 1.0);
        assert!(fps.y.eigen.lambda_unstable > 1.0);
        assert!(fps.y.eigen.lambda_stable < 0.0 && fps.y.eigen.lambda_stable > -1.0);

        // DF2 applied to the unstable eigenvector reproduces it scaled.
        let j = jacobian(&params, Branch::RightAffine);
        let v = fps.x.eigen.vec_unstable;
        let jv = j.mul_vec(v);
        assert!((jv.dx - l1 * v.dx).abs() < 1e-12);
        assert!((jv.dy - l1 * v.dy).abs() < 1e-12);

        assert!(fixed_points(&p(0.3, 1.3, 0.0)).is_err());
    }

    #[test]
    fn period_two_point() {
        let params = p(1.8, 0.3, 0.0);
        let q = period2_point(&params).unwrap();
        assert!((q.x - 2.5 / 3.73).abs() < 1e-15);
        assert!((q.y + 0.33 / 3.73).abs() < 1e-15);
        assert!(q.x > 0.0);
        let fq = eval(&params, q);
        assert!(fq.x < 0.0);
        let ffq = eval(&params, fq);
        assert!(ffq.distance(&q) < 1e-10);

        // Symmetric-case formula for the image height.
        let (a, b) = (1.8, 0.3);
        let yq_expected = -b * (a + b - 1.0) / (a * a + (b - 1.0) * (b - 1.0));
        assert!((q.y - yq_expected).abs() < 1e-15);

        // Denominator guard.
        assert!(period2_point(&p(0.6, 1.0, 0.8)).is_err());
    }

    #[test]
    fn c_zero_reduces_to_symmetric_family() {
        let params = p(1.8, 0.3, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let point = pt(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let q = eval(&params, point);
            assert_eq!(q.x, 1.0 + point.y - 1.8 * point.x.abs());
            assert_eq!(q.y, 0.3 * point.x);
        }
    }
}

//! Parameter-condition pipeline.
//!
//! Assumptions (A1)-(A3) gate everything else. They imply the derived
//! conditions (C1)-(C5), which in turn imply the geometric conditions (L3)
//! (the early manifold arc crosses the stable segment) and (L4) (stretching
//! factor above sqrt 2). Every inequality is reported with a signed margin
//! in its natural units.

use crate::cones::cone_constants;
use crate::error::{Error, Result};
use crate::geometry;
use crate::map::{eval, fixed_points, Params, ValidParams};
use crate::report::{ConditionEntry, ConditionReport};
use crate::scalar::Real;

impl<R: Real> Params<R> {
    /// Check (A1)-(A3) and wrap the parameters on success.
    pub fn validated(self) -> Result<ValidParams<R>> {
        let report = check_assumptions(&self);
        match report.first_failure() {
            None => Ok(ValidParams(self)),
            Some(e) => Err(Error::ConditionViolated {
                condition: e.condition.clone(),
                margin: e.margin,
            }),
        }
    }

    /// Weaker gate admitting every parameter set the geometric construction
    /// supports: `0 < b < 1`, `c >= 0` and `a - c > 1 + b` (which makes the
    /// cone constants real with `d < b` and places the fixed points and the
    /// early iterates of D in their required half-planes). Implied by
    /// (A1)-(A3). The asymmetric kneading root fails (A3) while satisfying
    /// this gate, so the manifold, kneading and orbit routines accept it.
    pub fn validated_relaxed(self) -> Result<ValidParams<R>> {
        let one = R::one();
        let fail = |condition: &str, margin: R| {
            Err(Error::ConditionViolated {
                condition: condition.into(),
                margin: margin.to_f64(),
            })
        };
        if !(self.b > R::zero() && self.b < one) {
            return fail("0 < b < 1", self.b.min(one - self.b));
        }
        if !(self.c >= R::zero()) {
            return fail("c >= 0", self.c);
        }
        let gap = self.a - self.c - one - self.b;
        if !(gap > R::zero()) {
            return fail("a - c > 1 + b", gap);
        }
        Ok(ValidParams(self))
    }
}

/// Assumptions (A1)-(A3). Entries are named "A1".."A3"; A1 is a composite
/// (0 < b < 1 and c >= 0), so its `holds` is the exact conjunction and its
/// margin is the minimum of the sub-margins.
pub fn check_assumptions<R: Real>(params: &Params<R>) -> ConditionReport {
    let Params { a, b, c } = *params;
    let one = R::one();
    let two = R::from_f64(2.0);
    let four = R::from_f64(4.0);
    let sqrt2 = two.sqrt();

    let mut report = ConditionReport::new();

    let a1_margin = b.min(one - b).min(c);
    let a1_holds = b > R::zero() && b < one && c >= R::zero();
    report.entries.push(ConditionEntry {
        condition: "A1".into(),
        holds: a1_holds,
        margin: a1_margin.to_f64(),
        strict: false,
        applicable: true,
    });

    let ab = a + b;
    let a2_value = (two * a + b) * (one - (c * c) / (ab * ab));
    report.push("A2", (four - a2_value).to_f64(), true);

    report.push("A3", ((a - c) * sqrt2 - (b + two)).to_f64(), true);
    report
}

/// Derived conditions (C1)-(C5). C3 only applies for a >= 1 and is marked
/// not-applicable otherwise.
pub fn check_derived<R: Real>(params: &Params<R>) -> ConditionReport {
    let Params { a, b, c } = *params;
    let one = R::one();
    let two = R::from_f64(2.0);
    let three = R::from_f64(3.0);
    let four = R::from_f64(4.0);

    let mut report = ConditionReport::new();

    // C1: 2a + b < 2(1 + sqrt(1 + c^2))
    let c1_rhs = two * (one + (one + c * c).sqrt());
    report.push("C1", (c1_rhs - (two * a + b)).to_f64(), true);

    // C2: c < min{a - b - 1, 1} and a > b + 1
    let gap = a - b - one;
    let c2_margin = (gap.min(one) - c).min(gap);
    report.push("C2", c2_margin.to_f64(), true);

    // Shared quantity: (a - c)(2a^2 + 3a + (2a + 1)c) / (4 (a + 1)^2)
    let c4_bound = (a - c) * (two * a * a + three * a + (two * a + one) * c)
        / (four * (a + one) * (a + one));

    // C3 (hypothesis a >= 1): c4_bound >= 7a/16 - (3c^2 + 2c + 2)/16
    if a >= one {
        let sixteen = R::from_f64(16.0);
        let rhs = (R::from_f64(7.0) * a - (three * c * c + two * c + two)) / sixteen;
        report.push("C3", (c4_bound - rhs).to_f64(), false);
    } else {
        report.push_not_applicable("C3");
    }

    // C4: b <= min{c4_bound, 1/2}
    let half = R::from_f64(0.5);
    report.push("C4", (c4_bound.min(half) - b).to_f64(), false);

    // C5: a^3 - 4a + a^2 c - a c^2 - c^3 - 4bc >= (-a^2 + 2b + c^2) sqrt((a+c)^2 + 4b)
    let lhs = a * a * a - four * a + a * a * c - a * c * c - c * c * c - four * b * c;
    let root = ((a + c) * (a + c) + four * b).sqrt();
    let rhs = (-(a * a) + two * b + c * c) * root;
    report.push("C5", (lhs - rhs).to_f64(), false);

    report
}

/// The slope and intercept formulas for the distinguished lines:
/// `s` through the fixed point X and M (the stable direction), `s13`
/// through F(D) and F^3(D), `s23` through F^2(D) and F^3(D), `s2` along
/// the stable manifold of the period-two point, and `y_m`, the height at
/// which the stable line through X meets the divider.
#[derive(Clone, Copy, Debug)]
pub struct SlopeData<R: Real> {
    pub s: R,
    pub s13: R,
    pub s23: R,
    pub s2: R,
    pub y_m: R,
}

pub fn slopes<R: Real>(params: &Params<R>) -> Result<SlopeData<R>> {
    let Params { a, b, c } = *params;
    let one = R::one();
    let two = R::from_f64(2.0);
    let three = R::from_f64(3.0);
    let four = R::from_f64(4.0);

    let w2 = four * b + (a + c) * (a + c);
    if !(w2 > R::zero()) {
        return Err(Error::Precondition(
            "slopes require the radicand 4b + (a + c)^2 to be positive".into(),
        ));
    }
    let w = w2.sqrt();

    let s_den = -a - c + w;
    if s_den == R::zero() {
        return Err(Error::Precondition(
            "slope s has a vanishing denominator -a - c + sqrt(4b + (a + c)^2)".into(),
        ));
    }
    let s = two * b / s_den;

    let fx_den = one + a - b + c;
    if fx_den == R::zero() {
        return Err(Error::Precondition(
            "y_M requires 1 + a - b + c != 0".into(),
        ));
    }
    let y_m = b / fx_den - two * b / (fx_den * s_den);

    let s13_den = -two * b + four * a * (a - c);
    if s13_den == R::zero() {
        return Err(Error::Precondition(
            "slope s13 has a vanishing denominator -2b + 4a(a - c)".into(),
        ));
    }
    let s13 = b * (three * a - c + w) / s13_den;

    let s23_den = two * a * a + a * (three * b + two * c - two * w) - b * (c + w);
    if s23_den == R::zero() {
        return Err(Error::Precondition(
            "slope s23 has a vanishing denominator".into(),
        ));
    }
    let s23 = two * b * b / s23_den;

    let s2_rad = (a * a - two * b - c * c) * (a * a - two * b - c * c) - four * b * b;
    if s2_rad < R::zero() {
        return Err(Error::Precondition(
            "slope s2 requires the radicand (a^2 - c^2)(a^2 - 4b - c^2) to be nonnegative".into(),
        ));
    }
    let s2_den = a * a - c * c - s2_rad.sqrt();
    if s2_den == R::zero() {
        return Err(Error::Precondition(
            "slope s2 has a vanishing denominator".into(),
        ));
    }
    let s2 = two * b * (a + c) / s2_den;

    // Consistency: the line of slope s through X must hit the divider at
    // (0, y_m).
    let fps = fixed_points(params)?;
    let x = fps.x.point;
    let intercept = x.y - s * x.x;
    let scale = intercept.abs().max(R::one());
    if !((intercept - y_m).abs() <= R::from_f64(1e-10) * scale) {
        return Err(Error::Construction(format!(
            "stable-line intercept mismatch: {:e} vs {:e}",
            intercept.to_f64(),
            y_m.to_f64()
        )));
    }

    Ok(SlopeData { s, s13, s23, s2, y_m })
}

/// Geometric conditions: L4 (stretching factor above sqrt 2) and the three
/// appendix inequalities that assemble into L3. AppC only applies when
/// F^3(D) lies in the left half-plane.
pub fn check_geometry<R: Real>(params: &Params<R>) -> Result<ConditionReport> {
    let assumptions = check_assumptions(params);
    if let Some(e) = assumptions.first_failure() {
        return Err(Error::ConditionViolated {
            condition: e.condition.clone(),
            margin: e.margin,
        });
    }

    let cc = cone_constants(params)?;
    let sl = slopes(params)?;
    let d_point = geometry::unstable_divider_point(params)?;
    let mut iter = d_point;
    let mut f = [d_point; 4];
    for slot in f.iter_mut() {
        iter = eval(params, iter);
        *slot = iter;
    }
    let (f1, f2, f3, f4) = (f[0], f[1], f[2], f[3]);

    let mut report = ConditionReport::new();

    let sqrt2 = R::from_f64(2.0).sqrt();
    report.push("L4", (cc.expansion - sqrt2).to_f64(), true);

    // AppA: F^3(D) lies left of the stable line through X and M.
    let app_a = f3.y - (sl.s * f3.x + sl.y_m);
    report.push("AppA", app_a.to_f64(), true);

    // AppB: the stable line and the line through F(D), F^3(D) cross at
    // positive abscissa (B lies above M).
    if sl.s13 - sl.s == R::zero() {
        return Err(Error::Precondition(
            "AppB requires s13 != s (the two lines must not be parallel)".into(),
        ));
    }
    let x_n = (sl.y_m + sl.s13 * f1.x) / (sl.s13 - sl.s);
    report.push("AppB", x_n.to_f64(), true);

    // AppC: when F^3(D) is in the left half-plane, F^4(D) lies right of the
    // line through F^2(D) and F^3(D).
    if f3.x < R::zero() {
        let x_p = f2.x + (f4.y - f2.y) / sl.s23;
        report.push("AppC", (f4.x - x_p).to_f64(), true);
    } else {
        report.push_not_applicable("AppC");
    }

    let app_a_entry = report.get("AppA").expect("pushed above").clone();
    let app_b_entry = report.get("AppB").expect("pushed above").clone();
    report.entries.push(ConditionEntry {
        condition: "L3".into(),
        holds: app_a_entry.holds && app_b_entry.holds,
        margin: app_a_entry.margin.min(app_b_entry.margin),
        strict: true,
        applicable: true,
    });

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::segments_intersect;
    use crate::map::PlanePoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(a: f64, b: f64, c: f64) -> Params<f64> {
        Params::from_f64(a, b, c)
    }

    #[test]
    fn assumption_margins() {
        let r = check_assumptions(&p(1.8, 0.3, 0.0));
        assert!(r.all_hold());
        assert!((r.get("A2").unwrap().margin - 0.1).abs() < 1e-12);

        let r = check_assumptions(&p(1.7, 0.5, 0.0));
        assert!(!r.get("A3").unwrap().holds);
        assert!((r.get("A3").unwrap().margin - (1.7 * 2f64.sqrt() - 2.5)).abs() < 1e-12);
        assert!((r.get("A3").unwrap().margin + 0.0958).abs() < 1e-4);

        let r = check_assumptions(&p(1.8, 0.25, 0.05));
        assert!(r.all_hold());
        let a2 = (2.0 * 1.8 + 0.25) * (1.0 - 0.05 * 0.05 / (2.05f64 * 2.05));
        assert!((a2 - 3.8477).abs() < 1e-4);
        assert!((r.get("A2").unwrap().margin - (4.0 - a2)).abs() < 1e-12);

        // c = 0 must pass A1 (the bound is non-strict).
        assert!(check_assumptions(&p(1.8, 0.3, 0.0)).get("A1").unwrap().holds);
        // b outside (0, 1) must fail regardless of the margin encoding.
        assert!(!check_assumptions(&p(1.8, 1.0, 0.0)).get("A1").unwrap().holds);
        assert!(!check_assumptions(&p(1.8, 0.0, 0.0)).get("A1").unwrap().holds);
        assert!(!check_assumptions(&p(1.8, 0.3, -0.01)).get("A1").unwrap().holds);
    }

    #[test]
    fn derived_samples() {
        let r = check_derived(&p(1.8, 0.3, 0.0));
        assert!(r.all_hold());
        assert!((r.get("C1").unwrap().margin - 0.1).abs() < 1e-12);
        // C2: c = 0 < min{0.5, 1}.
        assert!((r.get("C2").unwrap().margin - 0.5).abs() < 1e-12);
        // C4: bound is (1.8)(2*3.24 + 5.4)/(4*7.84) ~ 0.6819, so the min is 1/2.
        let bound = 1.8 * (2.0 * 3.24 + 5.4) / (4.0 * 7.84);
        assert!((bound - 0.6819).abs() < 1e-4);
        assert!((r.get("C4").unwrap().margin - (0.5 - 0.3)).abs() < 1e-12);

        // C3 hypothesis: not applicable below a = 1.
        let r = check_derived(&p(0.9, 0.2, 0.0));
        assert!(!r.get("C3").unwrap().applicable);
    }

    #[test]
    fn assumptions_imply_derived() {
        // Seeded rejection sampling over the stated box; the implication is
        // the oracle.
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let mut accepted = 0;
        while accepted < 10_000 {
            let params = p(
                rng.gen_range(1.4..2.2),
                rng.gen_range(0.0..0.6),
                rng.gen_range(0.0..0.3),
            );
            if !check_assumptions(&params).all_hold() {
                continue;
            }
            accepted += 1;
            let derived = check_derived(&params);
            assert!(
                derived.all_hold(),
                "C-condition failed at {:?}: {:?}",
                params,
                derived.first_failure()
            );
        }
    }

    #[test]
    fn slope_formulas_match_eigen_data() {
        let params = p(1.8, 0.3, 0.0);
        let sl = slopes(&params).unwrap();
        // s is the stable eigendirection slope b / lambda_2.
        let fps = fixed_points(&params).unwrap();
        let s_expected = 0.3 / fps.x.eigen.lambda_stable;
        assert!((sl.s - s_expected).abs() < 1e-12);
        assert!((sl.s - 1.9536).abs() < 1e-4);
        assert!(sl.s > 0.0);

        let y_m_expected = 0.12 - 0.6 / (2.5 * 0.30713);
        assert!((sl.y_m - y_m_expected).abs() < 1e-4);
        assert!((sl.y_m + 0.66143).abs() < 1e-5);
        // (0, y_m) lies on the stable line through X.
        assert!((fps.x.point.y - sl.s * fps.x.point.x - sl.y_m).abs() < 1e-12);
    }

    #[test]
    fn slopes_match_iterated_points() {
        // The closed-form slopes must agree with slopes computed from the
        // actual iterates of D.
        let mut rng = ChaCha8Rng::seed_from_u64(5150);
        let mut tested = 0;
        while tested < 200 {
            let params = p(
                rng.gen_range(1.5..2.0),
                rng.gen_range(0.05..0.5),
                rng.gen_range(0.0..0.25),
            );
            if !check_assumptions(&params).all_hold() {
                continue;
            }
            tested += 1;
            let sl = slopes(&params).unwrap();
            let d = geometry::unstable_divider_point(&params).unwrap();
            let f1 = eval(&params, d);
            let f2 = eval(&params, f1);
            let f3 = eval(&params, f2);
            let s13_direct = (f3.y - f1.y) / (f3.x - f1.x);
            let s23_direct = (f3.y - f2.y) / (f3.x - f2.x);
            assert!((sl.s13 - s13_direct).abs() < 1e-9 * s13_direct.abs().max(1.0));
            assert!((sl.s23 - s23_direct).abs() < 1e-9 * s23_direct.abs().max(1.0));
        }
    }

    #[test]
    fn s2_specializes_at_c_zero() {
        let (a, b) = (1.8, 0.3);
        let sl = slopes(&p(a, b, 0.0)).unwrap();
        let expected = 2.0 * a * b / (a * a - ((a * a - 2.0 * b) * (a * a - 2.0 * b) - 4.0 * b * b).sqrt());
        assert!((sl.s2 - expected).abs() < 1e-12);
    }

    #[test]
    fn geometry_conditions_hold_on_reference_params() {
        let r = check_geometry(&p(1.8, 0.3, 0.0)).unwrap();
        assert!(r.all_hold(), "{:?}", r.first_failure());
        assert!(r.get("L4").unwrap().holds);
        assert!(r.get("L3").unwrap().holds);

        // Refuses invalid parameters with a named diagnostic.
        let err = check_geometry(&p(1.7, 0.5, 0.0)).unwrap_err();
        match err {
            Error::ConditionViolated { condition, .. } => assert_eq!(condition, "A3"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn l3_routes_agree() {
        // The appendix-inequality verdict must match a direct segment
        // intersection between [X, M] and [F(D), F^3(D)].
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut tested = 0;
        while tested < 300 {
            let params = p(
                rng.gen_range(1.45..2.1),
                rng.gen_range(0.02..0.55),
                rng.gen_range(0.0..0.3),
            );
            if !check_assumptions(&params).all_hold() {
                continue;
            }
            tested += 1;
            let report = check_geometry(&params).unwrap();
            let l3 = report.get("L3").unwrap().holds;

            let fps = fixed_points(&params).unwrap();
            let sl = slopes(&params).unwrap();
            let x = fps.x.point;
            let m = PlanePoint::from_f64(0.0, sl.y_m);
            let d = geometry::unstable_divider_point(&params).unwrap();
            let f1 = eval(&params, d);
            let f2 = eval(&params, f1);
            let f3 = eval(&params, f2);
            let direct = segments_intersect(&x, &m, &f1, &f3);
            assert_eq!(l3, direct, "routes disagree at {:?}", params);
        }
    }

    #[test]
    fn symmetric_case_region_is_the_open_triangle() {
        // At c = 0 the assumption region coincides with the open triangle
        // bounded by b = 0, 2a + b = 4 and a sqrt2 = b + 2.
        let sqrt2 = 2f64.sqrt();
        for i in 0..140 {
            for j in 0..120 {
                let a = 1.25 + 0.00703 * i as f64;
                let b = -0.05 + 0.00911 * j as f64;
                let ours = check_assumptions(&p(a, b, 0.0)).all_hold();
                let triangle = b > 0.0 && 2.0 * a + b < 4.0 && a * sqrt2 > b + 2.0;
                assert_eq!(ours, triangle, "mismatch at a={a} b={b}");
            }
        }
    }

    #[test]
    fn validation_wrapper() {
        assert!(p(1.8, 0.3, 0.0).validated().is_ok());
        let err = p(1.7, 0.5, 0.0).validated().unwrap_err();
        match err {
            Error::ConditionViolated { condition, .. } => assert_eq!(condition, "A3"),
            other => panic!("unexpected error {other}"),
        }
    }
}

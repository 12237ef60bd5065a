//! Constant invariant cone pair for the family.
//!
//! The unstable cone `K^u = {|dy| <= d |dx|}` hugs the x-axis, the stable
//! cone `K^s = {(b/d)|dx| <= |dy|}` hugs the y-axis, where `d` is the
//! smaller root of `t^2 - (a - c) t + b = 0`. Both branch derivatives map
//! `K^u` into itself stretching coordinates by at least `b/d`, and pull
//! `K^s` back into itself contracting by at least `d`. The sampled
//! verification below checks those implications with signed margins.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::map::{jacobian, Branch, Params, PlaneVector};
use crate::report::ConditionReport;
use crate::scalar::Real;

/// Cone data derived from the parameters: the contraction factor `d`, the
/// expansion factor `b/d`, and the cosine bounds of the two cones.
#[derive(Clone, Copy, Debug)]
pub struct ConeConstants<R: Real> {
    /// Stable contraction factor; also the slope bound of the unstable cone.
    pub d: R,
    /// Unstable expansion factor `b/d`; this is the stretching factor.
    pub expansion: R,
    /// Cosine bound of the unstable cone against the x-axis.
    pub ell_u: R,
    /// Cosine bound of the stable cone against the y-axis.
    pub ell_s: R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    Stable,
    Unstable,
}

pub fn cone_constants<R: Real>(params: &Params<R>) -> Result<ConeConstants<R>> {
    let two = R::from_f64(2.0);
    let four = R::from_f64(4.0);
    let gap = params.a - params.c;
    let disc = gap * gap - four * params.b;
    if !(disc > R::zero()) {
        return Err(Error::Precondition(format!(
            "(a - c)^2 - 4b must be positive for real cone constants (got {:e})",
            disc.to_f64()
        )));
    }
    let d = (gap - disc.sqrt()) / two;
    if !(d > R::zero()) {
        return Err(Error::Precondition(
            "cone constant d must be positive; requires a - c > 0 and b > 0".into(),
        ));
    }
    let expansion = params.b / d;
    if !(d < params.b && params.b < R::one()) {
        return Err(Error::Precondition(format!(
            "cone constants require 0 < d < b < 1 (d = {:e}, b = {:e})",
            d.to_f64(),
            params.b.to_f64()
        )));
    }
    let one = R::one();
    let ell_u = one / (one + d * d).sqrt();
    let ell_s = expansion / (one + expansion * expansion).sqrt();
    Ok(ConeConstants {
        d,
        expansion,
        ell_u,
        ell_s,
    })
}

/// Closed-cone membership; the boundary counts as inside. Exact inequality
/// evaluation, no tolerance.
pub fn in_cone<R: Real>(cc: &ConeConstants<R>, which: ConeKind, v: PlaneVector<R>) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::Degenerate("zero vector has no cone membership".into()));
    }
    Ok(match which {
        ConeKind::Unstable => v.dy.abs() <= cc.d * v.dx.abs(),
        ConeKind::Stable => cc.expansion * v.dx.abs() <= v.dy.abs(),
    })
}

/// Sampled verification of cone invariance and expansion for both branches.
///
/// For each branch, `sample_count` unit vectors are drawn uniformly over the
/// unstable cone's slope range and pushed forward (image must stay in the
/// cone with coordinate growth at least `b/d`), and `sample_count` unit
/// vectors over the stable cone are pulled back (source must lie in the
/// stable cone with forward coordinate contraction at most `d`). The report
/// lists worst-case margins; every margin must be at least -1e-12.
pub fn verify_cone_invariance<R: Real>(
    params: &Params<R>,
    sample_count: usize,
    rng_seed: u64,
) -> Result<ConditionReport> {
    let cc = cone_constants(params)?;
    let mut report = ConditionReport::new();
    if sample_count == 0 {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let d = cc.d;
    let growth = cc.expansion;
    let d64 = d.to_f64();
    let ratio64 = (d / params.b).to_f64();

    for branch in [Branch::LeftAffine, Branch::RightAffine] {
        let tag = match branch {
            Branch::LeftAffine => "left",
            Branch::RightAffine => "right",
        };
        let j = jacobian(params, branch);
        let j_inv = j.inverse()?;

        let mut worst_u_cone = f64::INFINITY;
        let mut worst_u_grow_x = f64::INFINITY;
        let mut worst_u_grow_y = f64::INFINITY;
        let mut worst_s_cone = f64::INFINITY;
        let mut worst_s_contr_x = f64::INFINITY;
        let mut worst_s_contr_y = f64::INFINITY;

        for _ in 0..sample_count {
            // Unstable cone: unit vector with |slope| <= d.
            let slope = R::from_f64(rng.gen_range(-d64..=d64));
            let v = unit(PlaneVector::new(R::one(), slope));
            let w = j.mul_vec(v);
            track(&mut worst_u_cone, d * w.dx.abs() - w.dy.abs());
            track(&mut worst_u_grow_x, w.dx.abs() - growth * v.dx.abs());
            track(&mut worst_u_grow_y, w.dy.abs() - growth * v.dy.abs());

            // Stable cone: unit image vector with |dx/dy| <= d/b, pulled back.
            let t = R::from_f64(rng.gen_range(-ratio64..=ratio64));
            let w = unit(PlaneVector::new(t, R::one()));
            let v = j_inv.mul_vec(w);
            track(&mut worst_s_cone, d * v.dy.abs() - params.b * v.dx.abs());
            track(&mut worst_s_contr_x, d * v.dx.abs() - w.dx.abs());
            track(&mut worst_s_contr_y, d * v.dy.abs() - w.dy.abs());
        }

        for (name, worst) in [
            (format!("unstable-invariance-{tag}"), worst_u_cone),
            (format!("unstable-growth-x-{tag}"), worst_u_grow_x),
            (format!("unstable-growth-y-{tag}"), worst_u_grow_y),
            (format!("stable-membership-{tag}"), worst_s_cone),
            (format!("stable-contraction-x-{tag}"), worst_s_contr_x),
            (format!("stable-contraction-y-{tag}"), worst_s_contr_y),
        ] {
            let holds = worst >= -1e-12;
            report.entries.push(crate::report::ConditionEntry {
                condition: name,
                holds,
                margin: worst,
                strict: false,
                applicable: true,
            });
        }
    }
    Ok(report)
}

fn unit<R: Real>(v: PlaneVector<R>) -> PlaneVector<R> {
    let n = v.norm();
    PlaneVector::new(v.dx / n, v.dy / n)
}

fn track<R: Real>(worst: &mut f64, margin: R) {
    let m = margin.to_f64();
    if m < *worst {
        *worst = m;
    }
}

//! Kneading-equation residuals and the two-parameter root finder.
//!
//! Two scalar equations pin `(a, b)` for a given asymmetry `c`: the first
//! puts the fourth image of D on the stable segment [X, M] (the largest
//! kneading sequence becomes `+--+^inf`), the second puts F(B) on the
//! stable manifold of the period-two point (the smallest becomes
//! `(+-)^inf`). Both come with an independent geometric evaluation built
//! from iterated points, used as a transcription oracle: the closed-form
//! and geometric residuals must share zero sets.

use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::{check_assumptions, slopes};
use crate::error::{Error, Result};
use crate::geometry::distinguished_points;
use crate::map::{fixed_points, Params, ValidParams};
use crate::report::ConditionReport;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug)]
pub struct ResidualPair<R: Real> {
    pub r1: R,
    pub r2: R,
}

/// Left-hand side of the first kneading equation.
pub fn residual_f1<R: Real>(params: &Params<R>) -> Result<R> {
    let Params { a, b, c } = *params;
    let two = R::from_f64(2.0);
    let three = R::from_f64(3.0);
    let four = R::from_f64(4.0);
    let five = R::from_f64(5.0);
    let six = R::from_f64(6.0);

    let w2 = four * b + (a + c) * (a + c);
    if !(w2 > R::zero()) {
        return Err(Error::Precondition(
            "residual r1 requires 4b + (a + c)^2 > 0".into(),
        ));
    }
    let w = w2.sqrt();
    let a2 = a * a;
    let c2 = c * c;
    let poly = (a2 - c2) * (a2 - c2) - six * a2 - four * a
        + four * b * b
        + a2 * b
        + c * (two * a - two * a * b + five * b * c);
    let coeff = a * a2 + two * a - a * b + c * c2 - a2 * c - a * c2 + three * b * c;
    Ok(poly + coeff * w)
}

/// Left-hand side of the second kneading equation.
pub fn residual_f2<R: Real>(params: &Params<R>) -> Result<R> {
    let Params { a, b, c } = *params;
    let one = R::one();
    let two = R::from_f64(2.0);
    let three = R::from_f64(3.0);
    let four = R::from_f64(4.0);

    let a2 = a * a;
    let c2 = c * c;
    let den1 = a2 + (b - one) * (b - one) - c2;
    if !(den1 > R::zero()) {
        return Err(Error::Precondition(
            "residual r2 requires a^2 + (b - 1)^2 - c^2 > 0".into(),
        ));
    }
    let rad = (a2 - c2) * (a2 - four * b - c2);
    if rad < R::zero() {
        return Err(Error::Precondition(
            "residual r2 requires (a^2 - c^2)(a^2 - 4b - c^2) >= 0".into(),
        ));
    }
    let w2 = four * b + (a + c) * (a + c);
    if !(w2 > R::zero()) {
        return Err(Error::Precondition(
            "residual r2 requires 4b + (a + c)^2 > 0".into(),
        ));
    }
    let w = w2.sqrt();
    let den2 = two * (a + c) * den1;
    if den2 == R::zero() {
        return Err(Error::Precondition(
            "residual r2 requires a + c != 0".into(),
        ));
    }
    let den3 = -(two * b) + c + w - a * (three + two * a + two * c - two * w);
    if den3 == R::zero() {
        return Err(Error::Precondition(
            "residual r2 has a vanishing final denominator".into(),
        ));
    }
    Ok(-one
        + (one + a - b - c) / den1
        + ((a + b + c - one) * (a2 - c2 - rad.sqrt())) / den2
        - two * b / den3)
}

/// Simplified residual pair for the symmetric case `c = 0`. The first is
/// the general `r1` specialized exactly; the second shares its zero set
/// with the general `r2` without being proportional to it.
pub fn residuals_c0<R: Real>(a: R, b: R) -> Result<ResidualPair<R>> {
    let two = R::from_f64(2.0);
    let three = R::from_f64(3.0);
    let four = R::from_f64(4.0);
    let six = R::from_f64(6.0);

    let a2 = a * a;
    let rad = a2 - four * b;
    if rad < R::zero() {
        return Err(Error::Precondition(
            "symmetric residuals require a^2 - 4b >= 0".into(),
        ));
    }
    let root = rad.sqrt();
    let den = a - two * b - root;
    if den == R::zero() {
        return Err(Error::Precondition(
            "symmetric residuals require a - 2b - sqrt(a^2 - 4b) != 0".into(),
        ));
    }
    let w2 = four * b + a2;
    if !(w2 > R::zero()) {
        return Err(Error::Precondition(
            "symmetric residuals require a^2 + 4b > 0".into(),
        ));
    }
    let w = w2.sqrt();

    let r1 = a2 * a2 - six * a2 - four * a + four * b * b + a2 * b + (a2 * a + two * a - a * b) * w;
    let r2 = four * (-a2 - two * b * b + two * b + a * root) / den - (two + a - w) * (three * a - w);
    Ok(ResidualPair { r1, r2 })
}

/// Residual pair evaluated geometrically from iterated points rather than
/// the closed forms: the signed offset of F^4(D) from the stable line
/// through X, and of F(B) from the period-two point's stable line. Both are
/// oriented so their signs agree with the closed-form residuals away from
/// the zero set.
pub fn geometric_residuals<R: Real>(params: &ValidParams<R>) -> Result<ResidualPair<R>> {
    let dp = distinguished_points(params)?;
    let sl = slopes(params)?;
    let fps = fixed_points(params)?;
    let x = fps.x.point;
    let f4 = dp.fd[4];
    let r1 = f4.y - x.y - sl.s * (f4.x - x.x);
    let r2 = sl.s2 * (dp.q.x - dp.fb.x) - dp.q.y;
    Ok(ResidualPair { r1, r2 })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Region {
    pub a_min: f64,
    pub a_max: f64,
    pub b_min: f64,
    pub b_max: f64,
}

impl Region {
    pub fn new(a_min: f64, a_max: f64, b_min: f64, b_max: f64) -> Self {
        Self {
            a_min,
            a_max,
            b_min,
            b_max,
        }
    }

    fn is_empty(&self) -> bool {
        !(self.a_min < self.a_max && self.b_min < self.b_max)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GridSize {
    pub na: usize,
    pub nb: usize,
}

/// One grid cell, evaluated at its center.
#[derive(Clone, Copy, Debug)]
pub struct Cell {
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    pub r2: f64,
    /// The parameter assumptions (A1)-(A3) hold here.
    pub assumptions_ok: bool,
    /// Both residual formulas were evaluable (radicands, denominators).
    /// Cells failing this are unsigned.
    pub computable: bool,
}

/// Residual signs over a parameter rectangle at fixed `c`.
#[derive(Clone, Debug)]
pub struct SignGrid {
    pub c: f64,
    pub region: Region,
    pub na: usize,
    pub nb: usize,
    /// Row-major, row index = b index.
    pub cells: Vec<Cell>,
}

impl SignGrid {
    pub fn cell(&self, ia: usize, ib: usize) -> &Cell {
        &self.cells[ib * self.na + ia]
    }

    /// Cells adjacent to sign changes of both residuals, grouped into
    /// 4-connected components. A unique root shows up as a single
    /// component; the CLI reports every component found.
    pub fn sign_change_components(&self) -> Vec<Vec<(usize, usize)>> {
        let flagged: Vec<bool> = (0..self.na * self.nb)
            .map(|idx| self.both_change(idx % self.na, idx / self.na))
            .collect();
        let mut seen = vec![false; flagged.len()];
        let mut components = Vec::new();
        for start in 0..flagged.len() {
            if !flagged[start] || seen[start] {
                continue;
            }
            let mut component = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(idx) = stack.pop() {
                let (ia, ib) = (idx % self.na, idx / self.na);
                component.push((ia, ib));
                for (na_, nb_) in neighbors(ia, ib, self.na, self.nb) {
                    let nidx = nb_ * self.na + na_;
                    if flagged[nidx] && !seen[nidx] {
                        seen[nidx] = true;
                        stack.push(nidx);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    fn both_change(&self, ia: usize, ib: usize) -> bool {
        let cell = self.cell(ia, ib);
        if !cell.computable {
            return false;
        }
        let mut r1_change = false;
        let mut r2_change = false;
        for (na_, nb_) in neighbors(ia, ib, self.na, self.nb) {
            let other = self.cell(na_, nb_);
            if !other.computable {
                continue;
            }
            if (cell.r1 >= 0.0) != (other.r1 >= 0.0) {
                r1_change = true;
            }
            if (cell.r2 >= 0.0) != (other.r2 >= 0.0) {
                r2_change = true;
            }
        }
        r1_change && r2_change
    }
}

fn neighbors(ia: usize, ib: usize, na: usize, nb: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(4);
    if ia > 0 {
        out.push((ia - 1, ib));
    }
    if ia + 1 < na {
        out.push((ia + 1, ib));
    }
    if ib > 0 {
        out.push((ia, ib - 1));
    }
    if ib + 1 < nb {
        out.push((ia, ib + 1));
    }
    out
}

/// Evaluate residual signs and assumption validity at every cell center.
/// Deterministic; rows are computed in parallel and assembled by index.
pub fn sign_grid<R: Real>(c: R, region: Region, size: GridSize) -> Result<SignGrid> {
    if region.is_empty() {
        return Err(Error::Precondition("sign grid region is empty".into()));
    }
    if size.na < 2 || size.nb < 2 {
        return Err(Error::Precondition("sign grid needs at least 2x2 cells".into()));
    }
    let da = (region.a_max - region.a_min) / size.na as f64;
    let db = (region.b_max - region.b_min) / size.nb as f64;
    let rows: Vec<Vec<Cell>> = (0..size.nb)
        .into_par_iter()
        .map(|ib| {
            let b = region.b_min + (ib as f64 + 0.5) * db;
            (0..size.na)
                .map(|ia| {
                    let a = region.a_min + (ia as f64 + 0.5) * da;
                    let params = Params::new(R::from_f64(a), R::from_f64(b), c);
                    let assumptions_ok = check_assumptions(&params).all_hold();
                    let r1 = residual_f1(&params);
                    let r2 = residual_f2(&params);
                    let computable = r1.is_ok() && r2.is_ok();
                    Cell {
                        a,
                        b,
                        r1: r1.map(|v| v.to_f64()).unwrap_or(f64::NAN),
                        r2: r2.map(|v| v.to_f64()).unwrap_or(f64::NAN),
                        assumptions_ok,
                        computable,
                    }
                })
                .collect()
        })
        .collect();
    Ok(SignGrid {
        c: c.to_f64(),
        region,
        na: size.na,
        nb: size.nb,
        cells: rows.into_iter().flatten().collect(),
    })
}

/// Outcome of the two-parameter solve, with the residuals achieved and the
/// geometric cross-check.
#[derive(Clone, Debug)]
pub struct SolveReport<R: Real> {
    pub a: R,
    pub b: R,
    pub iterations: usize,
    pub r1: R,
    pub r2: R,
    pub geo_r1: f64,
    pub geo_r2: f64,
    pub assumptions: ConditionReport,
}

/// Solve the residual pair for `(a, b)` at fixed `c`.
///
/// A coarse sign grid brackets the root; damped Newton iterations with a
/// central finite-difference Jacobian refine it until both residuals drop
/// below `tol`. The geometric residuals must confirm the root to `10 tol`.
pub fn solve_system<R: Real>(c: R, region: Region, tol: f64) -> Result<SolveReport<R>> {
    if region.is_empty() {
        return Err(Error::Precondition("solve region is empty".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }

    let mut best: Option<(f64, f64, f64, f64, usize)> = None;
    for grid_n in [64usize, 128] {
        let grid = sign_grid(c, region, GridSize { na: grid_n, nb: grid_n })?;
        let mut candidates: Vec<&Cell> = Vec::new();
        for ib in 0..grid.nb {
            for ia in 0..grid.na {
                if grid.both_change(ia, ib) {
                    candidates.push(grid.cell(ia, ib));
                }
            }
        }
        candidates.sort_by(|x, y| {
            (x.r1.abs() + x.r2.abs())
                .partial_cmp(&(y.r1.abs() + y.r2.abs()))
                .expect("finite residuals on valid cells")
        });
        for cell in candidates.into_iter().take(8) {
            match newton_refine(c, cell.a, cell.b, region, tol) {
                Ok((a, b, iterations)) => {
                    let report = finish(c, a, b, iterations);
                    if report.geo_r1.abs() < 10.0 * tol && report.geo_r2.abs() < 10.0 * tol {
                        return Ok(report);
                    }
                    let score = report.r1.abs().max(report.r2.abs()).to_f64();
                    if best.map_or(true, |(_, _, br1, br2, _)| score < br1.abs().max(br2.abs())) {
                        best = Some((
                            report.a.to_f64(),
                            report.b.to_f64(),
                            report.r1.to_f64(),
                            report.r2.to_f64(),
                            report.iterations,
                        ));
                    }
                }
                Err((a, b, r1, r2, iterations)) => {
                    let score = r1.abs().max(r2.abs());
                    if best.map_or(true, |(_, _, br1, br2, _)| score < br1.abs().max(br2.abs())) {
                        best = Some((a, b, r1, r2, iterations));
                    }
                }
            }
        }
    }

    match best {
        Some((a, b, r1, r2, iterations)) => Err(Error::NonConvergence {
            iterations,
            a,
            b,
            r1,
            r2,
        }),
        None => Err(Error::NoBracket),
    }
}

type NewtonFailure = (f64, f64, f64, f64, usize);

fn residual_pair_at<R: Real>(c: R, a: R, b: R) -> Option<(R, R)> {
    let params = Params::new(a, b, c);
    match (residual_f1(&params), residual_f2(&params)) {
        (Ok(r1), Ok(r2)) => Some((r1, r2)),
        _ => None,
    }
}

fn newton_refine<R: Real>(
    c: R,
    a0: f64,
    b0: f64,
    region: Region,
    tol: f64,
) -> std::result::Result<(R, R, usize), NewtonFailure> {
    let mut a = R::from_f64(a0);
    let mut b = R::from_f64(b0);
    let fail = |a: R, b: R, r1: R, r2: R, it: usize| {
        (a.to_f64(), b.to_f64(), r1.to_f64(), r2.to_f64(), it)
    };
    let (mut r1, mut r2) = residual_pair_at(c, a, b)
        .ok_or((a0, b0, f64::NAN, f64::NAN, 0usize))?;
    for iteration in 0..200 {
        let err = r1.abs().max(r2.abs()).to_f64();
        if err < tol {
            return Ok((a, b, iteration));
        }
        // Central finite-difference Jacobian, step scaled to the parameter.
        let ha = R::from_f64(1e-7 * a.to_f64().abs().max(1.0));
        let hb = R::from_f64(1e-7 * b.to_f64().abs().max(1.0));
        let j = (|| {
            let (r1a_p, r2a_p) = residual_pair_at(c, a + ha, b)?;
            let (r1a_m, r2a_m) = residual_pair_at(c, a - ha, b)?;
            let (r1b_p, r2b_p) = residual_pair_at(c, a, b + hb)?;
            let (r1b_m, r2b_m) = residual_pair_at(c, a, b - hb)?;
            let two = R::from_f64(2.0);
            Some((
                (r1a_p - r1a_m) / (two * ha),
                (r1b_p - r1b_m) / (two * hb),
                (r2a_p - r2a_m) / (two * ha),
                (r2b_p - r2b_m) / (two * hb),
            ))
        })();
        let Some((j00, j01, j10, j11)) = j else {
            return Err(fail(a, b, r1, r2, iteration));
        };
        let det = j00 * j11 - j01 * j10;
        if det == R::zero() {
            return Err(fail(a, b, r1, r2, iteration));
        }
        let da = (r1 * j11 - r2 * j01) / det;
        let db = (r2 * j00 - r1 * j10) / det;

        // Damped update: halve the step while the residual grows.
        let mut scale = R::one();
        let mut accepted = false;
        for _ in 0..40 {
            let an = a - scale * da;
            let bn = b - scale * db;
            let inside = {
                let af = an.to_f64();
                let bf = bn.to_f64();
                af >= region.a_min && af <= region.a_max && bf >= region.b_min && bf <= region.b_max
            };
            if inside {
                if let Some((n1, n2)) = residual_pair_at(c, an, bn) {
                    if n1.abs().max(n2.abs()).to_f64() < err {
                        a = an;
                        b = bn;
                        r1 = n1;
                        r2 = n2;
                        accepted = true;
                        break;
                    }
                }
            }
            scale = scale * R::from_f64(0.5);
        }
        if !accepted {
            return Err(fail(a, b, r1, r2, iteration));
        }
    }
    Err(fail(a, b, r1, r2, 200))
}

fn finish<R: Real>(c: R, a: R, b: R, iterations: usize) -> SolveReport<R> {
    let params = Params::new(a, b, c);
    let (r1, r2) = residual_pair_at(c, a, b).unwrap_or((R::zero(), R::zero()));
    let assumptions = check_assumptions(&params);
    // The geometric cross-check needs only the construction gate; the
    // asymmetric roots fail (A3) yet carry the full construction.
    let geo = params
        .validated_relaxed()
        .ok()
        .and_then(|vp| geometric_residuals(&vp).ok());
    let (geo_r1, geo_r2) = match geo {
        Some(pair) => (pair.r1.to_f64(), pair.r2.to_f64()),
        None => (f64::NAN, f64::NAN),
    };
    SolveReport {
        a,
        b,
        iterations,
        r1,
        r2,
        geo_r1,
        geo_r2,
        assumptions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOLVED_A_C0: f64 = 1.65531960296885174459210852526;
    const SOLVED_B_C0: f64 = 0.276507107967726099812119447619;
    const SOLVED_A_C01: f64 = 1.63537454884191587958622457986;
    const SOLVED_B_C01: f64 = 0.276988367360779957370639853557;

    fn p(a: f64, b: f64, c: f64) -> Params<f64> {
        Params::from_f64(a, b, c)
    }

    #[test]
    fn residuals_vanish_at_published_roots() {
        let r1 = residual_f1(&p(SOLVED_A_C0, SOLVED_B_C0, 0.0)).unwrap();
        assert!(r1.abs() < 1e-10, "r1 = {r1:e}");
        let r2 = residual_f2(&p(SOLVED_A_C0, SOLVED_B_C0, 0.0)).unwrap();
        assert!(r2.abs() < 1e-10, "r2 = {r2:e}");

        let r1 = residual_f1(&p(SOLVED_A_C01, SOLVED_B_C01, 0.1)).unwrap();
        assert!(r1.abs() < 1e-10, "r1 = {r1:e}");
        let r2 = residual_f2(&p(SOLVED_A_C01, SOLVED_B_C01, 0.1)).unwrap();
        assert!(r2.abs() < 1e-10, "r2 = {r2:e}");

        let pair = residuals_c0(SOLVED_A_C0, SOLVED_B_C0).unwrap();
        assert!(pair.r1.abs() < 1e-10);
        assert!(pair.r2.abs() < 1e-10);
    }

    #[test]
    fn symmetric_residuals_specialize_general_ones() {
        // r1 at c = 0 is the same expression; check over a grid.
        for i in 0..20 {
            for j in 0..20 {
                let a = 1.2 + 0.04 * i as f64;
                let b = 0.02 + 0.02 * j as f64;
                let Ok(pair) = residuals_c0(a, b) else { continue };
                let general = residual_f1(&p(a, b, 0.0)).unwrap();
                let scale = general.abs().max(1.0);
                assert!(
                    (pair.r1 - general).abs() < 1e-12 * scale,
                    "mismatch at a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn integer_radicand_evaluation() {
        let pair = residuals_c0(2.0, 0.75).unwrap();
        assert!(pair.r1.is_finite() && pair.r2.is_finite());
        // a^2 - 4b = 1 exactly.
        assert!((2.0f64 * 2.0 - 4.0 * 0.75 - 1.0).abs() == 0.0);
    }

    #[test]
    fn sign_flips_across_the_first_curve() {
        let lo = residuals_c0(1.5, 0.2).unwrap();
        let hi = residuals_c0(1.8, 0.35).unwrap();
        assert!(lo.r1 * hi.r1 < 0.0, "no bracket: {} vs {}", lo.r1, hi.r1);
    }

    #[test]
    fn geometric_oracle_agrees_at_roots() {
        let vp = p(SOLVED_A_C0, SOLVED_B_C0, 0.0).validated().unwrap();
        let pair = geometric_residuals(&vp).unwrap();
        assert!(pair.r1.abs() < 1e-9, "geo r1 = {:e}", pair.r1);
        assert!(pair.r2.abs() < 1e-9, "geo r2 = {:e}", pair.r2);

        // The asymmetric root fails (A3), so it enters through the
        // construction gate.
        let vp = p(SOLVED_A_C01, SOLVED_B_C01, 0.1).validated_relaxed().unwrap();
        let pair = geometric_residuals(&vp).unwrap();
        assert!(pair.r1.abs() < 1e-9);
        assert!(pair.r2.abs() < 1e-9);

        // Away from the root both oracles are nonzero with matching signs.
        let vp = p(1.8, 0.3, 0.0).validated().unwrap();
        let geo = geometric_residuals(&vp).unwrap();
        let closed1 = residual_f1(&p(1.8, 0.3, 0.0)).unwrap();
        let closed2 = residual_f2(&p(1.8, 0.3, 0.0)).unwrap();
        assert!(geo.r1 != 0.0 && closed1 != 0.0);
        assert_eq!(geo.r1 > 0.0, closed1 > 0.0);
        assert_eq!(geo.r2 > 0.0, closed2 > 0.0);
    }

    #[test]
    fn grid_basics() {
        let grid = sign_grid(
            0.0,
            Region::new(1.0, 2.0, 0.0, 1.0),
            GridSize { na: 2, nb: 2 },
        )
        .unwrap();
        assert_eq!(grid.cells.len(), 4);
        assert!(sign_grid(0.0, Region::new(2.0, 1.0, 0.0, 1.0), GridSize { na: 2, nb: 2 }).is_err());
        assert!(sign_grid(0.0, Region::new(1.0, 2.0, 0.0, 1.0), GridSize { na: 1, nb: 2 }).is_err());
    }

    #[test]
    fn unique_sign_change_component_contains_the_root() {
        let grid = sign_grid(
            0.0,
            Region::new(1.0, 2.0, 0.0, 1.0),
            GridSize { na: 100, nb: 100 },
        )
        .unwrap();
        let components = grid.sign_change_components();
        assert_eq!(components.len(), 1, "components: {}", components.len());
        let found = components[0].iter().any(|&(ia, ib)| {
            let cell = grid.cell(ia, ib);
            (cell.a - 1.655).abs() <= 0.011 && (cell.b - 0.2765).abs() <= 0.011
        });
        assert!(found, "component misses the solved parameters");
    }

    #[test]
    fn solve_reproduces_published_roots() {
        let report = solve_system(0.0, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
        assert!((report.a - SOLVED_A_C0).abs() < 1e-11, "a = {:.16}", report.a);
        assert!((report.b - SOLVED_B_C0).abs() < 1e-11, "b = {:.16}", report.b);
        assert!(report.r1.abs() < 1e-10 && report.r2.abs() < 1e-10);
        assert!(report.geo_r1.abs() < 1e-9 && report.geo_r2.abs() < 1e-9);
        assert!(report.assumptions.all_hold());

        let report = solve_system(0.1, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
        assert!((report.a - SOLVED_A_C01).abs() < 1e-11);
        assert!((report.b - SOLVED_B_C01).abs() < 1e-11);
        assert!(report.r1.abs() < 1e-10 && report.r2.abs() < 1e-10);
        assert!(report.geo_r1.abs() < 1e-9 && report.geo_r2.abs() < 1e-9);
        // The asymmetric root satisfies A1 and A2 but genuinely fails A3:
        // (a - c) sqrt2 - (b + 2) ~ -0.1056.
        assert!(report.assumptions.get("A1").unwrap().holds);
        assert!(report.assumptions.get("A2").unwrap().holds);
        let a3 = report.assumptions.get("A3").unwrap();
        assert!(!a3.holds);
        assert!((a3.margin + 0.1056).abs() < 1e-3, "A3 margin {}", a3.margin);
    }

    #[test]
    fn solver_determinism() {
        let r1 = solve_system::<f64>(0.0, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
        let r2 = solve_system::<f64>(0.0, Region::new(1.0, 2.0, 0.0, 1.0), 1e-12).unwrap();
        assert_eq!(r1.a.to_bits(), r2.a.to_bits());
        assert_eq!(r1.b.to_bits(), r2.b.to_bits());
        assert_eq!(r1.iterations, r2.iterations);
    }

    #[test]
    fn empty_region_is_rejected() {
        assert!(solve_system::<f64>(0.0, Region::new(1.0, 1.0, 0.0, 1.0), 1e-12).is_err());
        assert!(solve_system::<f64>(0.0, Region::new(1.0, 2.0, 0.0, 1.0), 0.0).is_err());
    }
}

//! Distinguished points, the trapping triangle, exact polygon images,
//! unstable-manifold polylines, turning points and attractor orbits.
//!
//! The map is affine on each half-plane, so the image of a straight segment
//! is straight once the segment is split at the divider. Polylines grown
//! here are therefore exact manifold arcs (up to roundoff), not
//! discretizations: every fold of the manifold appears as a vertex.

use crate::error::{Error, Result};
use crate::map::{eval, fixed_points, period2_point, Params, PlanePoint, ValidParams};
use crate::scalar::Real;

/// Default cap on manifold polyline vertices.
pub const DEFAULT_VERTEX_CAP: usize = 10_000_000;

/// Orbits leaving this radius are reported divergent.
const ESCAPE_RADIUS: f64 = 1e3;

/// Generation budget for turning-point enumeration.
const MAX_GENERATIONS: u32 = 64;

// ---------------------------------------------------------------------------
// Robust segment predicates
// ---------------------------------------------------------------------------

fn coord<R: Real>(p: &PlanePoint<R>) -> robust::Coord<f64> {
    robust::Coord {
        x: p.x.to_f64(),
        y: p.y.to_f64(),
    }
}

/// Sign of the orientation of the triangle (a, b, c); exact for `f64`
/// coordinates (extended scalars are narrowed first).
pub fn orient<R: Real>(a: &PlanePoint<R>, b: &PlanePoint<R>, c: &PlanePoint<R>) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

/// Whether closed segments [a1, a2] and [b1, b2] share a point.
pub fn segments_intersect<R: Real>(
    a1: &PlanePoint<R>,
    a2: &PlanePoint<R>,
    b1: &PlanePoint<R>,
    b2: &PlanePoint<R>,
) -> bool {
    let o1 = orient(a1, a2, b1);
    let o2 = orient(a1, a2, b2);
    let o3 = orient(b1, b2, a1);
    let o4 = orient(b1, b2, a2);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    let on_segment = |p: &PlanePoint<R>, q: &PlanePoint<R>, r: &PlanePoint<R>| {
        // r collinear with [p, q]; is it inside the bounding box?
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (o1 == 0.0 && on_segment(a1, a2, b1))
        || (o2 == 0.0 && on_segment(a1, a2, b2))
        || (o3 == 0.0 && on_segment(b1, b2, a1))
        || (o4 == 0.0 && on_segment(b1, b2, a2))
}

/// Intersection point of two segments, when they cross. Existence is gated
/// by the robust orientation signs; coordinates come from the parametric
/// solve in the working precision.
pub fn segment_intersection<R: Real>(
    a1: &PlanePoint<R>,
    a2: &PlanePoint<R>,
    b1: &PlanePoint<R>,
    b2: &PlanePoint<R>,
) -> Option<PlanePoint<R>> {
    if !segments_intersect(a1, a2, b1, b2) {
        return None;
    }
    let r = (a2.x - a1.x, a2.y - a1.y);
    let s = (b2.x - b1.x, b2.y - b1.y);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == R::zero() {
        // Collinear touch; fall back to an endpoint inside the other segment.
        for p in [b1, b2] {
            if orient(a1, a2, p) == 0.0 {
                return Some(*p);
            }
        }
        return Some(*a1);
    }
    let t = ((b1.x - a1.x) * s.1 - (b1.y - a1.y) * s.0) / denom;
    Some(PlanePoint::new(a1.x + t * r.0, a1.y + t * r.1))
}

/// Distance from a point to a closed segment.
pub fn point_segment_distance<R: Real>(
    p: &PlanePoint<R>,
    a: &PlanePoint<R>,
    b: &PlanePoint<R>,
) -> R {
    let abx = b.x - a.x;
    let aby = b.y - a.y;
    let len2 = abx * abx + aby * aby;
    if len2 == R::zero() {
        return p.distance(a);
    }
    let t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
    let t = t.max(R::zero()).min(R::one());
    let proj = PlanePoint::new(a.x + t * abx, a.y + t * aby);
    p.distance(&proj)
}

// ---------------------------------------------------------------------------
// Polygons
// ---------------------------------------------------------------------------

/// Simple polygon with counterclockwise vertex order.
#[derive(Clone, Debug)]
pub struct Polygon<R: Real> {
    vertices: Vec<PlanePoint<R>>,
}

impl<R: Real> Polygon<R> {
    /// Validate and normalize: at least three finite vertices, nonzero
    /// area, simple boundary; the stored order is counterclockwise.
    pub fn new(mut vertices: Vec<PlanePoint<R>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Degenerate("polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::Degenerate("polygon vertex is not finite".into()));
        }
        let area = shoelace(&vertices);
        if area == R::zero() {
            return Err(Error::Degenerate("polygon has zero area".into()));
        }
        if area < R::zero() {
            vertices.reverse();
        }
        let poly = Self { vertices };
        if !poly.is_simple() {
            return Err(Error::Degenerate("polygon boundary self-intersects".into()));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[PlanePoint<R>] {
        &self.vertices
    }

    pub fn signed_area(&self) -> R {
        shoelace(&self.vertices)
    }

    fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let (a1, a2) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            for j in i + 1..n {
                let (b1, b2) = (&self.vertices[j], &self.vertices[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Shared endpoint allowed; collinear overlap is not.
                    let shared = if j == i + 1 { a2 } else { a1 };
                    let (pa, pb) = if j == i + 1 { (a1, b2) } else { (b1, a2) };
                    if orient(pa, shared, pb) == 0.0
                        && (pa.x - shared.x) * (pb.x - shared.x)
                            + (pa.y - shared.y) * (pb.y - shared.y)
                            > R::zero()
                    {
                        return false;
                    }
                } else if segments_intersect(a1, a2, b1, b2) {
                    return false;
                }
            }
        }
        true
    }

    /// Signed distance to the boundary, positive inside. Exact containment
    /// test for convex polygons.
    pub fn containment_margin(&self, p: &PlanePoint<R>) -> R {
        let n = self.vertices.len();
        let mut margin = R::from_f64(f64::INFINITY);
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            let len = a.distance(b);
            let dist = cross / len;
            margin = margin.min(dist);
        }
        margin
    }
}

fn shoelace<R: Real>(vertices: &[PlanePoint<R>]) -> R {
    let n = vertices.len();
    let mut acc = R::zero();
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        acc = acc + (a.x * b.y - b.x * a.y);
    }
    acc / R::from_f64(2.0)
}

/// Image of a polygon under the map. Each edge is split at its divider
/// crossing before mapping, so the output is the exact image polygon with
/// at most twice the vertex count.
pub fn map_polygon<R: Real>(params: &Params<R>, poly: &Polygon<R>) -> Result<Polygon<R>> {
    let vs = poly.vertices();
    let n = vs.len();
    let mut image = Vec::with_capacity(2 * n);
    for i in 0..n {
        let p = vs[i];
        let q = vs[(i + 1) % n];
        image.push(eval(params, p));
        if let Some(crossing) = divider_crossing(&p, &q) {
            image.push(eval(params, crossing));
        }
    }
    Polygon::new(image)
}

/// Exact divider crossing of the open segment (p, q), if the segment
/// properly changes side. Vertices already inside the divider band are the
/// caller's responsibility.
fn divider_crossing<R: Real>(p: &PlanePoint<R>, q: &PlanePoint<R>) -> Option<PlanePoint<R>> {
    let eps = R::divider_eps();
    if p.x.abs() <= eps || q.x.abs() <= eps {
        return None;
    }
    if (p.x > R::zero()) == (q.x > R::zero()) {
        return None;
    }
    let t = p.x / (p.x - q.x);
    Some(PlanePoint::new(R::zero(), p.y + t * (q.y - p.y)))
}

// ---------------------------------------------------------------------------
// Distinguished points
// ---------------------------------------------------------------------------

/// The distinguished points of the construction.
///
/// `fd[i]` is the i-th image of `d` (so `fd[0] = d`; `fd[1]` lies on the
/// divider's image). `m` is where the stable line through `x` meets the
/// divider, `n` where the stable segment [x, m] meets the manifold segment
/// [fd[1], fd[3]], `b` where the divider crosses the lower boundary of the
/// trapping triangle, `fb` its image, and `q` the period-two point.
#[derive(Clone, Copy, Debug)]
pub struct DistinguishedPoints<R: Real> {
    pub x: PlanePoint<R>,
    pub y: PlanePoint<R>,
    pub d: PlanePoint<R>,
    pub fd: [PlanePoint<R>; 6],
    pub m: PlanePoint<R>,
    pub n: PlanePoint<R>,
    pub b: PlanePoint<R>,
    pub fb: PlanePoint<R>,
    pub q: PlanePoint<R>,
}

/// Where the unstable eigenline of the right-branch fixed point crosses the
/// divider. The seed of every manifold construction.
pub fn unstable_divider_point<R: Real>(params: &Params<R>) -> Result<PlanePoint<R>> {
    let fps = fixed_points(params)?;
    let x = fps.x.point;
    let lambda = fps.x.eigen.lambda_unstable;
    if lambda == R::zero() {
        return Err(Error::Precondition("unstable eigenvalue vanishes".into()));
    }
    Ok(PlanePoint::new(R::zero(), x.y - params.b * x.x / lambda))
}

/// Where the stable eigenline of the right-branch fixed point crosses the
/// divider (the point M).
pub fn stable_divider_point<R: Real>(params: &Params<R>) -> Result<PlanePoint<R>> {
    let fps = fixed_points(params)?;
    let x = fps.x.point;
    let lambda = fps.x.eigen.lambda_stable;
    if lambda == R::zero() {
        return Err(Error::Precondition("stable eigenvalue vanishes".into()));
    }
    Ok(PlanePoint::new(R::zero(), x.y - params.b * x.x / lambda))
}

pub fn distinguished_points<R: Real>(params: &ValidParams<R>) -> Result<DistinguishedPoints<R>> {
    let fps = fixed_points(params)?;
    let d = unstable_divider_point(params)?;
    let m = stable_divider_point(params)?;

    let mut fd = [d; 6];
    for i in 1..6 {
        fd[i] = eval(params, fd[i - 1]);
    }

    let x = fps.x.point;
    let n = segment_intersection(&x, &m, &fd[1], &fd[3]).ok_or_else(|| {
        Error::Construction(
            "segments [X, M] and [F(D), F^3(D)] do not intersect (condition L3 fails)".into(),
        )
    })?;

    let eps = R::divider_eps();
    let b = if fd[3].x < -eps {
        divider_crossing(&fd[1], &fd[3]).ok_or_else(|| {
            Error::Construction("divider crossing of [F(D), F^3(D)] not found".into())
        })?
    } else if fd[3].x > eps {
        divider_crossing(&fd[3], &fd[2]).ok_or_else(|| {
            Error::Construction("divider crossing of [F^3(D), F^2(D)] not found".into())
        })?
    } else {
        PlanePoint::new(R::zero(), fd[3].y)
    };
    let fb = eval(params, b);
    let q = period2_point(params)?;

    Ok(DistinguishedPoints {
        x,
        y: fps.y.point,
        d,
        fd,
        m,
        n,
        b,
        fb,
        q,
    })
}

/// The trapping triangle with vertices F(D), F^2(D), F^3(D).
pub fn theta_triangle<R: Real>(params: &ValidParams<R>) -> Result<Polygon<R>> {
    let d = unstable_divider_point(params)?;
    let f1 = eval(params, d);
    let f2 = eval(params, f1);
    let f3 = eval(params, f2);
    Polygon::new(vec![f1, f2, f3])
}

/// Check that the triangle maps into itself. Returns the verdict and the
/// most negative signed distance of any image vertex to the triangle
/// boundary (nonnegative means contained).
pub fn triangle_invariance<R: Real>(params: &ValidParams<R>) -> Result<(bool, R)> {
    let theta = theta_triangle(params)?;
    let image = map_polygon(params, &theta)?;
    let mut margin = R::from_f64(f64::INFINITY);
    for v in image.vertices() {
        margin = margin.min(theta.containment_margin(v));
    }
    Ok((margin >= R::zero(), margin))
}

// ---------------------------------------------------------------------------
// Unstable-manifold polylines
// ---------------------------------------------------------------------------

/// Exact polyline representation of a manifold arc.
///
/// Vertices are ordered by arc position along the manifold, oriented from
/// the seed point D through F(D) and onward. `divider_marks` flag vertices
/// on the divider, `turning_marks` flag fold vertices (the points on the
/// divider's image).
#[derive(Clone, Debug)]
pub struct Polyline<R: Real> {
    pub vertices: Vec<PlanePoint<R>>,
    pub divider_marks: Vec<usize>,
    pub turning_marks: Vec<usize>,
}

impl<R: Real> Polyline<R> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Cumulative arc length at each vertex.
    pub fn cumulative_lengths(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut acc = R::zero();
        out.push(acc);
        for w in self.vertices.windows(2) {
            acc = acc + w[0].distance(&w[1]);
            out.push(acc);
        }
        out
    }

}

/// Grow the unstable manifold for the given number of generations under the
/// default vertex cap. Generation 0 is the straight chord [D, F(D)] of the
/// unstable eigenline; each generation maps the previous polyline after
/// inserting exact divider-crossing vertices.
pub fn grow_unstable_manifold<R: Real>(
    params: &ValidParams<R>,
    generations: u32,
) -> Result<Polyline<R>> {
    grow_unstable_manifold_capped(params, generations, DEFAULT_VERTEX_CAP)
}

pub fn grow_unstable_manifold_capped<R: Real>(
    params: &ValidParams<R>,
    generations: u32,
    vertex_cap: usize,
) -> Result<Polyline<R>> {
    let mut state = GrowthState::seed(params)?;
    for _ in 0..generations {
        state.advance(params, vertex_cap)?;
    }
    Ok(state.into_polyline())
}

struct GrowthState<R: Real> {
    vertices: Vec<PlanePoint<R>>,
    turning: Vec<usize>,
}

impl<R: Real> GrowthState<R> {
    fn seed(params: &ValidParams<R>) -> Result<Self> {
        let d = unstable_divider_point(params)?;
        let f1 = eval(params, d);
        Ok(Self {
            vertices: vec![d, f1],
            turning: Vec::new(),
        })
    }

    /// One generation: insert crossings, map, reverse. Reversal keeps the
    /// vertex order ascending in arc position (the map reverses orientation
    /// along the manifold).
    fn advance(&mut self, params: &ValidParams<R>, vertex_cap: usize) -> Result<()> {
        let eps = R::divider_eps();
        let n = self.vertices.len();
        let mut expanded: Vec<PlanePoint<R>> = Vec::with_capacity(n + n / 2);
        let mut crossings: Vec<usize> = Vec::new();
        for i in 0..n {
            let v = self.vertices[i];
            if v.x.abs() <= eps {
                crossings.push(expanded.len());
            }
            expanded.push(v);
            if i + 1 < n {
                if let Some(c) = divider_crossing(&v, &self.vertices[i + 1]) {
                    crossings.push(expanded.len());
                    expanded.push(c);
                }
            }
        }
        if expanded.len() > vertex_cap {
            return Err(Error::VertexCap {
                cap: vertex_cap,
                needed: expanded.len(),
            });
        }
        let total = expanded.len();
        let mut mapped: Vec<PlanePoint<R>> = Vec::with_capacity(total);
        for v in expanded.iter().rev() {
            mapped.push(eval(params, *v));
        }
        self.vertices = mapped;
        self.turning = crossings.iter().map(|&i| total - 1 - i).collect();
        self.turning.sort_unstable();
        Ok(())
    }

    fn into_polyline(self) -> Polyline<R> {
        let eps = R::divider_eps();
        let divider_marks = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.x.abs() <= eps)
            .map(|(i, _)| i)
            .collect();
        Polyline {
            vertices: self.vertices,
            divider_marks,
            turning_marks: self.turning,
        }
    }
}

/// Arc position of a point on the polyline (cumulative length up to the
/// nearest point of the polyline).
fn arc_position<R: Real>(vertices: &[PlanePoint<R>], cum: &[R], target: &PlanePoint<R>) -> R {
    let mut best = R::from_f64(f64::INFINITY);
    let mut best_pos = R::zero();
    for i in 0..vertices.len().saturating_sub(1) {
        let a = &vertices[i];
        let b = &vertices[i + 1];
        let abx = b.x - a.x;
        let aby = b.y - a.y;
        let len2 = abx * abx + aby * aby;
        if len2 == R::zero() {
            continue;
        }
        let t = (((target.x - a.x) * abx + (target.y - a.y) * aby) / len2)
            .max(R::zero())
            .min(R::one());
        let proj = PlanePoint::new(a.x + t * abx, a.y + t * aby);
        let dist = target.distance(&proj);
        if dist < best {
            best = dist;
            best_pos = cum[i] + t * len2.sqrt();
        }
    }
    best_pos
}

/// The first `count` turning points ordered by arc position along the
/// manifold, starting from the fixed point X in the direction of F(D).
/// The first entry is always F(D).
pub fn turning_points<R: Real>(
    params: &ValidParams<R>,
    count: usize,
) -> Result<Vec<PlanePoint<R>>> {
    let (polyline, indices) = turning_points_on_polyline(params, count)?;
    Ok(indices.iter().map(|&i| polyline.vertices[i]).collect())
}

/// Enumerate turning points and keep the polyline they live on; used by the
/// kneading computation, which needs manifold neighborhoods of the points.
/// Selected vertices are guaranteed to be interior (the enumeration grows
/// an extra generation when a requested point is still an endpoint).
pub(crate) fn turning_points_on_polyline<R: Real>(
    params: &ValidParams<R>,
    count: usize,
) -> Result<(Polyline<R>, Vec<usize>)> {
    if count == 0 {
        return Ok((grow_unstable_manifold(params, 0)?, Vec::new()));
    }
    let fps = fixed_points(params)?;
    let x = fps.x.point;
    let mut state = GrowthState::seed(params)?;
    let mut found = 0;
    for _ in 0..MAX_GENERATIONS {
        state.advance(params, DEFAULT_VERTEX_CAP)?;
        let mut positive: Vec<(R, usize)> = Vec::new();
        {
            let verts = &state.vertices;
            let cum = {
                let mut out = Vec::with_capacity(verts.len());
                let mut acc = R::zero();
                out.push(acc);
                for w in verts.windows(2) {
                    acc = acc + w[0].distance(&w[1]);
                    out.push(acc);
                }
                out
            };
            let s_x = arc_position(verts, &cum, &x);
            for &i in &state.turning {
                if cum[i] > s_x {
                    positive.push((cum[i] - s_x, i));
                }
            }
            positive.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite arc positions"));
        }
        found = positive.len().min(count);
        if positive.len() >= count {
            let indices: Vec<usize> = positive[..count].iter().map(|&(_, i)| i).collect();
            // Kneading needs both manifold neighbors of each point.
            if indices.iter().all(|&i| i > 0 && i + 1 < state.vertices.len()) {
                return Ok((state.into_polyline(), indices));
            }
        }
    }
    Err(Error::TurningPointBudget {
        found,
        requested: count,
    })
}

// ---------------------------------------------------------------------------
// Attractor orbits
// ---------------------------------------------------------------------------

/// Iterate the map, discard `transient` points, return the next `n`.
/// The default seed is X displaced by 1e-6 along the unstable eigenvector.
pub fn attractor_orbit<R: Real>(
    params: &ValidParams<R>,
    n: usize,
    transient: usize,
    seed: Option<PlanePoint<R>>,
) -> Result<Vec<PlanePoint<R>>> {
    let seed = match seed {
        Some(p) => p,
        None => {
            let fps = fixed_points(params)?;
            let x = fps.x.point;
            let v = fps.x.eigen.vec_unstable;
            let norm = v.norm();
            let delta = R::from_f64(1e-6);
            PlanePoint::new(x.x + delta * v.dx / norm, x.y + delta * v.dy / norm)
        }
    };
    let escape = R::from_f64(ESCAPE_RADIUS);
    let mut out = Vec::with_capacity(n);
    let mut current = seed;
    let total = transient.saturating_add(n);
    for i in 0..total {
        current = eval(params, current);
        if !(current.x.abs() < escape && current.y.abs() < escape) {
            return Err(Error::OrbitDiverged { index: i });
        }
        if i >= transient {
            out.push(current);
        }
    }
    Ok(out)
}

//! Itinerary coding and kneading sequences.
//!
//! A point's itinerary records, per iterate, which half-plane the orbit
//! visits: `+` for the right, `-` for the left. Kneading sequences are the
//! forward itineraries of the turning points. When an iterate lands inside
//! the divider band, the symbol is resolved from the manifold neighborhood
//! of the turning point: both one-sided neighbors along the unstable
//! manifold map into the same half-plane when the tie is genuine, so
//! disagreement between the probes signals numerical failure and yields an
//! explicit `Ambiguous` symbol.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::turning_points_on_polyline;
use crate::map::{eval, inverse, Params, PlanePoint, ValidParams};
use crate::scalar::Real;

const ESCAPE_RADIUS: f64 = 1e3;

/// Arc distance of the tie-resolution probes, in units of the divider band
/// half-width.
const PROBE_BAND_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Plus,
    Minus,
    Ambiguous,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Plus => '+',
            Symbol::Minus => '-',
            Symbol::Ambiguous => '?',
        }
    }

    /// Wildcard-aware comparison: `Ambiguous` matches anything.
    pub fn matches(self, other: Symbol) -> bool {
        self == Symbol::Ambiguous || other == Symbol::Ambiguous || self == other
    }
}

/// Finite symbol word with the position of orbit index 0 and a count of
/// leading symbols certified against roundoff.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSequence {
    pub symbols: Vec<Symbol>,
    pub zero_index: usize,
    pub reliable_length: usize,
}

impl SymbolSequence {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at the given orbit index (index 0 is the coded point itself).
    pub fn symbol_at(&self, orbit_index: isize) -> Option<Symbol> {
        let pos = orbit_index + self.zero_index as isize;
        if pos < 0 {
            return None;
        }
        self.symbols.get(pos as usize).copied()
    }

    pub fn to_ascii(&self) -> String {
        self.symbols.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

fn classify<R: Real>(x: R) -> Symbol {
    let eps = R::divider_eps();
    if x > eps {
        Symbol::Plus
    } else if x < -eps {
        Symbol::Minus
    } else {
        Symbol::Ambiguous
    }
}

/// Largest branch expansion factor; bounds the per-iterate error growth.
pub fn max_stretch<R: Real>(params: &Params<R>) -> R {
    let four = R::from_f64(4.0);
    let two = R::from_f64(2.0);
    let right = {
        let s = params.a + params.c;
        (s + (s * s + four * params.b).sqrt()) / two
    };
    let left = {
        let s = params.a - params.c;
        (s + (s * s + four * params.b).sqrt()) / two
    };
    right.max(left)
}

/// How many leading symbols the current precision profile certifies:
/// `floor(significant_digits / log10(max_stretch))`.
pub fn certified_length<R: Real>(params: &Params<R>) -> usize {
    let stretch = max_stretch(params).to_f64();
    if !(stretch > 1.0) {
        return usize::MAX;
    }
    (R::SIG_DIGITS / stretch.log10()).floor() as usize
}

/// Itinerary of `p` for orbit indices `-n_back .. n_fwd - 1`.
pub fn itinerary<R: Real>(
    params: &ValidParams<R>,
    p: PlanePoint<R>,
    n_fwd: usize,
    n_back: usize,
) -> Result<SymbolSequence> {
    let escape = R::from_f64(ESCAPE_RADIUS);
    let mut backward = Vec::with_capacity(n_back);
    let mut current = p;
    for j in 1..=n_back {
        current = inverse(params, current)?;
        if !(current.x.abs() < escape && current.y.abs() < escape) {
            return Err(Error::OrbitDiverged { index: j });
        }
        backward.push(classify(current.x));
    }
    backward.reverse();

    let mut symbols = backward;
    let mut current = p;
    for k in 0..n_fwd {
        if k > 0 {
            current = eval(params, current);
            if !(current.x.abs() < escape && current.y.abs() < escape) {
                return Err(Error::OrbitDiverged { index: k });
            }
        }
        symbols.push(classify(current.x));
    }

    let total = symbols.len();
    let reliable = certified_length::<R>(params)
        .min(total)
        .min(first_ambiguous(&symbols).unwrap_or(total));
    Ok(SymbolSequence {
        symbols,
        zero_index: n_back,
        reliable_length: reliable,
    })
}

fn first_ambiguous(symbols: &[Symbol]) -> Option<usize> {
    symbols.iter().position(|&s| s == Symbol::Ambiguous)
}

/// Kneading sequence: the forward itinerary of the `turning_index`-th
/// turning point (0 = F(D), 1 = the next one along the manifold, ...).
///
/// Iterates landing inside the divider band are resolved by iterating two
/// manifold neighbors of the turning point, one on each side at arc
/// distance ten divider bands; when the neighbors disagree the symbol is
/// `Ambiguous` and the reliable length is truncated there.
pub fn kneading_sequence<R: Real>(
    params: &ValidParams<R>,
    turning_index: usize,
    length: usize,
) -> Result<SymbolSequence> {
    let (polyline, indices) = turning_points_on_polyline(params, turning_index + 1)?;
    let k = indices[turning_index];
    let center = polyline.vertices[k];
    let offset = R::divider_eps() * R::from_f64(PROBE_BAND_FACTOR);
    let probe_before = step_along(&center, &polyline.vertices[k - 1], offset);
    let probe_after = step_along(&center, &polyline.vertices[k + 1], offset);

    let mut point = center;
    let mut before = probe_before;
    let mut after = probe_after;
    let mut symbols = Vec::with_capacity(length);
    for n in 0..length {
        if n > 0 {
            point = eval(params, point);
            before = eval(params, before);
            after = eval(params, after);
        }
        let direct = classify(point.x);
        let symbol = if direct == Symbol::Ambiguous {
            let sb = classify(before.x);
            let sa = classify(after.x);
            if sb == sa && sb != Symbol::Ambiguous {
                sb
            } else {
                Symbol::Ambiguous
            }
        } else {
            direct
        };
        symbols.push(symbol);
    }

    let total = symbols.len();
    let reliable = certified_length::<R>(params)
        .min(total)
        .min(first_ambiguous(&symbols).unwrap_or(total));
    Ok(SymbolSequence {
        symbols,
        zero_index: 0,
        reliable_length: reliable,
    })
}

fn step_along<R: Real>(from: &PlanePoint<R>, towards: &PlanePoint<R>, distance: R) -> PlanePoint<R> {
    let dx = towards.x - from.x;
    let dy = towards.y - from.y;
    let len = (dx * dx + dy * dy).sqrt();
    PlanePoint::new(from.x + distance * dx / len, from.y + distance * dy / len)
}

/// First orbit index at which the two sequences disagree, ignoring
/// positions where either symbol is `Ambiguous`. `None` means no mismatch
/// on the shared index range.
pub fn compare_sequences(sa: &SymbolSequence, sb: &SymbolSequence) -> Option<isize> {
    let start = -(sa.zero_index.min(sb.zero_index) as isize);
    let end_a = sa.len() as isize - sa.zero_index as isize;
    let end_b = sb.len() as isize - sb.zero_index as isize;
    let end = end_a.min(end_b);
    for idx in start..end {
        let x = sa.symbol_at(idx).expect("index in range");
        let y = sb.symbol_at(idx).expect("index in range");
        if !x.matches(y) {
            return Some(idx);
        }
    }
    None
}

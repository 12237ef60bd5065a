//! Precision profiles.
//!
//! Every routine in this crate is generic over [`Real`]. Two profiles are
//! provided: plain `f64` (the default, ~16 significant decimal digits) and
//! [`DoubleDouble`] (an unevaluated sum of two `f64`, ~31 digits). The
//! extended profile exists for long kneading runs, where roundoff is
//! amplified by the stretching factor at every iterate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar abstraction shared by the map, geometry, symbolic and solver code.
pub trait Real:
    Copy
    + PartialOrd
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Significant decimal digits carried by the mantissa.
    const SIG_DIGITS: f64;

    /// Half-width of the band around the divider (and its image) inside
    /// which a coordinate counts as "on the curve" for classification.
    fn divider_eps() -> Self;

    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn is_finite(self) -> bool;
    fn max(self, other: Self) -> Self;
    fn min(self, other: Self) -> Self;

    /// Parse a decimal literal at full profile precision.
    fn parse_decimal(s: &str) -> Option<Self>;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Real for f64 {
    // log10(2^53)
    const SIG_DIGITS: f64 = 15.954589770191003;

    fn divider_eps() -> Self {
        1e-12
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn max(self, other: Self) -> Self {
        f64::max(self, other)
    }
    fn min(self, other: Self) -> Self {
        f64::min(self, other)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.parse::<f64>().ok().filter(|v| v.is_finite())
    }
}

/// Error-free transformation: `a + b = s + e` exactly (Knuth).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free transformation assuming `|a| >= |b|` (Dekker).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

/// Double-double scalar: value is `hi + lo` with `|lo| <= ulp(hi)/2`.
///
/// Arithmetic follows Joldes, Muller & Popescu (2017); relative error of
/// every operation is a few units of 2^-106.
#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn from_sum(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Self { hi: s, lo: e }
    }

    fn mul_f64(self, rhs: f64) -> Self {
        let (ch, cl1) = two_prod(self.hi, rhs);
        let cl3 = f64::mul_add(self.lo, rhs, cl1);
        Self::from_sum(ch, cl3)
    }

    fn add_f64(self, rhs: f64) -> Self {
        let (sh, sl) = two_sum(self.hi, rhs);
        let v = self.lo + sl;
        Self::from_sum(sh, v)
    }

    fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (sh, sl) = two_sum(self.hi, rhs.hi);
        let (th, tl) = two_sum(self.lo, rhs.lo);
        let c = sl + th;
        let (vh, vl) = quick_two_sum(sh, c);
        let w = tl + vl;
        Self::from_sum(vh, w)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (ch, cl1) = two_prod(self.hi, rhs.hi);
        let tl0 = self.lo * rhs.lo;
        let tl1 = f64::mul_add(self.hi, rhs.lo, tl0);
        let cl2 = f64::mul_add(self.lo, rhs.hi, tl1);
        let cl3 = cl1 + cl2;
        Self::from_sum(ch, cl3)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Joldes et al. Algorithm 18; the fma in the residual is essential.
        let th = rhs.hi.recip();
        let rh = f64::mul_add(-rhs.hi, th, 1.0);
        let rl = -(rhs.lo * th);
        let (eh, el) = quick_two_sum(rh, rl);
        let e = Self { hi: eh, lo: el };
        let d = e.mul_f64(th);
        let m = d.add_f64(th);
        self * m
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hi.is_finite() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return write!(f, "0");
        }
        let neg = self.is_negative();
        let mut v = self.abs();
        let mut exp = v.hi.log10().floor() as i32;
        let ten = Self::from_f64(10.0);
        // Scale into [1, 10).
        v = v / pow10(exp);
        if v.hi >= 10.0 {
            v = v / ten;
            exp += 1;
        } else if v.hi < 1.0 {
            v = v * ten;
            exp -= 1;
        }
        let mut digits = Vec::with_capacity(32);
        for _ in 0..32 {
            let d = (v.hi.floor() as i64).clamp(0, 9);
            digits.push(d as u8);
            v = (v - Self::from_f64(d as f64)) * ten;
        }
        // Round the last extracted digit.
        if v.hi >= 5.0 {
            for d in digits.iter_mut().rev() {
                if *d < 9 {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        if neg {
            write!(f, "-")?;
        }
        write!(f, "{}.", digits[0])?;
        for d in &digits[1..] {
            write!(f, "{}", d)?;
        }
        if exp != 0 {
            write!(f, "e{}", exp)?;
        }
        Ok(())
    }
}

fn pow10(e: i32) -> DoubleDouble {
    let ten = DoubleDouble::from_f64(10.0);
    let mut acc = DoubleDouble::from_f64(1.0);
    for _ in 0..e.unsigned_abs() {
        acc = acc * ten;
    }
    if e < 0 {
        DoubleDouble::from_f64(1.0) / acc
    } else {
        acc
    }
}

impl Real for DoubleDouble {
    // log10(2^106)
    const SIG_DIGITS: f64 = 31.909179540382006;

    fn divider_eps() -> Self {
        Self::from_f64(1e-17)
    }

    fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    fn to_f64(self) -> f64 {
        self.hi
    }

    fn abs(self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Self::default();
        }
        if self.hi < 0.0 {
            return Self::from_f64(f64::NAN);
        }
        // Karp-Markstein: one correction step on the f64 seed.
        let x = self.hi.sqrt().recip();
        let ax = self.hi * x;
        let (ph, pl) = two_prod(ax, ax);
        let residual = self - Self { hi: ph, lo: pl };
        let corr = residual.hi * (x * 0.5);
        let (s, e) = two_sum(ax, corr);
        Self { hi: s, lo: e }
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    fn max(self, other: Self) -> Self {
        if self < other {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut neg = false;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            neg = bytes[i] == b'-';
            i += 1;
        }
        let ten = Self::from_f64(10.0);
        let mut value = Self::default();
        let mut any_digit = false;
        let mut frac_digits: i32 = 0;
        let mut seen_dot = false;
        while i < bytes.len() {
            match bytes[i] {
                b'0'..=b'9' => {
                    value = value * ten + Self::from_f64((bytes[i] - b'0') as f64);
                    if seen_dot {
                        frac_digits += 1;
                    }
                    any_digit = true;
                }
                b'.' if !seen_dot => seen_dot = true,
                b'e' | b'E' => break,
                _ => return None,
            }
            i += 1;
        }
        if !any_digit {
            return None;
        }
        let mut exp: i32 = 0;
        if i < bytes.len() {
            // exponent part
            i += 1;
            let rest = std::str::from_utf8(&bytes[i..]).ok()?;
            exp = rest.parse::<i32>().ok()?;
        }
        let scale = exp - frac_digits;
        let mut out = value * pow10(scale);
        if neg {
            out = -out;
        }
        out.is_finite().then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Dd = DoubleDouble;

    fn dd(v: f64) -> Dd {
        Dd::from_f64(v)
    }

    #[test]
    fn division_keeps_low_word() {
        let q = dd(1.0) / dd(3.0);
        let back = q * dd(3.0) - dd(1.0);
        assert!(back.hi().abs() < 1e-30, "residual {:e}", back.hi());
        assert!(q.lo() != 0.0);
    }

    #[test]
    fn sqrt_two_squared() {
        let s = dd(2.0).sqrt();
        let r = s * s - dd(2.0);
        assert!(r.hi().abs() < 1e-30, "residual {:e}", r.hi());
        // First 32 digits of sqrt(2).
        let reference = Dd::parse_decimal("1.4142135623730950488016887242096981").unwrap();
        let diff = (s - reference).abs();
        assert!(diff.hi() < 1e-30);
    }

    #[test]
    fn parse_matches_scaled_integer() {
        let x = Dd::parse_decimal("1.65531960296885174459210852526").unwrap();
        let whole = Dd::parse_decimal("165531960296885174459210852526").unwrap();
        let scaled = x * pow10(29) - whole;
        assert!(scaled.abs().hi() < 1e-2, "raw digits differ: {:?}", scaled);
        assert!(Dd::parse_decimal("abc").is_none());
        assert!(Dd::parse_decimal("1.5e-3").unwrap().hi() - 0.0015 < 1e-18);
        assert!(Dd::parse_decimal("-2").unwrap().hi() == -2.0);
    }

    #[test]
    fn display_round_trips() {
        let x = Dd::parse_decimal("0.78539816339744830961566084581988").unwrap();
        let s = format!("{}", x);
        let y = Dd::parse_decimal(&s.replace('e', "E")).unwrap_or_else(|| Dd::parse_decimal(&s).unwrap());
        assert!((x - y).abs().hi() < 1e-29, "{} vs {}", x, y);
    }

    #[test]
    fn ordering_uses_both_words() {
        let a = dd(1.0);
        let b = dd(1.0) + dd(1e-25);
        assert!(a < b);
        assert!(b > a);
        assert!(a == dd(1.0));
        let neg = dd(0.0) - dd(1e-30);
        assert!(neg.is_negative());
        assert!(neg.abs() > Dd::zero());
    }

    #[test]
    fn f64_profile_basics() {
        assert_eq!(f64::parse_decimal("1.25"), Some(1.25));
        assert_eq!(f64::parse_decimal("x"), None);
        assert!(f64::divider_eps() == 1e-12);
    }
}

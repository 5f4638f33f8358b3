//! Exact rational scalars, planar vectors and reduced integer directions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i128 = n.parse().map_err(|_| bad())?;
    let d: i128 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(rat(n, d))
}

/// Formats a rational at a fixed number of decimal places, rounding half away
/// from zero. Uses integer arithmetic only.
pub fn fmt_decimal(r: Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let scaled = *r.numer() * scale;
    let d = *r.denom();
    let (q, rem) = scaled.div_rem(&d);
    let q = if 2 * rem.abs() >= d { q + scaled.signum() } else { q };
    let neg = q < 0;
    let q = q.abs();
    let (whole, frac) = q.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0width$}", width = places as usize)
    }
}

pub(crate) fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec2 {
    pub x: Rational,
    pub y: Rational,
}

impl Vec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn ints(x: i128, y: i128) -> Self {
        Self::new(int(x), int(y))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn cross(self, other: Vec2) -> Rational {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> Rational {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(self) -> Rational {
        self.dot(self)
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Counterclockwise rotation by `k` quarter turns.
    pub fn rotate(self, k: u8) -> Vec2 {
        match k % 4 {
            0 => self,
            1 => Vec2::new(-self.y, self.x),
            2 => Vec2::new(-self.x, -self.y),
            _ => Vec2::new(self.y, -self.x),
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Rational> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: Rational) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A direction in a face frame: a primitive integer vector `(dx, dy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Direction {
    pub dx: i64,
    pub dy: i64,
}

impl Direction {
    /// Builds the reduced direction of `(dx, dy)`.
    pub fn new(dx: i64, dy: i64) -> Result<Self> {
        if dx == 0 && dy == 0 {
            return Err(Error::ZeroDirection);
        }
        let g = dx.gcd(&dy);
        Ok(Self {
            dx: dx / g,
            dy: dy / g,
        })
    }

    /// Reduced direction of a nonzero rational vector.
    pub fn from_vec(v: Vec2) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let l = v.x.denom().lcm(v.y.denom());
        let x = (v.x * int(l)).to_integer();
        let y = (v.y * int(l)).to_integer();
        let g = x.gcd(&y);
        Ok(Self {
            dx: (x / g) as i64,
            dy: (y / g) as i64,
        })
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2::ints(self.dx as i128, self.dy as i128)
    }

    pub fn reversed(self) -> Self {
        Self {
            dx: -self.dx,
            dy: -self.dy,
        }
    }

    pub fn rotate(self, k: u8) -> Self {
        let v = self.to_vec().rotate(k);
        Self {
            dx: v.x.to_integer() as i64,
            dy: v.y.to_integer() as i64,
        }
    }

    /// Slope measured against the nearer frame axis: `min(|dx|,|dy|) / max(|dx|,|dy|)`.
    pub fn slope(self) -> Slope {
        let (a, b) = (self.dx.abs(), self.dy.abs());
        Slope {
            rise: a.min(b),
            run: a.max(b),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// A slope `rise/run` in `[0, 1]`, always printed with its denominator (`"0/1"`, `"1/1"`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    pub rise: i64,
    pub run: i64,
}

impl Slope {
    pub const fn new(rise: i64, run: i64) -> Self {
        Self { rise, run }
    }

    pub fn value(self) -> Rational {
        rat(self.rise as i128, self.run as i128)
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value().cmp(&other.value())
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.rise, self.run)
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("5/4").unwrap(), rat(5, 4));
        assert_eq!(parse_rational(" 2 ").unwrap(), int(2));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(fmt_decimal(rat(1, 3), 6), "0.333333");
        assert_eq!(fmt_decimal(rat(2, 3), 6), "0.666667");
        assert_eq!(fmt_decimal(rat(-1, 8), 2), "-0.13");
        assert_eq!(fmt_decimal(int(4), 3), "4.000");
        assert_eq!(fmt_decimal(rat(-1, 3), 0), "0");
    }

    #[test]
    fn direction_reduces() {
        assert_eq!(Direction::new(6, -4).unwrap(), Direction { dx: 3, dy: -2 });
        assert_eq!(
            Direction::from_vec(Vec2::new(rat(3, 4), rat(1, 2))).unwrap(),
            Direction { dx: 3, dy: 2 }
        );
        assert!(Direction::new(0, 0).is_err());
        assert_eq!(Direction::new(-1, 3).unwrap().slope(), Slope::new(1, 3));
    }
}

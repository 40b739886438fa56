use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

/// Reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Rational {
    num: i64,
    den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalError {
    ZeroDenominator,
    Malformed,
}

impl fmt::Display for RationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalError::ZeroDenominator => f.write_str("ZeroDenominator"),
            RationalError::Malformed => f.write_str("Malformed: expected A/B"),
        }
    }
}

impl core::error::Error for RationalError {}

const fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    /// Like [`Rational::new`] for compile-time known, valid fractions.
    pub const fn of(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self::reduce(num, den)
    }

    pub const fn integer(v: i64) -> Self {
        Rational { num: v, den: 1 }
    }

    const fn reduce(num: i64, den: i64) -> Self {
        let g = gcd(num, den);
        let g = if g == 0 { 1 } else { g };
        let s = if den < 0 { -1 } else { 1 };
        Rational { num: s * num / g, den: s * den / g }
    }

    pub const fn num(&self) -> i64 {
        self.num
    }

    pub const fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num == 0 {
            None
        } else {
            Some(Self::reduce(self.den, self.num))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::reduce(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::reduce(self.num * o.den - o.num * self.den, self.den * o.den)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `A/B` or a bare integer `A`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let a: i64 = a.parse().map_err(|_| RationalError::Malformed)?;
        let b: i64 = b.parse().map_err(|_| RationalError::Malformed)?;
        Rational::new(a, b)
    }
}

impl TryFrom<(i64, i64)> for Rational {
    type Error = RationalError;
    fn try_from((n, d): (i64, i64)) -> Result<Self, Self::Error> {
        Rational::new(n, d)
    }
}

impl From<Rational> for (i64, i64) {
    fn from(r: Rational) -> Self {
        (r.num, r.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rational::new(6, -8).unwrap();
        assert_eq!((r.num(), r.den()), (-3, 4));
        assert_eq!(Rational::new(0, 5).unwrap(), Rational::ZERO);
        assert_eq!(Rational::new(1, 0), Err(RationalError::ZeroDenominator));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Rational::of(4, 5) < Rational::of(5, 6));
        assert!(Rational::of(9, 8) > Rational::ONE);
        assert_eq!(Rational::of(2, 4), Rational::of(1, 2));
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "10/8".parse().unwrap();
        assert_eq!(r.to_string(), "5/4");
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::integer(3));
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Rational::of(1, 2);
        let b = Rational::of(1, 3);
        assert_eq!(a.add(&b), Rational::of(5, 6));
        assert_eq!(a.sub(&b), Rational::of(1, 6));
        assert_eq!(b.recip(), Some(Rational::integer(3)));
    }
}

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An exact rational multiple of π, reduced into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    num: i64,
    den: i64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };
    pub const PI: Angle = Angle { num: 1, den: 1 };

    /// `num/den · π`.
    pub fn pi_fraction(num: i64, den: i64) -> Angle {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num, den).max(1);
        num /= g;
        den /= g;
        Angle {
            num: num.rem_euclid(2 * den),
            den,
        }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn radians(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    pub fn add(self, other: Angle) -> Angle {
        Angle::pi_fraction(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn neg(self) -> Angle {
        Angle::pi_fraction(-self.num, self.den)
    }

    pub fn times(self, k: i64) -> Angle {
        Angle::pi_fraction(self.num * k, self.den)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True for multiples of `π/2`.
    pub fn is_quarter_turn(self) -> bool {
        self.den <= 2
    }

    pub fn phase(self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(1.0, self.radians())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "pi"),
            (n, 1) => write!(f, "{n}pi"),
            (1, d) => write!(f, "pi/{d}"),
            (n, d) => write!(f, "{n}pi/{d}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `0`, `pi`, `-pi/4`, `3pi/4`, `3*pi/8`, `pi/2`.
    fn from_str(s: &str) -> Result<Angle> {
        let bad = || Error::Parse(format!("angle `{s}` is not a rational multiple of pi"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(Angle::ZERO);
        }
        let (neg, t) = match t.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, t.trim_start_matches('+').to_string()),
        };
        let (head, den) = match t.split_once('/') {
            Some((h, d)) => (h.to_string(), d.parse::<i64>().map_err(|_| bad())?),
            None => (t.clone(), 1),
        };
        let coeff = head.strip_suffix("pi").ok_or_else(bad)?;
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let num = if coeff.is_empty() {
            1
        } else {
            coeff.parse::<i64>().map_err(|_| bad())?
        };
        if den <= 0 {
            return Err(bad());
        }
        Ok(Angle::pi_fraction(if neg { -num } else { num }, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for (s, want) in [
            ("pi/4", "pi/4"),
            ("-pi/4", "7pi/4"),
            ("3*pi/8", "3pi/8"),
            ("2pi", "0"),
            ("pi", "pi"),
            ("0", "0"),
        ] {
            assert_eq!(s.parse::<Angle>().unwrap().to_string(), want);
        }
        assert!("0.785".parse::<Angle>().is_err());
        assert!("pi/0".parse::<Angle>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let t = Angle::pi_fraction(1, 4);
        assert_eq!(t.add(t), Angle::pi_fraction(1, 2));
        assert_eq!(t.add(t.neg()), Angle::ZERO);
        assert_eq!(t.times(8), Angle::ZERO);
    }
}

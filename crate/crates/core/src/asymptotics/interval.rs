use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::{rat_to_string, Rat};

/// Bits kept after the binary point when rounding interval endpoints.
pub const PRECISION_BITS: usize = 256;

fn scale() -> BigInt {
    BigInt::one() << PRECISION_BITS
}

fn round_down(x: &Rat) -> Rat {
    Rat::new((x * Rat::from_integer(scale())).floor().to_integer(), scale())
}

fn round_up(x: &Rat) -> Rat {
    Rat::new((x * Rat::from_integer(scale())).ceil().to_integer(), scale())
}

/// Closed rational interval with endpoints rounded outward to dyadic rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid("interval lower end exceeds upper end"));
        }
        Ok(Interval { lo: round_down(&lo), hi: round_up(&hi) })
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: round_down(&x), hi: round_up(&x) }
    }

    pub fn from_i64(x: i64) -> Self {
        Self::point(Rat::from_integer(x.into()))
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Half the width, as an absolute error bound around [`Interval::to_f64`].
    pub fn radius(&self) -> f64 {
        (self.width() / Rat::from_integer(2.into())).to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        Rat::from_float(x).is_some_and(|r| self.contains(&r))
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::invalid("division by an interval containing zero"));
        }
        Self::new(self.hi.recip(), self.lo.recip())
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::invalid("square root of an interval with negative part"));
        }
        let s2 = scale() * scale();
        let lo = (&self.lo * Rat::from_integer(s2.clone())).floor().to_integer().sqrt();
        let hi = (&self.hi * Rat::from_integer(s2)).ceil().to_integer().sqrt() + 1;
        Ok(Interval { lo: Rat::new(lo, scale()), hi: Rat::new(hi, scale()) })
    }

    pub fn powi(&self, k: u32) -> Self {
        (0..k).fold(Self::from_i64(1), |acc, _| &acc * self)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: round_down(&(&self.lo + &o.lo)), hi: round_up(&(&self.hi + &o.hi)) }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: round_down(&(&self.lo - &o.hi)), hi: round_up(&(&self.hi - &o.lo)) }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap();
        let hi = p.iter().max().unwrap();
        Interval { lo: round_down(lo), hi: round_up(hi) }
    }
}

impl Div for &Interval {
    type Output = Result<Interval>;
    fn div(self, o: &Interval) -> Result<Interval> {
        if o.contains_zero() {
            return Err(Error::invalid("division by an interval containing zero"));
        }
        // Exact quotients rounded once, so tiny reciprocals lose nothing on the grid.
        let p = [&self.lo / &o.lo, &self.lo / &o.hi, &self.hi / &o.lo, &self.hi / &o.hi];
        let lo = p.iter().min().unwrap();
        let hi = p.iter().max().unwrap();
        Ok(Interval { lo: round_down(lo), hi: round_up(hi) })
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15} ± {:.1e}", self.to_f64(), self.radius())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact polynomial value at a rational point, coefficients in increasing degree.
pub fn eval_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Enclosure of the polynomial's values over an interval (Horner form).
pub fn eval_poly_interval(coeffs: &[Rat], x: &Interval) -> Interval {
    coeffs.iter().rev().fold(Interval::from_i64(0), |acc, c| &(&acc * x) + &Interval::point(c.clone()))
}

/// Bisection for a root of a polynomial that changes sign on `[lo, hi]`.
/// The returned interval contains a root and has width at most `tol`.
pub fn find_real_root(coeffs: &[Rat], lo: &Rat, hi: &Rat, tol: f64) -> Result<Interval> {
    let interval_err = || Error::InvalidInterval { lo: rat_to_string(lo), hi: rat_to_string(hi) };
    if lo > hi {
        return Err(interval_err());
    }
    let tol = Rat::from_float(tol)
        .filter(|t| t.is_positive())
        .ok_or_else(|| Error::invalid("tolerance must be positive"))?
        .min(Rat::new(BigInt::one(), scale()));
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let fa = eval_poly(coeffs, &a);
    let fb = eval_poly(coeffs, &b);
    if fa.is_zero() {
        return Ok(Interval::point(a));
    }
    if fb.is_zero() {
        return Ok(Interval::point(b));
    }
    if fa.signum() == fb.signum() {
        return Err(interval_err());
    }
    let sa = fa.signum();
    let two = Rat::from_integer(2.into());
    while &b - &a > tol {
        let m = round_down(&((&a + &b) / &two));
        if m <= a || m >= b {
            break;
        }
        let fm = eval_poly(coeffs, &m);
        if fm.is_zero() {
            return Ok(Interval::point(m));
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Interval::new(a, b)
}

/// Coefficients `[c0, c1, ...]` from small integers.
pub fn rat_poly(c: &[i64]) -> Vec<Rat> {
    c.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::point(r(1, 3));
        let b = Interval::point(r(2, 7));
        let s = &(&a * &b) + &(&a / &b).unwrap();
        assert!(s.contains(&(r(2, 21) + r(7, 6))));
        let s = Interval::from_i64(2).sqrt().unwrap();
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((&(&s * &s) - &Interval::from_i64(2)).contains_zero());
        assert!(Interval::from_i64(0).recip().is_err());
    }

    #[test]
    fn known_roots() {
        let rho = find_real_root(&rat_poly(&[1, -2, -2, 2]), &r(3, 10), &r(1, 2), 1e-12).unwrap();
        assert!((rho.to_f64() - 0.403_031_716_762_684_8).abs() < 1e-12);
        let tc = find_real_root(&rat_poly(&[1, -3, -1, -1]), &r(1, 5), &r(2, 5), 1e-12).unwrap();
        assert!((tc.to_f64() - 0.2956).abs() < 1e-4);
        let t0 = find_real_root(&rat_poly(&[1, -2, -6, 2, 4]), &r(1, 4), &r(3, 10), 1e-12).unwrap();
        assert!((t0.to_f64() - 0.288).abs() < 1e-3);
        assert!(eval_poly_interval(&rat_poly(&[1, -2, -6, 2, 4]), &t0).contains_zero());
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(
            find_real_root(&rat_poly(&[1, 0, 1]), &r(0, 1), &r(1, 1), 1e-6),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn division_keeps_relative_precision() {
        let big = Interval::from_i64(3).powi(200);
        let q = (&(&big * &Interval::from_i64(7)) / &big).unwrap();
        assert!(q.contains(&r(7, 1)) && q.width() < r(1, 1 << 40));
    }
}

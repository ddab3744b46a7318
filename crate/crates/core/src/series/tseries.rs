use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{Coeff, Int, Rat};
use crate::error::{Error, Result};

/// Power series in `t` truncated modulo `t^(order+1)`.
///
/// Coefficients `t^0..=t^order` are stored densely. Binary operations on
/// series of different orders truncate to the smaller order.
#[derive(Clone, PartialEq)]
pub struct TSeries<C> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> TSeries<C> {
    /// Builds a series from its leading coefficients, padding with zeros or
    /// dropping terms above `order`.
    pub fn new(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        TSeries { order, coeffs }
    }

    pub fn from_i64s(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        Self::new(order, vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(order: usize, c: C, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(order, C::one(), 1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^n`; zero above the order.
    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        if n <= self.order {
            self.coeffs[n] = c;
        }
    }

    pub fn add_to_coeff(&mut self, n: usize, c: &C) {
        if n <= self.order {
            self.coeffs[n].add_assign_ref(c);
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &C) -> Self {
        TSeries { order: self.order, coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    /// Multiplication by `t^k` at unchanged order.
    pub fn mul_t_pow(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for n in 0..=self.order.saturating_sub(k) {
            if n + k <= self.order {
                out.coeffs[n + k] = self.coeffs[n].clone();
            }
        }
        out
    }

    /// Exact division by `t^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::invalid("shift exceeds truncation order"));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::invalid(format!("series not divisible by t^{k}")));
        }
        Ok(TSeries { order: self.order - k, coeffs: self.coeffs[k..].to_vec() })
    }

    pub fn add_series(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        TSeries { order, coeffs: (0..=order).map(|n| self.coeffs[n].add_ref(&o.coeffs[n])).collect() }
    }

    pub fn sub_series(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        TSeries { order, coeffs: (0..=order).map(|n| self.coeffs[n].sub_ref(&o.coeffs[n])).collect() }
    }

    pub fn neg_series(&self) -> Self {
        TSeries { order: self.order, coeffs: self.coeffs.iter().map(C::neg_ref).collect() }
    }

    pub fn mul_series(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = Self::zero(order);
        let (Some(va), Some(vb)) = (self.valuation(), o.valuation()) else {
            return out;
        };
        for i in va..=order {
            let a = &self.coeffs[i];
            if a.is_zero() || i + vb > order {
                continue;
            }
            for j in vb..=order - i {
                out.coeffs[i + j].add_mul(a, &o.coeffs[j]);
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit of the ring.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::invalid("inverse of a series with zero constant term"));
        }
        let inv0 =
            a0.try_inverse().ok_or_else(|| Error::invalid("constant term is not a unit of the coefficient ring"))?;
        let mut out = Self::zero(self.order);
        out.coeffs[0] = inv0.clone();
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc.add_mul(&self.coeffs[k], &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc.mul_ref(&inv0).neg_ref();
        }
        Ok(out)
    }

    pub fn div_series(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_series(&o.inv()?))
    }

    /// Square root with constant term 1; requires the constant term to be 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::invalid("square root needs constant term 1"));
        }
        let mut out = Self::zero(self.order);
        out.coeffs[0] = C::one();
        for n in 1..=self.order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc.sub_assign_ref(&out.coeffs[k].mul_ref(&out.coeffs[n - k]));
            }
            out.coeffs[n] =
                acc.try_half().ok_or_else(|| Error::NonIntegral("square root leaves the coefficient ring".into()))?;
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.order);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        out
    }

    /// Substitutes `inner` for `t` in `self`; `inner` must have zero constant term.
    pub fn compose_t(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::invalid("inner series must have zero constant term"));
        }
        let order = self.order.min(inner.order);
        let mut out = Self::zero(order);
        for n in (0..=order).rev() {
            out = out.mul_series(inner);
            out.coeffs[0].add_assign_ref(&self.coeffs[n]);
        }
        Ok(out)
    }

    pub fn to_rat(&self) -> TSeries<Rat> {
        TSeries { order: self.order, coeffs: self.coeffs.iter().map(C::to_rat).collect() }
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs.iter().map(C::to_f64).collect()
    }
}

impl TSeries<Rat> {
    /// Converts to integer coefficients, failing on any non-integral one.
    pub fn to_int(&self) -> Result<TSeries<Int>> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| Int::try_from_rat(c).ok_or_else(|| Error::NonIntegral(format!("t^{n} coefficient {c}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TSeries { order: self.order, coeffs })
    }
}

impl TSeries<Int> {
    pub fn to_int(&self) -> Result<TSeries<Int>> {
        Ok(self.clone())
    }
}

/// `(a; q)_n = (1 - a)(1 - a q) ... (1 - a q^(n-1))`.
pub fn pochhammer<C: Coeff>(a: &TSeries<C>, q: &TSeries<C>, n: usize) -> TSeries<C> {
    let order = a.order().min(q.order());
    let one = TSeries::one(order);
    let mut out = one.clone();
    let mut aq = a.truncate(order);
    for _ in 0..n {
        out = out.mul_series(&one.sub_series(&aq));
        aq = aq.mul_series(q);
    }
    out
}

impl<C: Coeff> fmt::Debug for TSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})t^{n}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<C: Coeff> $tr<&TSeries<C>> for &TSeries<C> {
            type Output = TSeries<C>;
            fn $m(self, o: &TSeries<C>) -> TSeries<C> {
                self.$imp(o)
            }
        }
        impl<C: Coeff> $tr<TSeries<C>> for TSeries<C> {
            type Output = TSeries<C>;
            fn $m(self, o: TSeries<C>) -> TSeries<C> {
                self.$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_series);
forward_binop!(Sub, sub, sub_series);
forward_binop!(Mul, mul, mul_series);

impl<C: Coeff> Neg for &TSeries<C> {
    type Output = TSeries<C>;
    fn neg(self) -> TSeries<C> {
        self.neg_series()
    }
}

impl<C: Coeff> Neg for TSeries<C> {
    type Output = TSeries<C>;
    fn neg(self) -> TSeries<C> {
        self.neg_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(order: usize, c: &[i64]) -> TSeries<Int> {
        TSeries::from_i64s(order, c)
    }
    fn rat(order: usize, c: &[i64]) -> TSeries<Rat> {
        TSeries::from_i64s(order, c)
    }

    #[test]
    fn geometric_and_pell() {
        assert_eq!(int(5, &[1, -1]).inv().unwrap(), int(5, &[1, 1, 1, 1, 1, 1]));
        let pell = int(4, &[1, -2, -1]).inv().unwrap();
        assert_eq!(pell, int(4, &[1, 2, 5, 12, 29]));
        assert_eq!(&int(4, &[1, 1]) * &pell, int(4, &[1, 3, 7, 17, 41]));
    }

    #[test]
    fn inverse_errors() {
        assert!(int(3, &[0, 1]).inv().is_err());
        assert!(int(3, &[2, 1]).inv().is_err());
        assert!(rat(3, &[2, 1]).inv().is_ok());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rat(6, &[1]).sqrt().unwrap(), rat(6, &[1]));
        let a = &rat(8, &[1, 0, 0, 0, -1]) * &rat(8, &[1, -2, -1]);
        let r = a.sqrt().unwrap();
        assert_eq!(&r.coeffs()[..7], rat(6, &[1, -1, -1, -1, -2, -2, -4]).coeffs());
        assert_eq!(&r * &r, a);
        let b = &rat(8, &[1, 0, 0, 0, -1]) * &rat(8, &[1, -2, -1]).inv().unwrap();
        let s = b.sqrt().unwrap();
        assert_eq!(&s.coeffs()[..6], rat(5, &[1, 1, 2, 4, 8, 18]).coeffs());
        assert!(rat(3, &[2, 1]).sqrt().is_err());
        assert!(int(3, &[1, 1]).sqrt().is_err());
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let s = &int(3, &[1, 1, 1, 1]) + &int(5, &[1]);
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn shifts() {
        let s = int(4, &[0, 0, 3, 4]).shift_down(2).unwrap();
        assert_eq!(s, int(2, &[3, 4]));
        assert!(int(4, &[1]).shift_down(1).is_err());
        assert_eq!(int(3, &[1, 2]).mul_t_pow(2), int(3, &[0, 0, 1, 2]));
    }

    #[test]
    fn pochhammer_small() {
        let t = TSeries::<Int>::t(6);
        assert_eq!(pochhammer(&t, &t, 0), int(6, &[1]));
        assert_eq!(pochhammer(&t, &t, 2), int(6, &[1, -1, -1, 1]));
    }

    #[test]
    fn compose_in_t() {
        let geo = int(5, &[1, 1, 1, 1, 1, 1]);
        let t2 = int(5, &[0, 0, 1]);
        assert_eq!(geo.compose_t(&t2).unwrap(), int(5, &[1, 0, 1, 0, 1, 0]));
        assert!(geo.compose_t(&int(5, &[1])).is_err());
    }
}

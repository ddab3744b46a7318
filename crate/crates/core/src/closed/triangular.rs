use num_bigint::BigUint;
use num_traits::One;

use crate::closed::three_sided::Terms;
use crate::error::{Error, Result};
use crate::series::{pochhammer, CPoly, Image, Int, Rat, TSeries, Var};

fn ii(order: usize, c: &[i64]) -> TSeries<Int> {
    TSeries::from_i64s(order, c)
}

fn binom2(k: usize) -> usize {
    k * (k + 1) / 2
}

/// `Y = (1 - 2t - t^2 - sqrt((1-t)(1-3t-t^2-t^3))) / (2t^2)`.
pub fn triangular_y(order: usize) -> Result<TSeries<Int>> {
    let m = order + 2;
    let r = |c: &[i64]| TSeries::<Rat>::from_i64s(m, c);
    let disc = &r(&[1, -1]) * &r(&[1, -3, -1, -1]);
    let num = &r(&[1, -2, -1]) - &disc.sqrt()?;
    num.shift_down(2)?.scale(&Rat::new(1.into(), 2.into())).to_int()
}

/// `Y(1 - t) - t(1 + Y)(1 + tY)`.
pub fn triangular_y_residual(y: &TSeries<Int>) -> TSeries<Int> {
    let n = y.order();
    let one = TSeries::one(n);
    let rhs = &(&TSeries::t(n) * &(&one + y)) * &(&one + &(&TSeries::t(n) * y));
    &(y * &ii(n, &[1, -1])) - &rhs
}

#[derive(Clone, Debug)]
pub struct TriangularClosed {
    pub y: TSeries<Int>,
    /// `R(t;1,t)`.
    pub r_1t: TSeries<Int>,
    pub p1: TSeries<Int>,
    pub summands: usize,
}

/// `R(t;1,t) = (1+Y)(1+tY) sum_k t^C(k+1,2) (Y(1-2t^2))^k / (Y(1-2t^2);t)_{k+1} * (Yt^2/(1-2t^2);t)_k`
/// and `P(t;1) = 1 + 6t(1+t)/(1-3t-2t^2) (1 + t(1+2t) R(t;1,t))`.
pub fn triangular_closed(order: usize, terms: Terms) -> Result<TriangularClosed> {
    let n = order;
    let y = triangular_y(n)?;
    let one = TSeries::<Int>::one(n);
    let t = TSeries::<Int>::t(n);
    let a = &y * &ii(n, &[1, 0, -2]);
    let b = &(&(&y * &t) * &t) * &ii(n, &[1, 0, -2]).inv()?;
    let mut sum = TSeries::zero(n);
    let mut k = 0usize;
    loop {
        // The summand has valuation at least C(k+1,2) + k.
        if binom2(k) + k > n {
            break;
        }
        if let Terms::Fixed(limit) = terms {
            if k == limit {
                return Err(Error::TruncationInsufficient(format!(
                    "{limit} summands leave a nonzero summand of valuation {} at order {n}",
                    binom2(k) + k
                )));
            }
        }
        let den = pochhammer(&a, &t, k + 1).inv()?;
        let s = (&(&a.pow(k) * &den) * &pochhammer(&b, &t, k)).mul_t_pow(binom2(k));
        sum = &sum + &s;
        k += 1;
    }
    let r_1t = &(&(&one + &y) * &(&one + &(&t * &y))) * &sum;
    let inner = &one + &(&ii(n, &[0, 1, 2]) * &r_1t);
    let p1 = &one + &(&(&ii(n, &[0, 6, 6]) * &ii(n, &[1, -3, -2]).inv()?) * &inner);
    Ok(TriangularClosed { y, r_1t, p1, summands: k })
}

/// `K(u,v) = (u - tv)(v - tu) - tuv(1 - t^2)(u + v)` evaluated at
/// `u = U(x)`, `v = U(tx)` with `U(x) = x(1-t)/((1+tx)(1+t^2 x))`; `x` is carried by `u`.
pub fn triangular_kernel_residual(order: usize) -> Result<CPoly<Int>> {
    let n = order;
    let x = CPoly::<Int>::var(n, Var::U);
    let one = CPoly::one(n);
    let ux =
        &x.mul_series(&ii(n, &[1, -1])) * &(&(&one + &x.shift(1, &[0; 4])) * &(&one + &x.shift(2, &[0; 4]))).inv()?;
    let utx = ux.substitute(Var::U, &Image::t_var(1, Var::U))?;
    let t = |p: &CPoly<Int>| p.shift(1, &[0; 4]);
    let k = &(&ux - &t(&utx)) * &(&utx - &t(&ux));
    let cubic = &t(&(&ux * &utx)).mul_series(&ii(n, &[1, 0, -1])) * &(&ux + &utx);
    Ok(&k - &cubic)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxFormula {
    pub k: usize,
    /// Walks whose box has size `k`.
    pub total: BigUint,
    /// Walks of box size `k` ending on the right edge at distance `i` from its top corner.
    pub right_edge: Vec<BigUint>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, i| a * i)
}

/// `p_k = 2^(k-1)(k+1)(k+2)!`; `r_{0,k} = r_{k,0} = 2^k(k+2)!/3` and
/// `r_{i,j} = 2^k(k+2)!/6` otherwise.
pub fn triangular_box_formula(k: usize) -> BoxFormula {
    if k == 0 {
        return BoxFormula { k, total: BigUint::one(), right_edge: vec![BigUint::one()] };
    }
    let base = (BigUint::one() << k) * factorial(k + 2);
    let total = (&base >> 1usize) * (k + 1);
    let right_edge = (0..=k).map(|i| if i == 0 || i == k { &base / 3u32 } else { &base / 6u32 }).collect();
    BoxFormula { k, total, right_edge }
}

/// Sum side `sum_n t^C(n+1,2) (a;t)_n / (t;t)_n` of Euler's identity.
pub fn euler_sum(order: usize, a: &TSeries<Int>) -> Result<TSeries<Int>> {
    let t = TSeries::t(order);
    let mut out = TSeries::zero(order);
    let mut n = 0;
    while binom2(n) <= order {
        let term = &pochhammer(a, &t, n) * &pochhammer(&t, &t, n).inv()?;
        out = &out + &term.mul_t_pow(binom2(n));
        n += 1;
    }
    Ok(out)
}

/// Product side `prod_{m>=1} (1 + t^m)(1 - a t^(2m-1))`.
pub fn euler_product(order: usize, a: &TSeries<Int>) -> TSeries<Int> {
    let one = TSeries::<Int>::one(order);
    let mut out = one.clone();
    for m in 1..=order {
        let f = &(&one + &TSeries::monomial(order, Int::from(1), m)) * &(&one - &a.mul_t_pow(2 * m - 1));
        out = &out * &f;
    }
    out
}

/// Both sides of Euler's identity agree modulo `t^(N+1)`; `a` needs valuation at least 1.
pub fn euler_identity_check(order: usize, a: &TSeries<Int>) -> Result<bool> {
    if !a.is_zero() && a.valuation() == Some(0) {
        return Err(Error::invalid("a must have positive valuation"));
    }
    let a = a.truncate(order);
    Ok(euler_sum(order, &a)? == euler_product(order, &a))
}

/// The special point `u = (1 - 2t^2) / ((1 - t^2)(1 + 2t))`.
pub fn special_u(order: usize) -> Result<TSeries<Int>> {
    Ok(&ii(order, &[1, 0, -2]) * &(&ii(order, &[1, 0, -1]) * &ii(order, &[1, 2])).inv()?)
}

/// `a = t^2 / (1 - 2t^2)^2`, the Euler parameter behind the special value.
pub fn special_a(order: usize) -> Result<TSeries<Int>> {
    let c = ii(order, &[1, 0, -2]);
    Ok(&ii(order, &[0, 0, 1]) * &(&c * &c).inv()?)
}

/// `R(t;u,tu)` at the special point, product form
/// `(1-t)/(t(1-2t)) (-1 + prod_{m>=1} (1+t^m)(1 - t^(2m+1)/(1-2t^2)^2))`.
pub fn special_value_product(order: usize) -> Result<TSeries<Int>> {
    let m = order + 1;
    let p = euler_product(m, &special_a(m)?);
    let p = (&p - &TSeries::one(m)).shift_down(1)?;
    Ok(&p * &(&ii(order, &[1, -1]) * &ii(order, &[1, -2]).inv()?))
}

/// Sum form `(1+t-2t^2)(1-t^2)/(1-2t^2)^2 sum_k t^(k+C(k+1,2)) / (t;t)_{k+1} (t^3/(1-2t^2)^2;t)_k`.
pub fn special_value_sum(order: usize) -> Result<TSeries<Int>> {
    let n = order;
    let t = TSeries::t(n);
    let a = &special_a(n)? * &t;
    let mut sum = TSeries::zero(n);
    let mut k = 0;
    while k + binom2(k) <= n {
        let term = &pochhammer(&a, &t, k) * &pochhammer(&t, &t, k + 1).inv()?;
        sum = &sum + &term.mul_t_pow(k + binom2(k));
        k += 1;
    }
    let c = ii(n, &[1, 0, -2]);
    let pre = &(&ii(n, &[1, 1, -2]) * &ii(n, &[1, 0, -1])) * &(&c * &c).inv()?;
    Ok(&pre * &sum)
}

/// `R(t;u,tu)` at the special point from an iteration result `R(t;u,v)`.
pub fn special_value_from(r_uv: &CPoly<Int>) -> Result<TSeries<Int>> {
    let n = r_uv.order();
    let diag = r_uv.substitute(Var::V, &Image::t_var(1, Var::U))?;
    diag.substitute(Var::U, &Image::Series(special_u(n)?))?.to_tseries()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{iterate_triangular, length_series};
    use crate::WalkClass;

    #[test]
    fn y_root() {
        let y = triangular_y(20).unwrap();
        assert_eq!(y.valuation(), Some(1));
        assert!(triangular_y_residual(&y).is_zero());
    }

    #[test]
    fn length_matches_iteration() {
        let c = triangular_closed(12, Terms::Auto).unwrap();
        assert_eq!(c.p1.coeff(0), Int::from(1));
        assert_eq!(c.p1.coeff(1), Int::from(6));
        assert_eq!(c.p1, length_series(WalkClass::Triangular, 12).unwrap());
        assert!(matches!(triangular_closed(12, Terms::Fixed(2)), Err(Error::TruncationInsufficient(_))));
    }

    #[test]
    fn kernel_parametrization() {
        assert!(triangular_kernel_residual(16).unwrap().is_zero());
    }

    #[test]
    fn box_formula_values() {
        assert_eq!(triangular_box_formula(0).total, BigUint::one());
        let b = triangular_box_formula(2);
        assert_eq!(b.total, BigUint::from(144u32));
        assert_eq!(b.right_edge, [32u32, 16, 32].map(BigUint::from));
    }

    #[test]
    fn euler_identity() {
        assert!(euler_identity_check(0, &TSeries::zero(0)).unwrap());
        assert!(euler_identity_check(25, &TSeries::zero(25)).unwrap());
        assert!(euler_identity_check(25, &special_a(25).unwrap()).unwrap());
        assert!(euler_identity_check(25, &ii(25, &[0, 3, 1])).unwrap());
    }

    #[test]
    fn special_value_three_ways() {
        let n = 10;
        let prod = special_value_product(n).unwrap();
        assert_eq!(special_value_sum(n).unwrap(), prod);
        let r = iterate_triangular(n).unwrap().r_of_uv;
        assert_eq!(special_value_from(&r).unwrap(), prod);
    }
}

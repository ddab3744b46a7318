use crate::error::Result;
use crate::series::{CPoly, Image, Int, Rat, TSeries, Var};

fn ri(order: usize, c: &[i64]) -> TSeries<Rat> {
    TSeries::from_i64s(order, c)
}

fn ii(order: usize, c: &[i64]) -> TSeries<Int> {
    TSeries::from_i64s(order, c)
}

/// Partially directed walks: `(1 + t) / (1 - 2t - t^2)`.
pub fn one_sided_closed(order: usize) -> Result<TSeries<Int>> {
    ii(order, &[1, -2, -1]).inv().map(|d| &ii(order, &[1, 1]) * &d)
}

/// Kernel root `U = (1 - t + t^2 + t^3 - sqrt((1 - t^4)(1 - 2t - t^2))) / (2t)`,
/// the power series solution of `(U - t)(1 - tU) = tU(1 - t^2)`.
pub fn two_sided_kernel_root(order: usize) -> Result<TSeries<Int>> {
    let m = order + 1;
    let disc = &ri(m, &[1, 0, 0, 0, -1]) * &ri(m, &[1, -2, -1]);
    let num = &ri(m, &[1, -1, 1, 1]) - &disc.sqrt()?;
    num.shift_down(1)?.scale(&Rat::new(1.into(), 2.into())).to_int()
}

/// Kernel residual `(1 - tU)(U - t) - tU(1 - t^2)`.
pub fn two_sided_kernel_residual(u: &TSeries<Int>) -> TSeries<Int> {
    let n = u.order();
    let t = TSeries::t(n);
    let lhs = &(&TSeries::one(n) - &(&t * u)) * &(u - &t);
    &lhs - &(&(&t * u) * &ii(n, &[1, 0, -1]))
}

#[derive(Clone, Debug)]
pub struct TwoSidedClosed {
    pub u: TSeries<Int>,
    /// `P(t;u)`, `u` marking the distance to the NE corner.
    pub p_of_u: CPoly<Int>,
    pub p1: TSeries<Int>,
}

/// `P(t;u) = 2(1-t^2)(1-t)U / ((1-uU)(1-tU)(2t-U)) - 1` and the length series.
pub fn two_sided_closed(order: usize) -> Result<TwoSidedClosed> {
    let u_root = two_sided_kernel_root(order + 1)?;
    let n = order;
    let u = u_root.truncate(n);
    // U/(2t - U) = V/(2 - V) with V = U/t.
    let v = u_root.shift_down(1)?;
    let t = TSeries::<Int>::t(n);
    let scalar = &(&(&ii(n, &[2, 0, -2]) * &ii(n, &[1, -1])) * &v)
        * &(&(&TSeries::one(n) - &(&t * &u)) * &(&TSeries::constant(n, Int::from(2)) - &v)).inv()?;
    let mut geo = CPoly::zero(n);
    let mut pow = TSeries::one(n);
    for k in 0..=n {
        geo.add_assign_poly(&CPoly::from_series_mono(&pow, Var::U.mono(k as i32)));
        pow = &pow * &u;
    }
    let p_of_u = &CPoly::from_tseries(&scalar).mul_poly(&geo) - &CPoly::one(n);
    Ok(TwoSidedClosed { u, p1: two_sided_length_closed(order)?.to_int()?, p_of_u })
}

/// `P(t;1) = (1 + t - t^3 + t(1-t) sqrt((1-t^4)/(1-2t-t^2))) / (1 - 2t - 2t^2 + 2t^3)`.
pub fn two_sided_length_closed(order: usize) -> Result<TSeries<Rat>> {
    let n = order;
    let root = (&ri(n, &[1, 0, 0, 0, -1]) * &ri(n, &[1, -2, -1]).inv()?).sqrt()?;
    let num = &ri(n, &[1, 1, 0, -1]) + &(&ri(n, &[0, 1, -1]) * &root);
    Ok(&num * &ri(n, &[1, -2, -2, 2]).inv()?)
}

/// Refined kernel root
/// `U(t,z) = z(1 - tz + t^2 + t^3 z - sqrt((1-t^2)(1+t-tz+t^2 z)(1-t-tz-t^2 z))) / (2t)`.
pub fn two_sided_endpoint_kernel_root(order: usize) -> Result<CPoly<Rat>> {
    let m = order + 1;
    let p = |terms: &[(i64, usize, i32)]| {
        let mut c = CPoly::<Rat>::zero(m);
        for &(coef, tp, ze) in terms {
            c.add_term(tp, [0, 0, 0, ze], Rat::from_integer(coef.into()));
        }
        c
    };
    let disc = &(&p(&[(1, 0, 0), (-1, 2, 0)]) * &p(&[(1, 0, 0), (1, 1, 0), (-1, 1, 1), (1, 2, 1)]))
        * &p(&[(1, 0, 0), (-1, 1, 0), (-1, 1, 1), (-1, 2, 1)]);
    let num = &p(&[(1, 0, 0), (-1, 1, 1), (1, 2, 0), (1, 3, 1)]) - &disc.sqrt()?;
    Ok(num.shift_down(1)?.mul_mono(&Rat::new(1.into(), 2.into()), 0, &[0, 0, 0, 1]))
}

/// `P(t,z;u) = 2z^3(1-t^2)(1-tz)U / ((z^2-uU)(z-tU)(2tz-U)) - 1`, `z` marking `X + Y`.
pub fn two_sided_endpoint_closed(order: usize) -> Result<CPoly<Int>> {
    let n = order;
    let u_root = two_sided_endpoint_kernel_root(order + 1)?.to_int()?;
    let u = u_root.truncate(n);
    let v = u_root.shift_down(1)?;
    let mono = |c: i64, tp: usize, m: [i32; 4]| CPoly::<Int>::monomial(n, Int::from(c), tp, m);
    let pre = &(&(&mono(2, 0, [0, 0, 0, 3]) - &mono(2, 2, [0, 0, 0, 3]))
        * &(&CPoly::one(n) - &mono(1, 1, [0, 0, 0, 1])))
        * &v;
    let d1 = &mono(1, 0, [0, 0, 0, 2]) - &u.shift(0, &[1, 0, 0, 0]);
    let d2 = &mono(1, 0, [0, 0, 0, 1]) - &u.shift(1, &[0; 4]);
    let d3 = &mono(2, 0, [0, 0, 0, 1]) - &v;
    let p = &(&(&pre * &d1.inv()?) * &d2.inv()?) * &d3.inv()?;
    Ok(&p - &CPoly::one(n))
}

/// Residual of the refined root against `tU^2 - zAU + z^2 (A^2 - D)/(4t) = 0`
/// where `U = z(A - sqrt D)/(2t)`.
pub fn two_sided_endpoint_kernel_residual(order: usize) -> Result<CPoly<Rat>> {
    let m = order + 2;
    let u = two_sided_endpoint_kernel_root(m)?;
    let n = u.order();
    let p = |terms: &[(i64, usize, i32)]| {
        let mut c = CPoly::<Rat>::zero(n + 1);
        for &(coef, tp, ze) in terms {
            c.add_term(tp, [0, 0, 0, ze], Rat::from_integer(coef.into()));
        }
        c
    };
    let a = p(&[(1, 0, 0), (-1, 1, 1), (1, 2, 0), (1, 3, 1)]);
    let disc = &(&p(&[(1, 0, 0), (-1, 2, 0)]) * &p(&[(1, 0, 0), (1, 1, 0), (-1, 1, 1), (1, 2, 1)]))
        * &p(&[(1, 0, 0), (-1, 1, 0), (-1, 1, 1), (-1, 2, 1)]);
    let c = (&(&a * &a) - &disc).shift_down(1)?.scale(&Rat::new(1.into(), 4.into()));
    let a = a.truncate(n);
    let z = |e: i32| [0, 0, 0, e];
    let res = &(&u.mul_poly(&u).shift(1, &z(0)) - &a.mul_poly(&u).shift(0, &z(1))) + &c.shift(0, &z(2));
    Ok(res.truncate(order))
}

/// Specialization `z = 1`.
pub fn at_z_one<C: crate::series::Coeff>(p: &CPoly<C>) -> Result<CPoly<C>> {
    p.substitute(Var::Z, &Image::One)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_root_prefix() {
        let u = two_sided_kernel_root(12).unwrap();
        assert_eq!(&u.coeffs()[..6], ii(5, &[0, 1, 1, 1, 1, 2]).coeffs());
        assert!(two_sided_kernel_residual(&u).is_zero());
    }

    #[test]
    fn length_prefix() {
        let p1 = two_sided_length_closed(5).unwrap().to_int().unwrap();
        assert_eq!(p1, ii(5, &[1, 4, 10, 26, 66, 168]));
        let c = two_sided_closed(9).unwrap();
        assert_eq!(c.p_of_u.at_one(), c.p1);
        assert_eq!(c.p_of_u, crate::equations::iterate_2sided(9).unwrap().p_of_u);
    }

    #[test]
    fn one_sided_prefix() {
        assert_eq!(one_sided_closed(4).unwrap(), ii(4, &[1, 3, 7, 17, 41]));
    }

    #[test]
    fn refined_reduces_at_z_one() {
        let n = 8;
        let refined = two_sided_endpoint_closed(n).unwrap();
        assert_eq!(at_z_one(&refined).unwrap(), two_sided_closed(n).unwrap().p_of_u);
        let p1 = refined.substitute(Var::U, &Image::One).unwrap();
        assert_eq!(p1.term(1, &[0, 0, 0, 1]), Int::from(2));
        assert_eq!(p1.term(1, &[0, 0, 0, -1]), Int::from(2));
        assert!(two_sided_endpoint_kernel_residual(n).unwrap().is_zero());
    }
}

use crate::error::{Error, Result};
use crate::series::{CPoly, Image, Int, TSeries, Var};

/// How many summands of the iterated sum to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Terms {
    /// Stop once the summand numerator vanishes modulo the truncation order.
    #[default]
    Auto,
    /// Use exactly this many summands; fail if the next one is still nonzero.
    Fixed(usize),
}

/// Bivariate kernel root `U(t;w)`, the power series solution of
/// `(U - t)(1 - tU) = twU(1 - t^2)`, as a polynomial in `w`.
pub fn three_sided_kernel_root(order: usize) -> CPoly<Int> {
    // U (1 + t^2 - tw + t^3 w) = t + t U^2, solved coefficient by coefficient.
    let mut p: Vec<Vec<Int>> = vec![Vec::new(); order + 1];
    let add = |dst: &mut Vec<Int>, src: &[Int], sign: i64, shift: usize| {
        if dst.len() < src.len() + shift {
            dst.resize(src.len() + shift, Int::from(0));
        }
        for (i, c) in src.iter().enumerate() {
            if sign > 0 {
                dst[i + shift] += c;
            } else {
                dst[i + shift] -= c;
            }
        }
    };
    for n in 1..=order {
        let mut cur: Vec<Int> = Vec::new();
        if n == 1 {
            cur.push(Int::from(1));
        }
        // (U^2)_{n-1}
        for a in 1..n.saturating_sub(1) {
            let b = n - 1 - a;
            for (i, x) in p[a].iter().enumerate() {
                if x == &Int::from(0) {
                    continue;
                }
                for (j, y) in p[b].iter().enumerate() {
                    if cur.len() <= i + j {
                        cur.resize(i + j + 1, Int::from(0));
                    }
                    cur[i + j] += x * y;
                }
            }
        }
        if n >= 2 {
            let prev = p[n - 2].clone();
            add(&mut cur, &prev, -1, 0);
        }
        let prev = p[n - 1].clone();
        add(&mut cur, &prev, 1, 1);
        if n >= 3 {
            let prev = p[n - 3].clone();
            add(&mut cur, &prev, -1, 1);
        }
        p[n] = cur;
    }
    let mut out = CPoly::zero(order);
    for (n, row) in p.iter().enumerate() {
        for (d, c) in row.iter().enumerate() {
            if c != &Int::from(0) {
                out.add_term(n, Var::W.mono(d as i32), c.clone());
            }
        }
    }
    out
}

/// Residual of `(U - t)(1 - tU) - twU(1 - t^2)` for the bivariate root.
pub fn three_sided_kernel_residual(u: &CPoly<Int>) -> CPoly<Int> {
    let n = u.order();
    let t = CPoly::monomial(n, Int::from(1), 1, [0; 4]);
    let one = CPoly::one(n);
    let lhs = &(u - &t) * &(&one - &(&t * u));
    let rhs = u.mul_series(&TSeries::from_i64s(n, &[0, 1, 0, -1])).shift(0, &Var::W.mono(1));
    &lhs - &rhs
}

/// `K(u, qu)` with `K(u,v) = (u - tv)(v - tu) - tuv(1 - t^2)`.
pub fn three_sided_homogeneity_residual(q: &TSeries<Int>) -> CPoly<Int> {
    let n = q.order();
    let u = CPoly::var(n, Var::U);
    let qu = CPoly::from_series_mono(q, Var::U.mono(1));
    let t = |p: &CPoly<Int>| p.shift(1, &[0; 4]);
    let k = &(&u - &t(&qu)) * &(&qu - &t(&u));
    &k - &t(&u.mul_poly(&qu)).mul_series(&TSeries::from_i64s(n, &[1, 0, -1]))
}

#[derive(Clone, Debug)]
pub struct ThreeSidedClosed {
    pub q: TSeries<Int>,
    /// `T(t;1,t)`.
    pub t_1t: TSeries<Int>,
    /// `P(t;u)`, `u` marking the box width. Empty for the length-only variant.
    pub p_of_u: Option<CPoly<Int>>,
    pub p1: TSeries<Int>,
    /// t-valuation of the numerator of each summand used.
    pub summand_valuations: Vec<usize>,
}

/// `(x - t) / (t (1 - tx))`.
fn f_term(x: &CPoly<Int>) -> Result<CPoly<Int>> {
    let n = x.order();
    let t = CPoly::monomial(n, Int::from(1), 1, [0; 4]);
    let num = (x - &t).shift_down(1)?;
    let den = (&CPoly::one(n) - &(&t * x)).inv()?;
    Ok(&num * &den.truncate(n - 1))
}

fn valuation(p: &CPoly<Int>) -> Option<usize> {
    (0..=p.order()).find(|&d| p.slice_len(d) > 0)
}

/// `T(u,tu) = sum_k (-1)^k prod_{i<k}(t/(1-tq) - U(uq^{i+1})) / prod_{i<=k}((1-tq)/(1-t^2) - U(uq^i))
/// * (1 + f(U(uq^k)) + f(U(uq^{k+1})))`, with `images[i] = U(uq^i)`.
fn t_sum(
    order: usize,
    q: &TSeries<Int>,
    image: &dyn Fn(usize) -> Result<CPoly<Int>>,
    terms: Terms,
) -> Result<(CPoly<Int>, Vec<usize>)> {
    let m = order + 1;
    let qm = q.truncate(m);
    let one = TSeries::<Int>::one(m);
    let t = TSeries::<Int>::t(m);
    let lead = &t * &(&one - &(&t * &qm)).inv()?;
    let base = &(&one - &(&t * &qm)) * &TSeries::from_i64s(m, &[1, 0, -1]).inv()?;
    let lead = CPoly::from_tseries(&lead);
    let base = CPoly::from_tseries(&base);
    let mut sum = CPoly::<Int>::zero(order);
    let mut num = CPoly::<Int>::one(m);
    let mut den_inv = CPoly::<Int>::one(m);
    let mut cur = image(0)?;
    let mut valuations = Vec::new();
    let mut k = 0usize;
    while let Some(v) = valuation(&num).filter(|&v| v <= order) {
        if let Terms::Fixed(limit) = terms {
            if k == limit {
                return Err(Error::TruncationInsufficient(format!(
                    "{limit} summands leave a nonzero summand of valuation {v} at order {order}"
                )));
            }
        }
        valuations.push(v);
        let next = image(k + 1)?;
        den_inv = &den_inv * &(&base - &cur).inv()?;
        let bracket = &(&CPoly::one(m - 1) + &f_term(&cur)?) + &f_term(&next)?;
        let summand = (&(&num * &den_inv) * &bracket).truncate(order);
        if k % 2 == 0 {
            sum.add_assign_poly(&summand);
        } else {
            sum = &sum - &summand;
        }
        num = &num * &(&lead - &next);
        cur = next;
        k += 1;
    }
    Ok((sum, valuations))
}

fn q_powers(q: &TSeries<Int>, i: usize) -> TSeries<Int> {
    q.pow(i)
}

/// Length generating function and `T(t;1,t)` for 3-sided walks.
pub fn three_sided_length_closed(order: usize, terms: Terms) -> Result<ThreeSidedClosed> {
    let m = order + 1;
    let ubi = three_sided_kernel_root(m);
    let q = ubi.substitute(Var::W, &Image::One)?.to_tseries()?;
    let image = |i: usize| ubi.substitute(Var::W, &Image::Series(q_powers(&q, i)));
    let (t_sum_poly, summand_valuations) = t_sum(order, &q, &image, terms)?;
    let t_1t = t_sum_poly.to_tseries()?;
    let n = order;
    let qn = q.truncate(n);
    let one = TSeries::<Int>::one(n);
    let t = TSeries::<Int>::t(n);
    let a = &(&TSeries::from_i64s(n, &[0, 0, 2]) * &qn) * &t_1t;
    let b = &(&TSeries::from_i64s(n, &[1, 1])
        * &(&TSeries::from_i64s(n, &[2, -1]) - &(&TSeries::from_i64s(n, &[0, 0, 1]) * &qn)))
        * &(&one - &(&t * &qn)).inv()?;
    let p1 = &(&(&a + &b) * &TSeries::from_i64s(n, &[1, -2, -1]).inv()?) - &TSeries::from_i64s(n, &[1, -1]).inv()?;
    Ok(ThreeSidedClosed { q: qn, t_1t, p_of_u: None, p1, summand_valuations })
}

/// Full 3-sided solution including `P(t;u)`.
pub fn three_sided_closed(order: usize, terms: Terms) -> Result<ThreeSidedClosed> {
    let len = three_sided_length_closed(order, terms)?;
    let m = order + 1;
    let ubi = three_sided_kernel_root(m);
    let q = len.q.clone();
    let qm = ubi.substitute(Var::W, &Image::One)?.to_tseries()?;
    let image = |i: usize| ubi.substitute(Var::W, &Image::SeriesVar(q_powers(&qm, i), Var::U));
    let (tu, vals) = t_sum(order, &qm, &image, terms)?;
    let n = order;
    let uu = image(0)?.truncate(n);
    let u = CPoly::var(n, Var::U);
    let one = CPoly::<Int>::one(n);
    let t = |p: &CPoly<Int>, k: usize| p.shift(k, &[0; 4]);
    let s = |c: &[i64]| CPoly::from_tseries(&TSeries::<Int>::from_i64s(n, c));
    let inv_tu = (&one - &t(&uu, 1)).inv()?;
    let d0 = s(&[1, -2, -1]).inv()?;
    let first =
        &(&(&t(&uu, 2).scale(&Int::from(2)) * &tu) + &(&(&s(&[1, 1]) * &(&s(&[2, -1]) - &t(&uu, 2))) * &inv_tu)) * &d0;
    let k2 = &(&(&s(&[1, -1]) - &t(&u, 1)) - &t(&u, 2)).inv()?;
    let factor = &(&(&(&one - &uu) * &s(&[2, 2])) * &(&one - &u)) * &(&d0 * k2);
    let second = &factor * &(&t(&tu, 2) + &(&s(&[0, 1, 1]) * &inv_tu));
    let p_of_u = &(&first - &second) - &s(&[1, -1]).inv()?;
    debug_assert_eq!(q, qm.truncate(n));
    Ok(ThreeSidedClosed { p_of_u: Some(p_of_u), summand_valuations: vals, ..len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::two_sided::two_sided_kernel_root;
    use crate::equations::{iterate_3sided, length_series};
    use crate::WalkClass;

    #[test]
    fn bivariate_root_satisfies_kernel() {
        let u = three_sided_kernel_root(14);
        assert!(three_sided_kernel_residual(&u).is_zero());
        assert_eq!(u.term(1, &[0; 4]), Int::from(1));
        assert_eq!(u.term(2, &Var::W.mono(1)), Int::from(1));
    }

    #[test]
    fn q_matches_two_sided_root() {
        let u = three_sided_kernel_root(20);
        let q = u.substitute(Var::W, &Image::One).unwrap().to_tseries().unwrap();
        assert_eq!(q, two_sided_kernel_root(20).unwrap());
        assert!(three_sided_homogeneity_residual(&q).is_zero());
    }

    #[test]
    fn length_prefix() {
        let c = three_sided_length_closed(14, Terms::Auto).unwrap();
        assert_eq!(c.p1, length_series(WalkClass::ThreeSided, 14).unwrap());
    }

    #[test]
    fn width_series_reduces_to_length() {
        let c = three_sided_closed(9, Terms::Auto).unwrap();
        let p = c.p_of_u.unwrap();
        assert_eq!(p.at_one(), c.p1);
        assert_eq!(p, iterate_3sided(9).unwrap().p_of_u);
    }

    #[test]
    fn fixed_terms_too_small_fails() {
        assert!(matches!(three_sided_length_closed(20, Terms::Fixed(1)), Err(Error::TruncationInsufficient(_))));
        let auto = three_sided_length_closed(20, Terms::Auto).unwrap();
        let k = auto.summand_valuations.len();
        assert_eq!(three_sided_length_closed(20, Terms::Fixed(k)).unwrap().p1, auto.p1);
    }
}

//! Exact fixed-point iteration of the walk-family functional equations.
//!
//! Each system is solved order by order in integer catalytic polynomials,
//! independently of any closed form.

mod solver;
mod systems;

pub use solver::{apply, picard, residual, solve, System};
pub use systems::{
    FourSidedSystem, OneSidedSystem, ThreeSidedSystem, TriangularSystem, TwoSidedDiagonalSystem, TwoSidedSumSystem,
    TwoSidedSystem,
};

use crate::error::{Error, Result};
use crate::lattice::WalkClass;
use crate::series::{CPoly, Image, Int, TSeries, Var};

#[derive(Clone, Debug)]
pub struct TwoSidedIteration {
    pub t_of_u: CPoly<Int>,
    pub p_of_u: CPoly<Int>,
}

#[derive(Clone, Debug)]
pub struct ThreeSidedIteration {
    pub t_of_uv: CPoly<Int>,
    pub r_of_uw: CPoly<Int>,
    pub p_of_u: CPoly<Int>,
}

#[derive(Clone, Debug)]
pub struct FourSidedIteration {
    pub t_of_uvw: CPoly<Int>,
    pub p_of_u: CPoly<Int>,
}

#[derive(Clone, Debug)]
pub struct TriangularIteration {
    pub r_of_uv: CPoly<Int>,
    pub p_of_u: CPoly<Int>,
}

fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn iterate_1sided(order: usize) -> Result<TSeries<Int>> {
    solve(&OneSidedSystem { order })?.remove(0).to_tseries()
}

/// `P(t;u) = 2T(t;u) - T(t;0)`, `u` marking the distance to the NE corner.
pub fn iterate_2sided(order: usize) -> Result<TwoSidedIteration> {
    let t = solve(&TwoSidedSystem { order })?.remove(0);
    let p = &t.scale(&int(2)) - &t.substitute(Var::U, &Image::Zero)?;
    Ok(TwoSidedIteration { t_of_u: t, p_of_u: p })
}

/// `P(t;u) = T(t;u,u) + 2R(t;1,u) - 2T(t;u,0) - t/(1-t)`, `u` marking the width.
pub fn iterate_3sided(order: usize) -> Result<ThreeSidedIteration> {
    let mut x = solve(&ThreeSidedSystem { order })?;
    let r = x.pop().unwrap();
    let t = x.pop().unwrap();
    let t_uu = t.substitute(Var::V, &Image::var(Var::U))?;
    let r_1u = r.substitute_many(&[(Var::U, Image::One), (Var::W, Image::var(Var::U))])?;
    let t_u0 = t.substitute(Var::V, &Image::Zero)?;
    let geo = CPoly::monomial(order, int(1), 1, [0; 4]).mul_geometric(&int(1), 1, &[0; 4])?;
    let p = &(&t_uu + &r_1u.scale(&int(2))) - &(&t_u0.scale(&int(2)) + &geo);
    Ok(ThreeSidedIteration { t_of_uv: t, r_of_uw: r, p_of_u: p })
}

/// `P(t;u) = 1 + 4T(t;u,u,u) - 4T(t;0,u,u)`, `u` marking the half-perimeter.
pub fn iterate_4sided(order: usize) -> Result<FourSidedIteration> {
    let t = solve(&FourSidedSystem { order, prune: true })?.remove(0);
    let t_uuu = t.substitute_many(&[(Var::V, Image::var(Var::U)), (Var::W, Image::var(Var::U))])?;
    let t_0uu =
        t.substitute_many(&[(Var::U, Image::Zero), (Var::V, Image::var(Var::U)), (Var::W, Image::var(Var::U))])?;
    let p = &CPoly::one(order) + &(&t_uuu - &t_0uu).scale(&int(4));
    Ok(FourSidedIteration { t_of_uvw: t, p_of_u: p })
}

/// `P(t;u) = 1 + 3R(t;u,u) - 3R(t;u,0)`, `u` marking the box size.
pub fn iterate_triangular(order: usize) -> Result<TriangularIteration> {
    let r = solve(&TriangularSystem { order })?.remove(0);
    let r_uu = r.substitute(Var::V, &Image::var(Var::U))?;
    let r_u0 = r.substitute(Var::V, &Image::Zero)?;
    let p = &CPoly::one(order) + &(&r_uu - &r_u0).scale(&int(3));
    Ok(TriangularIteration { r_of_uv: r, p_of_u: p })
}

/// Two-sided `P(t,z;u)` with `z` marking `X + Y`.
pub fn iterate_2sided_refined_sum(order: usize) -> Result<CPoly<Int>> {
    let t = solve(&TwoSidedSumSystem { order })?.remove(0);
    Ok(&t.scale(&int(2)) - &t.substitute(Var::U, &Image::Zero)?)
}

/// Two-sided `P(t,z;u)` with `z` marking `X - Y`:
/// `T(z;u) + T(1/z;u) - T(z;0)`.
pub fn iterate_2sided_diagonal(order: usize) -> Result<CPoly<Int>> {
    let t = solve(&TwoSidedDiagonalSystem { order })?.remove(0);
    let zbar = Image::Mono { coeff: int(1), t_pow: 0, exps: [0, 0, 0, -1] };
    Ok(&(&t + &t.substitute(Var::Z, &zbar)?) - &t.substitute(Var::U, &Image::Zero)?)
}

/// Length generating function `P(t;1)` of a class by iteration.
pub fn length_series(class: WalkClass, order: usize) -> Result<TSeries<Int>> {
    match class {
        WalkClass::OneSided => iterate_1sided(order),
        WalkClass::TwoSided => Ok(iterate_2sided(order)?.p_of_u.at_one()),
        WalkClass::ThreeSided => Ok(iterate_3sided(order)?.p_of_u.at_one()),
        WalkClass::Prudent4 => Ok(iterate_4sided(order)?.p_of_u.at_one()),
        WalkClass::Triangular => Ok(iterate_triangular(order)?.p_of_u.at_one()),
    }
}

/// Coefficients as `u64`, failing on negative or oversized values.
pub fn to_u64s(s: &TSeries<Int>) -> Result<Vec<u64>> {
    s.coeffs()
        .iter()
        .map(|c| u64::try_from(c).map_err(|_| Error::invalid(format!("coefficient {c} out of u64 range"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Mono;

    fn seq(s: &TSeries<Int>) -> Vec<u64> {
        to_u64s(s).unwrap()
    }

    #[test]
    fn length_series_small() {
        assert_eq!(seq(&iterate_1sided(6).unwrap()), [1, 3, 7, 17, 41, 99, 239]);
        assert_eq!(seq(&length_series(WalkClass::TwoSided, 7).unwrap()), [1, 4, 10, 26, 66, 168, 426, 1078]);
        assert_eq!(seq(&length_series(WalkClass::ThreeSided, 6).unwrap()), [1, 4, 12, 34, 90, 236, 612]);
        assert_eq!(seq(&length_series(WalkClass::Prudent4, 6).unwrap()), [1, 4, 12, 36, 100, 276, 748]);
        assert_eq!(seq(&length_series(WalkClass::Triangular, 5).unwrap()), [1, 6, 30, 132, 552, 2244]);
    }

    #[test]
    fn ne_corner_top_enders() {
        let it = iterate_2sided(4).unwrap();
        let t0 = it.t_of_u.substitute(Var::U, &Image::Zero).unwrap().to_tseries().unwrap();
        // N and E both end at the NE corner of their (degenerate) boxes.
        assert_eq!(t0.coeff(0), int(1));
        assert_eq!(t0.coeff(1), int(2));
    }

    #[test]
    fn residuals_vanish() {
        let n = 8;
        let two = solve(&TwoSidedSystem { order: n }).unwrap();
        assert!(residual(&TwoSidedSystem { order: n }, &two).unwrap().iter().all(CPoly::is_zero));
        let three = solve(&ThreeSidedSystem { order: n }).unwrap();
        assert!(residual(&ThreeSidedSystem { order: n }, &three).unwrap().iter().all(CPoly::is_zero));
        let sys4 = FourSidedSystem { order: n, prune: true };
        let four = solve(&sys4).unwrap();
        assert!(residual(&sys4, &four).unwrap().iter().all(CPoly::is_zero));
        let tri = solve(&TriangularSystem { order: n }).unwrap();
        assert!(residual(&TriangularSystem { order: n }, &tri).unwrap().iter().all(CPoly::is_zero));
        let diag = solve(&TwoSidedDiagonalSystem { order: n }).unwrap();
        assert!(residual(&TwoSidedDiagonalSystem { order: n }, &diag).unwrap().iter().all(CPoly::is_zero));
    }

    #[test]
    fn order_by_order_matches_picard() {
        let n = 7;
        assert_eq!(solve(&ThreeSidedSystem { order: n }).unwrap(), picard(&ThreeSidedSystem { order: n }).unwrap());
        assert_eq!(solve(&TwoSidedSumSystem { order: n }).unwrap(), picard(&TwoSidedSumSystem { order: n }).unwrap());
    }

    #[test]
    fn pruning_is_sound() {
        let n = 9;
        let pruned = solve(&FourSidedSystem { order: n, prune: true }).unwrap().remove(0);
        let full = solve(&FourSidedSystem { order: n, prune: false }).unwrap().remove(0);
        assert_eq!(pruned, full);
        assert!(full.satisfies_degree_bound());
    }

    #[test]
    fn symmetries() {
        let it = iterate_3sided(8).unwrap();
        assert_eq!(it.t_of_uv, it.t_of_uv.swap_vars(Var::U, Var::V));
        let tri = iterate_triangular(8).unwrap();
        assert_eq!(tri.r_of_uv, tri.r_of_uv.swap_vars(Var::U, Var::V));
        let d = iterate_2sided_diagonal(8).unwrap();
        let zbar = Image::Mono { coeff: int(1), t_pow: 0, exps: [0, 0, 0, -1] };
        assert_eq!(d, d.substitute(Var::Z, &zbar).unwrap());
    }

    #[test]
    fn refined_unit_steps_and_marginals() {
        let n = 6;
        let p = iterate_2sided_refined_sum(n).unwrap().substitute(Var::U, &Image::One).unwrap();
        let z1: Mono = [0, 0, 0, 1];
        let zm1: Mono = [0, 0, 0, -1];
        assert_eq!(p.term(1, &z1), int(2));
        assert_eq!(p.term(1, &zm1), int(2));
        assert_eq!(p.slice_len(1), 2);
        let plain = iterate_2sided(n).unwrap().p_of_u.at_one();
        assert_eq!(p.at_one(), plain);
        assert_eq!(iterate_2sided_diagonal(n).unwrap().at_one(), plain);
    }

    #[test]
    fn inclusion_chain() {
        let n = 8;
        let s: Vec<Vec<u64>> = WalkClass::SQUARE.iter().map(|&c| seq(&length_series(c, n).unwrap())).collect();
        for w in s.windows(2) {
            assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
        }
    }
}

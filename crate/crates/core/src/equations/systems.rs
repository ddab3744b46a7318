//! The walk-family systems, each written as `X = C + L(X)`.
//!
//! Every quotient by `(u - r)` is a divided difference `DD_u[f](u -> r)`,
//! i.e. `(f(u) - f(r)) / (u - r)`, so all right-hand sides are polynomial.

use super::solver::System;
use crate::error::Result;
use crate::series::{CPoly, Image, Int, Mono, Var, ONE_MONO};

const U: Var = Var::U;
const V: Var = Var::V;
const W: Var = Var::W;
const Z: Var = Var::Z;
const MU: Mono = [1, 0, 0, 0];
const MV: Mono = [0, 1, 0, 0];
const MW: Mono = [0, 0, 1, 0];

fn one() -> Int {
    Int::from(1)
}

/// `t^k * mono * p`.
fn tm(p: &CPoly<Int>, k: usize, mono: Mono) -> CPoly<Int> {
    p.shift(k, &mono)
}

/// `DD_var[var * p](var -> replacement)`.
fn dd_times_var(p: &CPoly<Int>, var: Var, replacement: Image<Int>) -> Result<CPoly<Int>> {
    p.shift(0, &var.mono(1)).divided_difference(var, &replacement)
}

fn sum(parts: Vec<CPoly<Int>>, order: usize) -> CPoly<Int> {
    let mut acc = CPoly::zero(order);
    for p in &parts {
        acc.add_assign_poly(p);
    }
    acc
}

/// One-sided walks: `P = (1+t)/(1-t) + t(1+t)/(1-t) P`.
pub struct OneSidedSystem {
    pub order: usize,
}

impl System for OneSidedSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        1
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        let base = &CPoly::one(self.order) + &CPoly::monomial(self.order, one(), 1, ONE_MONO);
        Ok(vec![base.mul_geometric(&one(), 1, &ONE_MONO)?])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let p = &x[0];
        let tp = &tm(p, 1, ONE_MONO) + &tm(p, 2, ONE_MONO);
        Ok(vec![tp.mul_geometric(&one(), 1, &ONE_MONO)?])
    }
}

/// Two-sided walks ending on the top edge, `T(u)` with `u` marking the
/// distance to the NE corner:
/// `T = 1/(1-tu) + t T(t) + t^2 u/(1-tu) T(u) + t DD_u[uT](u -> t)`.
pub struct TwoSidedSystem {
    pub order: usize,
}

impl System for TwoSidedSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        1
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        Ok(vec![CPoly::one(self.order).mul_geometric(&one(), 1, &MU)?])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let t = &x[0];
        let n = self.order;
        Ok(vec![sum(
            vec![
                tm(&t.substitute(U, &Image::t_pow(1))?, 1, ONE_MONO),
                tm(t, 2, MU).mul_geometric(&one(), 1, &MU)?,
                tm(&dd_times_var(t, U, Image::t_pow(1))?, 1, ONE_MONO),
            ],
            n,
        )])
    }
}

/// Three-sided walks. Slot 0 is `T(u, v)` (ending on the top edge, `u`, `v`
/// the distances to the NW and NE corners); slot 1 is `R(u, w)` (ending on
/// the right edge, `u` the distance to the NE corner, `w` the width):
///
/// `T = 1 + tv R(t,v) + tu R(t,u) + t DD_u[uT](u->tv) + t DD_v[vT](v->tu) - tT`
///
/// `R = 1/(1-tu) + t T(tw,w) + t^2 uw/(1-tu) R + tw DD_u[uR](u->t)`.
pub struct ThreeSidedSystem {
    pub order: usize,
}

impl System for ThreeSidedSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        2
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        Ok(vec![CPoly::one(self.order), CPoly::one(self.order).mul_geometric(&one(), 1, &MU)?])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let (t, r) = (&x[0], &x[1]);
        let n = self.order;
        let r_tv = r.substitute_many(&[(U, Image::t_pow(1)), (W, Image::var(V))])?;
        let r_tu = r.substitute_many(&[(U, Image::t_pow(1)), (W, Image::var(U))])?;
        let t_new = sum(
            vec![
                tm(&r_tv, 1, MV),
                tm(&r_tu, 1, MU),
                tm(&dd_times_var(t, U, Image::t_var(1, V))?, 1, ONE_MONO),
                tm(&dd_times_var(t, V, Image::t_var(1, U))?, 1, ONE_MONO),
                tm(t, 1, ONE_MONO).neg_poly(),
            ],
            n,
        );
        let t_tww = t.substitute_many(&[(U, Image::t_var(1, W)), (V, Image::var(W))])?;
        let r_new = sum(
            vec![
                tm(&t_tww, 1, ONE_MONO),
                tm(r, 2, [1, 0, 1, 0]).mul_geometric(&one(), 1, &MU)?,
                tm(&dd_times_var(r, U, Image::t_pow(1))?, 1, MW),
            ],
            n,
        );
        Ok(vec![t_new, r_new])
    }
}

/// General prudent walks ending on the top edge, `T(u, v, w)` with `u`, `v`
/// the distances to the NW and NE corners and `w` the box height:
///
/// `T = 1 + tv T(w,tw,v) + tu T(w,tw,u) + tw DD_u[uT](u->tv) + tw DD_v[vT](v->tu) - twT`.
///
/// Terms `t^n u^i v^j w^h` with `i + j + h > n` vanish and are pruned.
pub struct FourSidedSystem {
    pub order: usize,
    pub prune: bool,
}

impl System for FourSidedSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        1
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        Ok(vec![CPoly::one(self.order)])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let t = &x[0];
        let n = self.order;
        let rot_v = t.substitute_many(&[(U, Image::var(W)), (V, Image::t_var(1, W)), (W, Image::var(V))])?;
        let rot_u = t.substitute_many(&[(U, Image::var(W)), (V, Image::t_var(1, W)), (W, Image::var(U))])?;
        Ok(vec![sum(
            vec![
                tm(&rot_v, 1, MV),
                tm(&rot_u, 1, MU),
                tm(&dd_times_var(t, U, Image::t_var(1, V))?, 1, MW),
                tm(&dd_times_var(t, V, Image::t_var(1, U))?, 1, MW),
                tm(t, 1, MW).neg_poly(),
            ],
            n,
        )])
    }
    fn keep(&self, t_degree: usize, m: &Mono) -> bool {
        !self.prune || (m[0] + m[1] + m[2]) as usize <= t_degree
    }
}

/// Triangular prudent walks ending on the right edge, `R(u, v)` with `u`,
/// `v` the distances to the two corners of that edge:
///
/// `R = 1 + (t+t^2) u R(tu,u) + (t+t^2) v R(v,tv) + (tv + t^2 v) DD_u[uR](u->tv)
///        + (tu + t^2 u) DD_v[vR](v->tu)`.
pub struct TriangularSystem {
    pub order: usize,
}

impl System for TriangularSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        1
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        Ok(vec![CPoly::one(self.order)])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let r = &x[0];
        let n = self.order;
        let r_tuu = r.substitute_many(&[(U, Image::t_var(1, U)), (V, Image::var(U))])?;
        let r_vtv = r.substitute_many(&[(U, Image::var(V)), (V, Image::t_var(1, V))])?;
        let ddu = dd_times_var(r, U, Image::t_var(1, V))?;
        let ddv = dd_times_var(r, V, Image::t_var(1, U))?;
        Ok(vec![sum(
            vec![
                tm(&r_tuu, 1, MU),
                tm(&r_tuu, 2, MU),
                tm(&r_vtv, 1, MV),
                tm(&r_vtv, 2, MV),
                tm(&ddu, 1, MV),
                tm(&ddu, 2, MV),
                tm(&ddv, 1, MU),
                tm(&ddv, 2, MU),
            ],
            n,
        )])
    }
}

/// Two-sided walks ending on the top edge with `z` marking `X + Y`:
///
/// `T = z/(z-tu) + tz T(z; tz) + t^2 u/(1-tu/z) T(u) + tz DD_u[uT](u->tz)`.
pub struct TwoSidedSumSystem {
    pub order: usize,
}

const U_OVER_Z: Mono = [1, 0, 0, -1];

impl System for TwoSidedSumSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        1
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        Ok(vec![CPoly::one(self.order).mul_geometric(&one(), 1, &U_OVER_Z)?])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let t = &x[0];
        let mz: Mono = [0, 0, 0, 1];
        Ok(vec![sum(
            vec![
                tm(&t.substitute(U, &Image::t_var(1, Z))?, 1, mz),
                tm(t, 2, MU).mul_geometric(&one(), 1, &U_OVER_Z)?,
                tm(&dd_times_var(t, U, Image::t_var(1, Z))?, 1, mz),
            ],
            self.order,
        )])
    }
}

/// Two-sided walks ending on the top edge with `z` marking `X - Y`:
///
/// `T = z/(z-tu) + tz T(1/z; t/z) + t^2 u z^-2/(1-tu/z) T(u) + (t/z) DD_u[uT](u->tz)`.
///
/// Walks ending on the right edge are counted by `T(1/z; u)` by reflection.
pub struct TwoSidedDiagonalSystem {
    pub order: usize,
}

impl System for TwoSidedDiagonalSystem {
    fn order(&self) -> usize {
        self.order
    }
    fn slots(&self) -> usize {
        1
    }
    fn constant(&self) -> Result<Vec<CPoly<Int>>> {
        Ok(vec![CPoly::one(self.order).mul_geometric(&one(), 1, &U_OVER_Z)?])
    }
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
        let t = &x[0];
        let reflected = t.substitute_many(&[
            (Z, Image::Mono { coeff: one(), t_pow: 0, exps: [0, 0, 0, -1] }),
            (U, Image::Mono { coeff: one(), t_pow: 1, exps: [0, 0, 0, -1] }),
        ])?;
        Ok(vec![sum(
            vec![
                tm(&reflected, 1, [0, 0, 0, 1]),
                tm(t, 2, [1, 0, 0, -2]).mul_geometric(&one(), 1, &U_OVER_Z)?,
                tm(&dd_times_var(t, U, Image::t_var(1, Z))?, 1, [0, 0, 0, -1]),
            ],
            self.order,
        )])
    }
}

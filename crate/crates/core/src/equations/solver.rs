use crate::error::Result;
use crate::series::{CPoly, Int, Mono};

/// A fixed-point system `X = C + L(X)` in catalytic polynomials, where `L`
/// is additive and raises the `t`-valuation by at least one.
pub trait System {
    fn order(&self) -> usize;
    fn slots(&self) -> usize;
    fn constant(&self) -> Result<Vec<CPoly<Int>>>;
    fn linear(&self, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>>;

    /// Structural pruning: terms for which this returns false are known to
    /// vanish in the solution and are dropped as soon as they appear.
    fn keep(&self, _t_degree: usize, _mono: &Mono) -> bool {
        true
    }
}

fn prune<S: System + ?Sized>(sys: &S, polys: &mut [CPoly<Int>]) {
    for p in polys {
        p.retain(|n, m| sys.keep(n, m));
    }
}

/// Solves the system modulo `t^(order+1)` one `t`-degree at a time.
///
/// The accumulator holds `C + L(x_0 + ... + x_(n-1))`; its degree-`n` part is
/// final once slices below `n` have been fed through `L`, because `L` only
/// raises the degree. Each slice therefore passes through `L` exactly once.
pub fn solve<S: System + ?Sized>(sys: &S) -> Result<Vec<CPoly<Int>>> {
    let order = sys.order();
    let mut acc = sys.constant()?;
    prune(sys, &mut acc);
    let mut x: Vec<CPoly<Int>> = (0..sys.slots()).map(|_| CPoly::zero(order)).collect();
    for n in 0..=order {
        let slice: Vec<CPoly<Int>> = acc.iter().map(|a| a.graded_part(n)).collect();
        if slice.iter().all(CPoly::is_zero) {
            continue;
        }
        for (xi, si) in x.iter_mut().zip(&slice) {
            xi.add_assign_poly(si);
        }
        if n == order {
            break;
        }
        let mut contrib = sys.linear(&slice)?;
        prune(sys, &mut contrib);
        for (a, c) in acc.iter_mut().zip(&contrib) {
            a.add_assign_poly(c);
        }
    }
    Ok(x)
}

/// Plain Picard iteration `X <- C + L(X)` from zero, `order + 1` rounds.
pub fn picard<S: System + ?Sized>(sys: &S) -> Result<Vec<CPoly<Int>>> {
    let c = sys.constant()?;
    let mut x: Vec<CPoly<Int>> = (0..sys.slots()).map(|_| CPoly::zero(sys.order())).collect();
    for _ in 0..=sys.order() {
        let l = sys.linear(&x)?;
        x = c.iter().zip(&l).map(|(a, b)| a + b).collect();
        prune(sys, &mut x);
    }
    Ok(x)
}

/// One application of the right-hand side.
pub fn apply<S: System + ?Sized>(sys: &S, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
    let c = sys.constant()?;
    let l = sys.linear(x)?;
    Ok(c.iter().zip(&l).map(|(a, b)| a + b).collect())
}

/// `X - (C + L(X))` for each slot.
pub fn residual<S: System + ?Sized>(sys: &S, x: &[CPoly<Int>]) -> Result<Vec<CPoly<Int>>> {
    Ok(apply(sys, x)?.iter().zip(x).map(|(r, xi)| xi - r).collect())
}

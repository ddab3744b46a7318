//! Exact coefficient rings, truncated power series in `t` and polynomials in
//! the catalytic variables `u, v, w` (Laurent in `z`) with series coefficients.

mod coeff;
mod cpoly;
mod json;
mod tseries;

pub use coeff::{rat_from_str, rat_to_string, Coeff, Int, Rat};
pub use cpoly::{CPoly, Image, Mono, Var, ONE_MONO};
pub use json::{SeriesJson, TermJson};
pub use tseries::{pochhammer, TSeries};

use crate::error::{Error, Result};

/// Substitutes `inner` for the auxiliary variable `var` of a polynomial that
/// depends on `var` only. `inner` must have zero constant term.
pub fn compose<C: Coeff>(outer: &CPoly<C>, var: Var, inner: &TSeries<C>) -> Result<TSeries<C>> {
    if inner.valuation().is_some_and(|v| v == 0) {
        return Err(Error::invalid("inner series must have zero constant term"));
    }
    outer.substitute(var, &Image::Series(inner.clone()))?.to_tseries()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_identity_and_zero() {
        let w = CPoly::<Int>::var(5, Var::W);
        let t = TSeries::<Int>::t(5);
        assert_eq!(compose(&w, Var::W, &t).unwrap(), t);
        let w_plus_t = &w + &CPoly::from_tseries(&t);
        assert_eq!(compose(&w_plus_t, Var::W, &TSeries::zero(5)).unwrap(), t);
        assert!(compose(&w, Var::W, &TSeries::one(5)).is_err());
        assert!(compose(&CPoly::var(5, Var::U), Var::W, &t).is_err());
    }
}

//! Growth, drift and variance constants evaluated with rigorous rational
//! interval arithmetic, and ratio-method estimates from computed coefficients.

mod interval;

pub use interval::{eval_poly, eval_poly_interval, find_real_root, rat_poly, Interval, PRECISION_BITS};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::closed::length_series_closed;
use crate::error::{Error, Result};
use crate::lattice::WalkClass;
use crate::series::{Int, Rat};

/// Where a reported constant comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Exact formula evaluated at the computed singularity.
    ClosedForm,
    /// Estimated from computed coefficients.
    Empirical,
}

#[derive(Clone, Debug)]
pub struct Constant {
    pub name: &'static str,
    pub value: Interval,
    pub provenance: Provenance,
    pub description: &'static str,
}

#[derive(Clone, Debug)]
pub struct AsymptoticConstants {
    pub class: WalkClass,
    pub constants: Vec<Constant>,
}

impl AsymptoticConstants {
    pub fn get(&self, name: &str) -> Option<&Constant> {
        self.constants.iter().find(|c| c.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).map(|c| c.value.to_f64())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<_> = self
            .constants
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "value": c.value.to_f64(),
                    "error_bound": c.value.radius(),
                    "provenance": c.provenance,
                    "description": c.description,
                })
            })
            .collect();
        serde_json::json!({ "class": self.class.name(), "constants": list })
    }
}

/// Bisection tolerance for the singularities.
const ROOT_TOL: f64 = 1e-60;
/// Coefficient index used for the empirical amplitude.
const KAPPA_N: usize = 160;

fn r(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

fn i(x: i64) -> Interval {
    Interval::from_i64(x)
}

fn c(name: &'static str, value: Interval, provenance: Provenance, description: &'static str) -> Constant {
    Constant { name, value, provenance, description }
}

/// Root of `1 - 2t - 2t^2 + 2t^3` near 0.403.
pub fn rho_two_sided() -> Result<Interval> {
    find_real_root(&rat_poly(&[1, -2, -2, 2]), &r(3, 10), &r(1, 2), ROOT_TOL)
}

/// `(sqrt(17) - 3) / 4`.
pub fn rho_triangular() -> Result<Interval> {
    &(&i(17).sqrt()? - &i(3)) / &i(4)
}

/// Amplitude estimates `p_n rho^n` for `n` in `[KAPPA_N - 10, KAPPA_N]`, as their hull.
fn empirical_kappa(class: WalkClass, mu: &Interval) -> Result<Interval> {
    let p = length_series_closed(class, KAPPA_N)?;
    let mut hull: Option<Interval> = None;
    for n in KAPPA_N - 10..=KAPPA_N {
        // Dividing by mu^n keeps the relative error small; rho^n would underflow the fixed precision.
        let v = (&Interval::point(Rat::from_integer(p.coeff(n))) / &mu.powi(n as u32))?;
        hull = Some(match hull {
            None => v,
            Some(h) => h.hull(&v),
        });
    }
    Ok(hull.unwrap())
}

/// Constants describing the large-`n` behaviour of a class.
pub fn constants(class: WalkClass) -> Result<AsymptoticConstants> {
    use Provenance::*;
    let constants = match class {
        WalkClass::TwoSided => {
            let rho = rho_two_sided()?;
            let mu = rho.recip()?;
            let kappa =
                (&(&rho * &(&(&i(3) * &rho) - &i(1))) / &(&(&(&i(3) * &rho) + &i(1)) * &(&(&i(5) * &rho) - &i(2))))?;
            let one_p = &rho + &i(1);
            let three_p1 = &(&i(3) * &rho) + &i(1);
            let m = (&one_p / &three_p1)?;
            let s2_sum = (&(&(&i(4) * &one_p.powi(2)) * &rho) / &(&three_p1.powi(3) * &(&i(1) - &rho)))?;
            let s2_diff = (&(&(&rho * &(&rho.powi(2) - &i(2))) * &one_p)
                / &(&(&(&(&rho.powi(2) + &rho) - &i(1)) * &(&(&i(3) * &rho) - &i(1))) * &three_p1))?;
            let ne = (&(&i(2) * &rho) / &(&i(1) - &(&i(2) * &rho)))?;
            let tc = &i(2).sqrt()? - &i(1);
            vec![
                c("rho", rho, ClosedForm, "radius of convergence, root of 1-2t-2t^2+2t^3"),
                c("mu", mu, ClosedForm, "growth constant 1/rho"),
                c("kappa", kappa, ClosedForm, "amplitude in p_n ~ kappa mu^n"),
                c("drift_sum", m, ClosedForm, "E(X_n+Y_n)/n"),
                c("variance_sum", s2_sum, ClosedForm, "V(X_n+Y_n)/n"),
                c("variance_diff", s2_diff, ClosedForm, "V(X_n-Y_n)/n"),
                c("ne_distance_mean", ne, ClosedForm, "mean distance from the endpoint to the NE corner"),
                c("t_c", tc, ClosedForm, "square-root singularity sqrt(2)-1"),
            ]
        }
        WalkClass::ThreeSided => {
            let rho = rho_two_sided()?;
            let mu = rho.recip()?;
            let kappa = empirical_kappa(class, &mu)?;
            let one_p = &rho + &i(1);
            let three_p1 = &(&i(3) * &rho) + &i(1);
            let m = (&one_p / &(&i(2) * &three_p1))?;
            let poly = &(&i(385) - &(&i(1148) * &rho.powi(2))) - &(&i(494) * &rho);
            let num = &(&(&i(3) * &rho) * &one_p) * &poly;
            let den = &(&(&i(16) * &(&(&rho.powi(2) + &rho) - &i(1))) * &(&(&i(3) * &rho) - &i(1)).powi(3))
                * &three_p1.powi(3);
            let s2 = (&num / &den)?;
            let tc = &i(2).sqrt()? - &i(1);
            vec![
                c("rho", rho, ClosedForm, "dominant simple pole, shared with two-sided walks"),
                c("mu", mu, ClosedForm, "growth constant 1/rho"),
                c("kappa", kappa, Empirical, "p_n rho^n over the last computed coefficients"),
                c("width_drift", m, ClosedForm, "E(W_n)/n for the box width W_n"),
                c("width_variance", s2, ClosedForm, "V(W_n)/n"),
                c("t_c", tc, ClosedForm, "radius of meromorphy sqrt(2)-1"),
            ]
        }
        WalkClass::Triangular => {
            let rho = rho_triangular()?;
            let mu = rho.recip()?;
            let kappa = empirical_kappa(class, &mu)?;
            let s17 = i(17).sqrt()?;
            let m = (&(&i(1) + &s17.recip()?) / &i(2))?;
            let s2 = (&i(12) / &(&i(17) * &s17))?;
            let tc = find_real_root(&rat_poly(&[1, -3, -1, -1]), &r(1, 5), &r(2, 5), ROOT_TOL)?;
            let t0 = find_real_root(&rat_poly(&[1, -2, -6, 2, 4]), &r(1, 4), &r(3, 10), ROOT_TOL)?;
            vec![
                c("rho", rho, ClosedForm, "dominant simple pole (sqrt(17)-3)/4"),
                c("mu", mu, ClosedForm, "growth constant (3+sqrt(17))/2"),
                c("kappa", kappa, Empirical, "p_n rho^n over the last computed coefficients"),
                c("box_drift", m, ClosedForm, "E(S_n)/n for the box size S_n"),
                c("box_variance", s2, ClosedForm, "V(S_n)/n"),
                c("t_c", tc, ClosedForm, "branch point, root of 1-3t-t^2-t^3"),
                c("t_0", t0, ClosedForm, "real pole of R(t;1,t), root of 4t^4+2t^3-6t^2-2t+1"),
            ]
        }
        WalkClass::OneSided | WalkClass::Prudent4 => {
            return Err(Error::NotAvailable(format!("no asymptotic constants are tabulated for {class} walks")))
        }
    };
    Ok(AsymptoticConstants { class, constants })
}

/// Ratio-method estimate of the growth constant.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    /// Extrapolated estimate `n r_n - (n-1) r_(n-1)` at the last index.
    pub mu_hat: f64,
    /// Last raw ratio `c_n / c_(n-1)`.
    pub raw_ratio: f64,
    /// Raw ratios `r_n` for `n >= 1`.
    pub ratios: Vec<f64>,
    /// Extrapolated values for `n >= 2`.
    pub extrapolated: Vec<f64>,
}

/// Growth constant from at least 20 positive coefficients.
pub fn growth_estimate(coeffs: &[BigUint]) -> Result<GrowthEstimate> {
    if coeffs.len() < 20 {
        return Err(Error::invalid(format!("need at least 20 coefficients, got {}", coeffs.len())));
    }
    let start = coeffs.iter().position(|x| !x.is_zero()).unwrap_or(coeffs.len());
    if start > 0 && coeffs[start..].len() < 20 || coeffs[start..].iter().any(|x| x.is_zero()) {
        return Err(Error::invalid("coefficients must be positive from some index on"));
    }
    let exact: Vec<Rat> =
        coeffs[start..].windows(2).map(|w| Rat::new(Int::from(w[1].clone()), Int::from(w[0].clone()))).collect();
    let ratios: Vec<f64> = exact.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let extrapolated: Vec<f64> = (1..exact.len())
        .map(|k| {
            let n = Rat::from_integer(Int::from(start + k + 1));
            let e = &exact[k] * &n - &exact[k - 1] * (n - Rat::from_integer(1.into()));
            e.to_f64().unwrap_or(f64::NAN)
        })
        .collect();
    Ok(GrowthEstimate {
        mu_hat: *extrapolated.last().unwrap(),
        raw_ratio: *ratios.last().unwrap(),
        ratios,
        extrapolated,
    })
}

/// Growth estimate from the first `order + 1` closed-form coefficients of a class.
pub fn growth_estimate_for(class: WalkClass, order: usize) -> Result<GrowthEstimate> {
    let s = length_series_closed(class, order)?;
    let coeffs = s
        .coeffs()
        .iter()
        .map(|x| x.to_biguint().ok_or_else(|| Error::invalid("negative coefficient")))
        .collect::<Result<Vec<_>>>()?;
    growth_estimate(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(k: &AsymptoticConstants, name: &str, value: f64, tol: f64) {
        let v = k.value(name).unwrap();
        assert!((v - value).abs() < tol, "{name}: {v} vs {value}");
    }

    #[test]
    fn two_sided_values() {
        let k = constants(WalkClass::TwoSided).unwrap();
        check(&k, "rho", 0.403_031_716_762_684_8, 1e-25);
        check(&k, "mu", 2.481_194_304_092_015_5, 1e-14);
        check(&k, "kappa", 2.51, 0.01);
        check(&k, "drift_sum", 0.63, 0.01);
        check(&k, "variance_sum", 0.49, 0.005);
        check(&k, "variance_diff", 5.17, 0.01);
        check(&k, "ne_distance_mean", 4.156_325_174_658_662, 1e-14);
        let rho = &k.get("rho").unwrap().value;
        assert!(eval_poly_interval(&rat_poly(&[1, -2, -2, 2]), rho).contains_zero());
        let prod = rho * &k.get("mu").unwrap().value;
        assert!(prod.contains(&Rat::from_integer(1.into())));
    }

    #[test]
    fn three_sided_values() {
        let k = constants(WalkClass::ThreeSided).unwrap();
        assert_eq!(k.get("rho").unwrap().value, constants(WalkClass::TwoSided).unwrap().get("rho").unwrap().value);
        check(&k, "width_drift", 0.31, 0.01);
        assert_eq!(k.get("kappa").unwrap().provenance, Provenance::Empirical);
        let kappa = &k.get("kappa").unwrap().value;
        assert!((kappa.to_f64() - 6.18).abs() < 0.05 && kappa.radius() < 0.05, "{kappa}");
    }

    #[test]
    fn triangular_values() {
        let k = constants(WalkClass::Triangular).unwrap();
        check(&k, "mu", (3.0 + 17f64.sqrt()) / 2.0, 1e-12);
        check(&k, "box_drift", 0.6213, 5e-5);
        let kappa = &k.get("kappa").unwrap().value;
        assert!(kappa.to_f64() > 18.7 && kappa.to_f64() < 19.0 && kappa.radius() < 0.1, "{kappa}");
        let (rho, t0, tc) = (k.value("rho").unwrap(), k.value("t_0").unwrap(), k.value("t_c").unwrap());
        assert!(rho < t0 && t0 < tc);
        assert!((t0 - 0.288).abs() < 1e-3 && (tc - 0.2956).abs() < 1e-4);
    }

    #[test]
    fn unsupported_classes() {
        assert!(matches!(constants(WalkClass::Prudent4), Err(Error::NotAvailable(_))));
    }

    #[test]
    fn growth_of_geometric_input() {
        let c: Vec<BigUint> = (0..25).map(|n| BigUint::from(3u32).pow(n)).collect();
        assert_eq!(growth_estimate(&c).unwrap().mu_hat, 3.0);
        assert!(growth_estimate(&c[..19]).is_err());
    }

    #[test]
    fn growth_of_two_sided() {
        let g = growth_estimate_for(WalkClass::TwoSided, 120).unwrap();
        assert!((g.mu_hat / 2.48119430409 - 1.0).abs() < 0.01);
    }
}

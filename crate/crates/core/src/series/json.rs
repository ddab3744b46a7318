use serde::{Deserialize, Serialize};

use super::coeff::{rat_from_str, rat_to_string, Coeff, Rat};
use super::cpoly::{CPoly, Mono, ONE_MONO};
use super::tseries::TSeries;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub u: i32,
    pub v: i32,
    pub w: i32,
    pub z: i32,
    pub coeffs: Vec<String>,
}

impl SeriesJson {
    pub fn from_cpoly<C: Coeff>(p: &CPoly<C>) -> Self {
        let terms = p
            .terms()
            .into_iter()
            .map(|(m, s)| TermJson {
                u: m[0],
                v: m[1],
                w: m[2],
                z: m[3],
                coeffs: s.coeffs().iter().map(|c| rat_to_string(&c.to_rat())).collect(),
            })
            .collect();
        SeriesJson { order: p.order(), terms }
    }

    pub fn from_tseries<C: Coeff>(s: &TSeries<C>) -> Self {
        Self::from_cpoly(&CPoly::from_tseries(s))
    }

    pub fn to_cpoly(&self) -> Result<CPoly<Rat>> {
        let mut p = CPoly::zero(self.order);
        for t in &self.terms {
            if t.u < 0 || t.v < 0 || t.w < 0 {
                return Err(Error::Parse("negative exponent of u, v or w".into()));
            }
            if t.coeffs.len() > self.order + 1 {
                return Err(Error::Parse("more coefficients than the order allows".into()));
            }
            let m: Mono = [t.u, t.v, t.w, t.z];
            for (n, c) in t.coeffs.iter().enumerate() {
                let r = rat_from_str(c).ok_or_else(|| Error::Parse(format!("bad rational {c:?}")))?;
                p.add_term(n, m, r);
            }
        }
        Ok(p)
    }

    pub fn to_tseries(&self) -> Result<TSeries<Rat>> {
        let p = self.to_cpoly()?;
        if self.terms.iter().any(|t| [t.u, t.v, t.w, t.z] != ONE_MONO) {
            return Err(Error::Parse("series depends on catalytic variables".into()));
        }
        Ok(p.coefficient(&ONE_MONO))
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("series json")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Int;

    #[test]
    fn round_trip() {
        let mut p = CPoly::<Int>::zero(3);
        p.add_term(1, [1, 0, 0, -2], Int::from(-7));
        p.add_term(3, ONE_MONO, Int::from(2));
        let j = SeriesJson::from_cpoly(&p);
        let text = j.to_string_pretty();
        assert!(text.contains("\"-7\""));
        let back = SeriesJson::parse(&text).unwrap().to_cpoly().unwrap();
        assert_eq!(back.to_int().unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(SeriesJson::parse("{\"order\":1}").is_err());
        let bad = SeriesJson { order: 1, terms: vec![TermJson { u: 0, v: 0, w: 0, z: 0, coeffs: vec!["x".into()] }] };
        assert!(bad.to_cpoly().is_err());
    }
}

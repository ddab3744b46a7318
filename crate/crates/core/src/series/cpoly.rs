use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::coeff::{Coeff, Int, Rat};
use super::tseries::TSeries;
use crate::error::{Error, Result};

/// Exponents of `(u, v, w, z)`. Only `z` may be negative.
pub type Mono = [i32; 4];

pub const ONE_MONO: Mono = [0; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U = 0,
    V = 1,
    W = 2,
    Z = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::U, Var::V, Var::W, Var::Z];

    pub fn idx(self) -> usize {
        self as usize
    }

    pub fn mono(self, e: i32) -> Mono {
        let mut m = ONE_MONO;
        m[self.idx()] = e;
        m
    }
}

/// Value substituted for a catalytic variable.
#[derive(Clone, Debug, PartialEq)]
pub enum Image<C: Coeff> {
    Zero,
    One,
    /// `coeff * t^t_pow * u^a v^b w^c z^d`.
    Mono {
        coeff: C,
        t_pow: usize,
        exps: Mono,
    },
    /// A series in `t` alone.
    Series(TSeries<C>),
    /// A series in `t` times a variable, e.g. `u * q(t)^i`.
    SeriesVar(TSeries<C>, Var),
}

impl<C: Coeff> Image<C> {
    /// `t^t_pow * var`.
    pub fn t_var(t_pow: usize, var: Var) -> Self {
        Image::Mono { coeff: C::one(), t_pow, exps: var.mono(1) }
    }

    /// `t^t_pow`.
    pub fn t_pow(t_pow: usize) -> Self {
        Image::Mono { coeff: C::one(), t_pow, exps: ONE_MONO }
    }

    /// A bare variable (renaming).
    pub fn var(var: Var) -> Self {
        Self::t_var(0, var)
    }
}

type Slice<C> = FxHashMap<Mono, C>;

/// Polynomial (Laurent in `z`) in the catalytic variables with coefficients
/// in `t`, truncated modulo `t^(order+1)`.
///
/// Terms are stored graded by `t`-degree: `slices[n]` holds the polynomial
/// multiplying `t^n`. No stored coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct CPoly<C> {
    order: usize,
    slices: Vec<Slice<C>>,
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn mono_scale(a: &Mono, e: i32) -> Mono {
    [a[0] * e, a[1] * e, a[2] * e, a[3] * e]
}

fn add_into<C: Coeff>(slice: &mut Slice<C>, m: Mono, c: &C) {
    if c.is_zero() {
        return;
    }
    match slice.get_mut(&m) {
        Some(x) => {
            x.add_assign_ref(c);
            if x.is_zero() {
                slice.remove(&m);
            }
        }
        None => {
            slice.insert(m, c.clone());
        }
    }
}

fn add_into_owned<C: Coeff>(slice: &mut Slice<C>, m: Mono, c: C) {
    if c.is_zero() {
        return;
    }
    match slice.get_mut(&m) {
        Some(x) => {
            x.add_assign_ref(&c);
            if x.is_zero() {
                slice.remove(&m);
            }
        }
        None => {
            slice.insert(m, c);
        }
    }
}

fn mul_slices<C: Coeff>(a: &Slice<C>, b: &Slice<C>, out: &mut Slice<C>) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_into_owned(out, mono_add(ma, mb), ca.mul_ref(cb));
        }
    }
}

fn pow_coeff<C: Coeff>(c: &C, e: i32) -> Option<C> {
    let base = if e < 0 { c.try_inverse()? } else { c.clone() };
    let mut out = C::one();
    for _ in 0..e.unsigned_abs() {
        out = out.mul_ref(&base);
    }
    Some(out)
}

impl<C: Coeff> CPoly<C> {
    pub fn zero(order: usize) -> Self {
        CPoly { order, slices: (0..=order).map(|_| Slice::default()).collect() }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, C::one(), 0, ONE_MONO)
    }

    /// `c * t^t_pow * mono`.
    pub fn monomial(order: usize, c: C, t_pow: usize, mono: Mono) -> Self {
        let mut p = Self::zero(order);
        p.add_term(t_pow, mono, c);
        p
    }

    pub fn var(order: usize, var: Var) -> Self {
        Self::monomial(order, C::one(), 0, var.mono(1))
    }

    pub fn from_tseries(s: &TSeries<C>) -> Self {
        Self::from_series_mono(s, ONE_MONO)
    }

    /// `s(t) * mono`.
    pub fn from_series_mono(s: &TSeries<C>, mono: Mono) -> Self {
        let mut p = Self::zero(s.order());
        for (n, c) in s.coeffs().iter().enumerate() {
            p.add_term(n, mono, c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, TSeries<C>)>>(order: usize, terms: I) -> Self {
        let mut p = Self::zero(order);
        for (m, s) in terms {
            for (n, c) in s.coeffs().iter().enumerate().take(order + 1) {
                p.add_term(n, m, c.clone());
            }
        }
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn slice(&self, n: usize) -> impl Iterator<Item = (&Mono, &C)> {
        self.slices.get(n).into_iter().flat_map(|s| s.iter())
    }

    pub fn slice_len(&self, n: usize) -> usize {
        self.slices.get(n).map_or(0, |s| s.len())
    }

    pub fn num_terms(&self) -> usize {
        self.slices.iter().map(|s| s.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|s| s.is_empty())
    }

    /// Adds `c * t^n * mono`, dropping it above the order.
    pub fn add_term(&mut self, n: usize, mono: Mono, c: C) {
        if n <= self.order {
            add_into_owned(&mut self.slices[n], mono, c);
        }
    }

    pub fn term(&self, n: usize, mono: &Mono) -> C {
        self.slices.get(n).and_then(|s| s.get(mono)).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient series of a monomial.
    pub fn coefficient(&self, mono: &Mono) -> TSeries<C> {
        TSeries::new(self.order, (0..=self.order).map(|n| self.term(n, mono)).collect())
    }

    /// All `(monomial, series)` pairs, sorted by monomial.
    pub fn terms(&self) -> BTreeMap<Mono, TSeries<C>> {
        let mut out: BTreeMap<Mono, TSeries<C>> = BTreeMap::new();
        for (n, s) in self.slices.iter().enumerate() {
            for (m, c) in s {
                out.entry(*m).or_insert_with(|| TSeries::zero(self.order)).set_coeff(n, c.clone());
            }
        }
        out
    }

    /// Only the `t^n` component.
    pub fn graded_part(&self, n: usize) -> Self {
        let mut p = Self::zero(self.order);
        if n <= self.order {
            p.slices[n] = self.slices[n].clone();
        }
        p
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        CPoly { order, slices: self.slices[..=order].to_vec() }
    }

    /// Keeps only terms for which `keep(t_degree, mono)` holds.
    pub fn retain(&mut self, mut keep: impl FnMut(usize, &Mono) -> bool) {
        for (n, s) in self.slices.iter_mut().enumerate() {
            s.retain(|m, _| keep(n, m));
        }
    }

    /// Largest exponent of `var` over all terms.
    pub fn degree_in(&self, var: Var) -> Option<i32> {
        self.slices.iter().flat_map(|s| s.keys()).map(|m| m[var.idx()]).max()
    }

    pub fn lowest_degree_in(&self, var: Var) -> Option<i32> {
        self.slices.iter().flat_map(|s| s.keys()).map(|m| m[var.idx()]).min()
    }

    pub fn add_poly(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = self.truncate(order);
        for n in 0..=order {
            for (m, c) in &o.slices[n] {
                add_into(&mut out.slices[n], *m, c);
            }
        }
        out
    }

    pub fn add_assign_poly(&mut self, o: &Self) {
        if o.order < self.order {
            *self = self.truncate(o.order);
        }
        for n in 0..=self.order {
            for (m, c) in &o.slices[n] {
                add_into(&mut self.slices[n], *m, c);
            }
        }
    }

    pub fn sub_poly(&self, o: &Self) -> Self {
        self.add_poly(&o.neg_poly())
    }

    pub fn neg_poly(&self) -> Self {
        self.scale(&C::one().neg_ref())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.order);
        if c.is_zero() {
            return out;
        }
        for (n, s) in self.slices.iter().enumerate() {
            out.slices[n] = s.iter().map(|(m, x)| (*m, x.mul_ref(c))).collect();
        }
        out
    }

    /// Multiplication by `c * t^t_pow * mono`.
    pub fn mul_mono(&self, c: &C, t_pow: usize, mono: &Mono) -> Self {
        let mut out = Self::zero(self.order);
        if c.is_zero() {
            return out;
        }
        for n in 0..=self.order {
            if n + t_pow > self.order {
                break;
            }
            out.slices[n + t_pow] = self.slices[n].iter().map(|(m, x)| (mono_add(m, mono), x.mul_ref(c))).collect();
        }
        out
    }

    /// Multiplication by `t^k * mono`.
    pub fn shift(&self, t_pow: usize, mono: &Mono) -> Self {
        self.mul_mono(&C::one(), t_pow, mono)
    }

    /// Exact division by `t^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::invalid("shift exceeds truncation order"));
        }
        if self.slices[..k].iter().any(|s| !s.is_empty()) {
            return Err(Error::invalid(format!("polynomial not divisible by t^{k}")));
        }
        Ok(CPoly { order: self.order - k, slices: self.slices[k..].to_vec() })
    }

    pub fn mul_series(&self, s: &TSeries<C>) -> Self {
        let order = self.order.min(s.order());
        let mut out = Self::zero(order);
        for (k, c) in s.coeffs().iter().enumerate().take(order + 1) {
            if c.is_zero() {
                continue;
            }
            for n in 0..=order - k {
                for (m, x) in &self.slices[n] {
                    add_into_owned(&mut out.slices[n + k], *m, x.mul_ref(c));
                }
            }
        }
        out
    }

    pub fn mul_poly(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.slices[i].is_empty() {
                continue;
            }
            for j in 0..=order - i {
                if o.slices[j].is_empty() {
                    continue;
                }
                let mut acc = std::mem::take(&mut out.slices[i + j]);
                mul_slices(&self.slices[i], &o.slices[j], &mut acc);
                out.slices[i + j] = acc;
            }
        }
        out
    }

    /// `self / (1 - c * t^t_pow * mono)` expanded as a geometric series;
    /// requires `t_pow >= 1`.
    pub fn mul_geometric(&self, c: &C, t_pow: usize, mono: &Mono) -> Result<Self> {
        if t_pow == 0 {
            return Err(Error::invalid("geometric ratio must have positive t-valuation"));
        }
        let mut out = self.clone();
        let mut cur = self.clone();
        loop {
            cur = cur.mul_mono(c, t_pow, mono);
            if cur.is_zero() {
                return Ok(out);
            }
            out.add_assign_poly(&cur);
        }
    }

    /// Inverse of a polynomial whose `t^0` part is a single unit monomial
    /// (only `z` may appear in it).
    pub fn inv(&self) -> Result<Self> {
        let lead = &self.slices[0];
        if lead.len() != 1 {
            return Err(Error::invalid("inverse needs a single monomial as t^0 part"));
        }
        let (m0, c0) = lead.iter().next().map(|(m, c)| (*m, c.clone())).unwrap();
        if m0[..3].iter().any(|&e| e != 0) {
            return Err(Error::invalid("leading monomial may only involve z"));
        }
        let c0inv = c0.try_inverse().ok_or_else(|| Error::invalid("leading coefficient is not a unit"))?;
        let m0inv = mono_scale(&m0, -1);
        // self = c0 m0 (1 + g); 1/(1+g) is built degree by degree.
        let g = self.mul_mono(&c0inv, 0, &m0inv);
        let mut h = Self::zero(self.order);
        h.slices[0].insert(ONE_MONO, C::one());
        for n in 1..=self.order {
            let mut acc = Slice::default();
            for k in 1..=n {
                mul_slices(&g.slices[k], &h.slices[n - k], &mut acc);
            }
            h.slices[n] = acc.into_iter().map(|(m, c)| (m, c.neg_ref())).collect();
        }
        Ok(h.mul_mono(&c0inv, 0, &m0inv))
    }

    /// Square root of a polynomial with `t^0` part equal to 1.
    pub fn sqrt(&self) -> Result<Self> {
        let lead = &self.slices[0];
        if lead.len() != 1 || !lead.get(&ONE_MONO).is_some_and(C::is_one) {
            return Err(Error::invalid("square root needs t^0 part equal to 1"));
        }
        let mut r = Self::zero(self.order);
        r.slices[0].insert(ONE_MONO, C::one());
        for n in 1..=self.order {
            let mut acc = Slice::default();
            for k in 1..n {
                mul_slices(&r.slices[k], &r.slices[n - k], &mut acc);
            }
            let mut slice = Slice::default();
            for (m, c) in &self.slices[n] {
                add_into(&mut slice, *m, c);
            }
            for (m, c) in acc {
                add_into_owned(&mut slice, m, c.neg_ref());
            }
            r.slices[n] = slice
                .into_iter()
                .map(|(m, c)| {
                    c.try_half()
                        .map(|h| (m, h))
                        .ok_or_else(|| Error::NonIntegral("square root leaves the coefficient ring".into()))
                })
                .collect::<Result<_>>()?;
        }
        Ok(r)
    }

    /// Substitutes `image` for `var`.
    pub fn substitute(&self, var: Var, image: &Image<C>) -> Result<Self> {
        self.substitute_many(&[(var, image.clone())])
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_many(&self, subs: &[(Var, Image<C>)]) -> Result<Self> {
        for (i, (a, _)) in subs.iter().enumerate() {
            if subs[..i].iter().any(|(b, _)| b == a) {
                return Err(Error::invalid(format!("variable {a:?} substituted twice")));
            }
        }
        let order = self.order;
        let mut out = Self::zero(order);
        let mut powers: FxHashMap<(usize, i32), TSeries<C>> = FxHashMap::default();
        for (d, slice) in self.slices.iter().enumerate() {
            'terms: for (m, c) in slice {
                let mut newm = *m;
                for (v, _) in subs {
                    newm[v.idx()] = 0;
                }
                let mut shift = d;
                let mut coef = c.clone();
                let mut series: Option<TSeries<C>> = None;
                for (si, (v, img)) in subs.iter().enumerate() {
                    let e = m[v.idx()];
                    if e == 0 {
                        continue;
                    }
                    match img {
                        Image::Zero => {
                            if e < 0 {
                                return Err(Error::invalid("zero substituted for a negative power"));
                            }
                            continue 'terms;
                        }
                        Image::One => {}
                        Image::Mono { coeff, t_pow, exps } => {
                            if e < 0 && *t_pow != 0 {
                                return Err(Error::invalid("negative power of an image with t-valuation"));
                            }
                            coef = coef.mul_ref(
                                &pow_coeff(coeff, e)
                                    .ok_or_else(|| Error::invalid("image coefficient not invertible"))?,
                            );
                            shift += t_pow * e.max(0) as usize;
                            newm = mono_add(&newm, &mono_scale(exps, e));
                        }
                        Image::Series(s) | Image::SeriesVar(s, _) => {
                            if e < 0 {
                                return Err(Error::invalid("series substituted for a negative power"));
                            }
                            if let Image::SeriesVar(_, w) = img {
                                newm[w.idx()] += e;
                            }
                            if shift > order {
                                continue 'terms;
                            }
                            let p = series_power(&mut powers, si, s, e, order);
                            series = Some(match series {
                                None => p,
                                Some(acc) => acc.mul_series(&p),
                            });
                        }
                    }
                    if shift > order {
                        continue 'terms;
                    }
                }
                if newm[..3].iter().any(|&e| e < 0) {
                    return Err(Error::invalid("substitution produced a negative power of u, v or w"));
                }
                match series {
                    None => out.add_term(shift, newm, coef),
                    Some(s) => {
                        for (k, x) in s.coeffs().iter().enumerate() {
                            if shift + k > order {
                                break;
                            }
                            if !x.is_zero() {
                                out.add_term(shift + k, newm, x.mul_ref(&coef));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(f - f[var := r]) / (var - r)` computed monomial-wise through
    /// `var^i -> sum_{k<i} var^(i-1-k) r^k`. The replacement must be `0`, `1`
    /// or a monomial not involving `var`.
    pub fn divided_difference(&self, var: Var, replacement: &Image<C>) -> Result<Self> {
        let (rc, rt, rm) = match replacement {
            Image::Zero => (C::zero(), 0, ONE_MONO),
            Image::One => (C::one(), 0, ONE_MONO),
            Image::Mono { coeff, t_pow, exps } => {
                if exps[var.idx()] != 0 {
                    return Err(Error::invalid("replacement may not involve the variable itself"));
                }
                (coeff.clone(), *t_pow, *exps)
            }
            _ => return Err(Error::invalid("divided difference needs a monomial replacement")),
        };
        let vi = var.idx();
        let mut out = Self::zero(self.order);
        for (d, slice) in self.slices.iter().enumerate() {
            for (m, c) in slice {
                let e = m[vi];
                if e < 0 {
                    return Err(Error::invalid("divided difference of a negative power"));
                }
                let mut coef = c.clone();
                let mut mono = *m;
                mono[vi] = e - 1;
                let mut shift = d;
                for k in 0..e {
                    if shift > self.order {
                        break;
                    }
                    if k > 0 {
                        if rc.is_zero() {
                            break;
                        }
                        coef = coef.mul_ref(&rc);
                        shift += rt;
                        mono = mono_add(&mono, &rm);
                        mono[vi] -= 1;
                        if shift > self.order {
                            break;
                        }
                    }
                    out.add_term(shift, mono, coef.clone());
                }
            }
        }
        Ok(out)
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        let mut out = Self::zero(self.order);
        for (n, s) in self.slices.iter().enumerate() {
            out.slices[n] = s
                .iter()
                .map(|(m, c)| {
                    let mut m2 = *m;
                    m2.swap(a.idx(), b.idx());
                    (m2, c.clone())
                })
                .collect();
        }
        out
    }

    /// Specialization at `u = v = w = z = 1`.
    pub fn at_one(&self) -> TSeries<C> {
        TSeries::new(
            self.order,
            self.slices
                .iter()
                .map(|s| {
                    let mut acc = C::zero();
                    for c in s.values() {
                        acc.add_assign_ref(c);
                    }
                    acc
                })
                .collect(),
        )
    }

    /// The series in `t`, if no catalytic variable occurs.
    pub fn to_tseries(&self) -> Result<TSeries<C>> {
        if self.slices.iter().flat_map(|s| s.keys()).any(|m| *m != ONE_MONO) {
            return Err(Error::invalid("polynomial still depends on catalytic variables"));
        }
        Ok(self.coefficient(&ONE_MONO))
    }

    /// Checks the structural bound `i + j + h <= n` on every term `t^n u^i v^j w^h`.
    pub fn satisfies_degree_bound(&self) -> bool {
        self.slices.iter().enumerate().all(|(n, s)| s.keys().all(|m| (m[0] + m[1] + m[2]) as usize <= n))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> CPoly<D> {
        let mut out = CPoly::zero(self.order);
        for (n, s) in self.slices.iter().enumerate() {
            for (m, c) in s {
                out.add_term(n, *m, f(c));
            }
        }
        out
    }

    pub fn to_rat(&self) -> CPoly<Rat> {
        self.map_coeffs(C::to_rat)
    }
}

impl CPoly<Rat> {
    pub fn to_int(&self) -> Result<CPoly<Int>> {
        let mut out = CPoly::zero(self.order);
        for (n, s) in self.slices.iter().enumerate() {
            for (m, c) in s {
                let v =
                    Int::try_from_rat(c).ok_or_else(|| Error::NonIntegral(format!("t^{n} {m:?} coefficient {c}")))?;
                out.add_term(n, *m, v);
            }
        }
        Ok(out)
    }
}

fn series_power<C: Coeff>(
    cache: &mut FxHashMap<(usize, i32), TSeries<C>>,
    key: usize,
    s: &TSeries<C>,
    e: i32,
    order: usize,
) -> TSeries<C> {
    if let Some(p) = cache.get(&(key, e)) {
        return p.clone();
    }
    let mut k = e - 1;
    while k > 0 && !cache.contains_key(&(key, k)) {
        k -= 1;
    }
    let mut acc = if k == 0 { TSeries::one(order.min(s.order())) } else { cache[&(key, k)].clone() };
    for j in k + 1..=e {
        acc = acc.mul_series(s);
        cache.insert((key, j), acc.clone());
    }
    acc
}

impl<C: Coeff> fmt::Debug for CPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly(order {}) {{", self.order)?;
        for (n, s) in self.slices.iter().enumerate() {
            let mut items: Vec<_> = s.iter().collect();
            items.sort_by(|a, b| a.0.cmp(b.0));
            for (m, c) in items {
                write!(f, " ({c})t^{n}{m:?}")?;
            }
        }
        write!(f, " }}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<C: Coeff> $tr<&CPoly<C>> for &CPoly<C> {
            type Output = CPoly<C>;
            fn $m(self, o: &CPoly<C>) -> CPoly<C> {
                self.$imp(o)
            }
        }
        impl<C: Coeff> $tr<CPoly<C>> for CPoly<C> {
            type Output = CPoly<C>;
            fn $m(self, o: CPoly<C>) -> CPoly<C> {
                self.$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_poly);
forward_binop!(Sub, sub, sub_poly);
forward_binop!(Mul, mul, mul_poly);

impl<C: Coeff> Neg for &CPoly<C> {
    type Output = CPoly<C>;
    fn neg(self) -> CPoly<C> {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = CPoly<Int>;
    const U: Var = Var::U;
    const V: Var = Var::V;

    fn i(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn substitute_zero_and_tv() {
        let a = P::monomial(6, i(3), 1, [1, 0, 0, 0]);
        let b = P::monomial(6, i(5), 2, [0, 1, 0, 0]);
        let f = &a + &b;
        assert_eq!(f.substitute(U, &Image::Zero).unwrap(), b);
        let g = P::monomial(6, i(7), 1, [2, 0, 0, 0]);
        let h = g.substitute(U, &Image::t_var(1, V)).unwrap();
        assert_eq!(h, P::monomial(6, i(7), 3, [0, 2, 0, 0]));
    }

    #[test]
    fn substitution_drops_high_orders() {
        let g = P::monomial(3, i(1), 1, [3, 0, 0, 0]);
        assert!(g.substitute(U, &Image::t_pow(1)).unwrap().is_zero());
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let f = P::monomial(4, i(1), 0, [2, 1, 0, 0]);
        let g = f.substitute_many(&[(U, Image::var(V)), (V, Image::var(U))]).unwrap();
        assert_eq!(g, P::monomial(4, i(1), 0, [1, 2, 0, 0]));
        assert!(f.substitute_many(&[(U, Image::One), (U, Image::Zero)]).is_err());
    }

    #[test]
    fn unsupported_images_error() {
        let f = P::monomial(4, i(1), 0, [0, 0, 0, -1]);
        assert!(f.substitute(Var::Z, &Image::Zero).is_err());
        assert!(f.substitute(Var::Z, &Image::t_pow(1)).is_err());
        let z = f.substitute(Var::Z, &Image::Mono { coeff: i(1), t_pow: 0, exps: [0, 0, 0, -1] }).unwrap();
        assert_eq!(z, P::monomial(4, i(1), 0, [0, 0, 0, 1]));
        let g = P::var(4, U);
        assert!(g.substitute(U, &Image::var(Var::Z).clone()).is_ok());
        assert!(g.substitute(U, &Image::Mono { coeff: i(1), t_pow: 0, exps: [0, -1, 0, 0] }).is_err());
    }

    #[test]
    fn divided_differences() {
        let u2 = P::monomial(5, i(1), 0, [2, 0, 0, 0]);
        let d = u2.divided_difference(U, &Image::t_var(1, V)).unwrap();
        assert_eq!(d, &P::var(5, U) + &P::monomial(5, i(1), 1, [0, 1, 0, 0]));
        let c = P::one(5);
        assert!(c.divided_difference(U, &Image::t_var(1, V)).unwrap().is_zero());
        assert!(u2.divided_difference(U, &Image::var(U)).is_err());
    }

    #[test]
    fn geometric_prefactor() {
        let g = P::one(4).mul_geometric(&i(1), 1, &[1, 0, 0, 0]).unwrap();
        for n in 0..=4 {
            assert_eq!(g.term(n, &[n as i32, 0, 0, 0]), i(1));
        }
        assert_eq!(g.num_terms(), 5);
    }

    #[test]
    fn inverse_with_laurent_lead() {
        // (z - t u) has t^0 part z.
        let f = &P::var(5, Var::Z) - &P::monomial(5, i(1), 1, [1, 0, 0, 0]);
        let inv = f.inv().unwrap();
        assert_eq!(&f * &inv, P::one(5));
        assert_eq!(inv.term(2, &[2, 0, 0, -3]), i(1));
    }

    #[test]
    fn at_one_sums() {
        let f = &P::monomial(3, i(2), 1, [1, 0, 0, 0]) + &P::monomial(3, i(3), 1, [0, 0, 0, -1]);
        assert_eq!(f.at_one(), TSeries::from_i64s(3, &[0, 5]));
    }

    #[test]
    fn series_substitution() {
        let w2 = P::monomial(6, i(1), 0, [0, 0, 2, 0]);
        let q = TSeries::from_i64s(6, &[0, 1, 1]);
        let r = w2.substitute(Var::W, &Image::Series(q.clone())).unwrap();
        assert_eq!(r.to_tseries().unwrap(), q.pow(2));
        let r2 = w2.substitute(Var::W, &Image::SeriesVar(q.clone(), U)).unwrap();
        assert_eq!(r2.coefficient(&[2, 0, 0, 0]), q.pow(2));
    }
}

//! Differential superpolynomial algebras.
//!
//! A [`SuperPoly`] is a supercommutative polynomial in differential variables
//! with [`Scalar`] coefficients. Variables come in two flavors: with an even
//! derivation `∂` (`u^{(m)} = ∂^m u`, parity of `u`) or with an odd derivation
//! `D` (`u^{[m]} = D^m u`, parity `p(u) + m`, and `∂ = D²`).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{rat_int, Rat, Scalar};

/// What a variable stands for. Each family has a fixed derivation flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Affine generators `a ∈ g`.
    Affine,
    /// Classical W-algebra generators `ω(q_j)`.
    AffineGen,
    /// Generators of the λ-bracket algebra obtained from a SUSY algebra
    /// (`u` at even positions, `Du` at odd ones).
    Reduced,
    /// SUSY affine generators `ā`.
    Susy,
    /// SUSY W-algebra generators.
    SusyGen,
    /// BRST currents `j_ā`.
    Current,
    /// Charged ghosts `φ_a`, `a ∈ n`.
    Ghost,
    /// Charged ghosts `φ^ā`, `a ∈ n_-`.
    GhostBar,
    /// BRST building blocks `J_ā`.
    Block,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Even derivation `∂`.
    Even,
    /// Odd derivation `D` with `D² = ∂`.
    Odd,
}

impl Family {
    pub fn flavor(self) -> Flavor {
        match self {
            Family::Affine | Family::AffineGen | Family::Reduced => Flavor::Even,
            _ => Flavor::Odd,
        }
    }
}

/// A differential variable `D^order x` or `∂^order x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub family: Family,
    pub index: u32,
    pub order: u32,
    /// Parity of the underlying generator (order 0).
    pub base_odd: bool,
}

impl Var {
    pub fn gen(family: Family, index: usize, base_odd: bool) -> Var {
        Var { family, index: index as u32, order: 0, base_odd }
    }
    pub fn with_order(self, order: u32) -> Var {
        Var { order, ..self }
    }
    pub fn base(self) -> Var {
        self.with_order(0)
    }
    pub fn flavor(&self) -> Flavor {
        self.family.flavor()
    }
    pub fn is_odd(&self) -> bool {
        match self.flavor() {
            Flavor::Even => self.base_odd,
            Flavor::Odd => self.base_odd ^ (self.order % 2 == 1),
        }
    }
}

/// A canonical monomial: factors sorted by variable, odd variables to power 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Mono(pub Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }
    pub fn var(v: Var) -> Mono {
        Mono(vec![(v, 1)])
    }
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|(v, _)| v.is_odd()).count() % 2 == 1
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }
    pub fn contains(&self, v: &Var) -> bool {
        self.0.iter().any(|(x, _)| x == v)
    }

    /// Product in canonical order; `None` if an odd variable repeats.
    /// The flag is `true` when the Koszul sign is negative.
    pub fn mul(&self, o: &Mono) -> Option<(bool, Mono)> {
        let mut neg = false;
        for (y, _) in o.0.iter().filter(|(y, _)| y.is_odd()) {
            let greater = self.0.iter().filter(|(x, _)| x.is_odd() && x > y).count();
            if greater % 2 == 1 {
                neg = !neg;
            }
        }
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            if j == o.0.len() || (i < self.0.len() && self.0[i].0 < o.0[j].0) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || o.0[j].0 < self.0[i].0 {
                out.push(o.0[j]);
                j += 1;
            } else {
                if self.0[i].0.is_odd() {
                    return None;
                }
                out.push((self.0[i].0, self.0[i].1 + o.0[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((neg, Mono(out)))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot multiply polynomials of different derivation flavors")]
    MixedFlavor,
    #[error("substitution changes the parity of {0:?}")]
    ParityMismatch(Var),
    #[error("D is not defined on the ∂-flavored variable {0:?}")]
    WrongFlavor(Var),
}

/// A differential superpolynomial in canonical form (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SuperPoly {
    terms: BTreeMap<Mono, Scalar>,
}

impl SuperPoly {
    pub fn zero() -> Self {
        SuperPoly { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        SuperPoly::constant(Scalar::one())
    }
    pub fn constant(c: Scalar) -> Self {
        SuperPoly::term(Mono::one(), c)
    }
    pub fn var(v: Var) -> Self {
        SuperPoly::term(Mono::var(v), Scalar::one())
    }
    pub fn term(m: Mono, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SuperPoly { terms }
    }
    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }
    pub fn into_terms(self) -> BTreeMap<Mono, Scalar> {
        self.terms
    }
    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Scalar)>) -> Self {
        let mut p = SuperPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Mono::one()).cloned().unwrap_or_default()
    }
    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.keys().all(|m| m.is_one()) {
            Some(self.constant_term())
        } else {
            None
        }
    }
    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &SuperPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &o.terms {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero();
        }
        SuperPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Parity if homogeneous; zero is even.
    pub fn parity(&self) -> Option<bool> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = m.is_odd();
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(false))
    }

    /// Even and odd parts.
    pub fn split_parity(&self) -> (SuperPoly, SuperPoly) {
        let (mut e, mut o) = (SuperPoly::zero(), SuperPoly::zero());
        for (m, c) in &self.terms {
            if m.is_odd() {
                o.terms.insert(m.clone(), c.clone());
            } else {
                e.terms.insert(m.clone(), c.clone());
            }
        }
        (e, o)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn flavor(&self) -> Option<Flavor> {
        self.vars().iter().next().map(|v| v.flavor())
    }

    fn has_mixed_flavor(&self) -> bool {
        let vs = self.vars();
        let mut it = vs.iter().map(|v| v.flavor());
        match it.next() {
            Some(f) => it.any(|g| g != f),
            None => false,
        }
    }

    /// Product that rejects mixing `∂`- and `D`-flavored variables.
    pub fn checked_mul(&self, o: &SuperPoly) -> Result<SuperPoly, PolyError> {
        if let (Some(a), Some(b)) = (self.flavor(), o.flavor()) {
            if a != b || self.has_mixed_flavor() || o.has_mixed_flavor() {
                return Err(PolyError::MixedFlavor);
            }
        }
        Ok(self * o)
    }

    pub fn pow(&self, n: u32) -> SuperPoly {
        let mut out = SuperPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Applies the derivation of parity `odd` determined by its values on variables:
    /// `δ(x_1⋯x_r) = Σ (-1)^{p(δ)(p(x_1)+⋯+p(x_{i-1}))} x_1⋯δ(x_i)⋯x_r`.
    pub fn apply_derivation(&self, odd: bool, on_var: &mut impl FnMut(&Var) -> SuperPoly) -> SuperPoly {
        let mut cache: HashMap<Var, SuperPoly> = HashMap::new();
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            let mut prefix_odd = false;
            for (i, &(x, e)) in m.0.iter().enumerate() {
                let dx = cache.entry(x).or_insert_with(|| on_var(&x)).clone();
                if !dx.is_zero() {
                    let mut left = m.0[..i].to_vec();
                    if e > 1 {
                        left.push((x, e - 1));
                    }
                    let right = Mono(m.0[i + 1..].to_vec());
                    let mut coef = c * &Scalar::int(e as i64);
                    if odd && prefix_odd {
                        coef = -coef;
                    }
                    let piece = &(&SuperPoly::term(Mono(left), coef) * &dx) * &SuperPoly::term(right, Scalar::one());
                    out = &out + &piece;
                }
                if x.is_odd() && e % 2 == 1 {
                    prefix_odd = !prefix_odd;
                }
            }
        }
        out
    }

    /// The even derivation `∂` (which is `D²` on `D`-flavored variables).
    pub fn partial_t(&self) -> SuperPoly {
        self.apply_derivation(false, &mut |v| {
            let step = if v.flavor() == Flavor::Even { 1 } else { 2 };
            SuperPoly::var(v.with_order(v.order + step))
        })
    }

    /// `∂^n`.
    pub fn partial_t_n(&self, n: u32) -> SuperPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.partial_t();
        }
        p
    }

    /// The odd derivation `D`; fails on `∂`-flavored variables.
    pub fn try_super_d(&self) -> Result<SuperPoly, PolyError> {
        if let Some(v) = self.vars().into_iter().find(|v| v.flavor() == Flavor::Even) {
            return Err(PolyError::WrongFlavor(v));
        }
        Ok(self.apply_derivation(true, &mut |v| SuperPoly::var(v.with_order(v.order + 1))))
    }

    /// The odd derivation `D`. Panics on `∂`-flavored variables.
    pub fn super_d(&self) -> SuperPoly {
        self.try_super_d().expect("D applied to a ∂-flavored polynomial")
    }

    /// `D^n`.
    pub fn super_d_n(&self, n: u32) -> SuperPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.super_d();
        }
        p
    }

    /// The flavor's own derivation applied `n` times (`∂^n` or `D^n`).
    pub fn derive_n(&self, flavor: Flavor, n: u32) -> SuperPoly {
        match flavor {
            Flavor::Even => self.partial_t_n(n),
            Flavor::Odd => self.super_d_n(n),
        }
    }

    /// Left partial derivative `∂/∂v`, a derivation of parity `p(v)`.
    pub fn partial(&self, v: &Var) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            let Some(pos) = m.0.iter().position(|(x, _)| x == v) else { continue };
            let prefix_odd = m.0[..pos].iter().filter(|(x, e)| x.is_odd() && e % 2 == 1).count() % 2 == 1;
            let e = m.0[pos].1;
            let mut rest = m.0.clone();
            if e > 1 {
                rest[pos].1 = e - 1;
            } else {
                rest.remove(pos);
            }
            let mut coef = c * &Scalar::int(e as i64);
            if v.is_odd() && prefix_odd {
                coef = -coef;
            }
            out.add_term(Mono(rest), &coef);
        }
        out
    }

    /// Algebra homomorphism sending each variable `x` to `image(x)`
    /// (variables mapped to `None` stay).
    pub fn substitute(&self, image: &mut impl FnMut(&Var) -> Option<SuperPoly>) -> SuperPoly {
        let mut cache: HashMap<Var, Option<SuperPoly>> = HashMap::new();
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            for (x, _) in &m.0 {
                cache.entry(*x).or_insert_with(|| image(x));
            }
            if m.0.iter().all(|(x, _)| cache[x].is_none()) {
                out.add_term(m.clone(), c);
                continue;
            }
            let mut acc = SuperPoly::constant(c.clone());
            for (x, e) in &m.0 {
                let img = cache[x].clone().unwrap_or_else(|| SuperPoly::var(*x));
                for _ in 0..*e {
                    acc = &acc * &img;
                    if acc.is_zero() {
                        break;
                    }
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Differential homomorphism determined by images of generators:
    /// `x^{(m)} ↦ ∂^m image(x)` or `x^{[m]} ↦ D^m image(x)`.
    /// Images must preserve parity.
    pub fn substitute_gens(&self, image: &mut impl FnMut(&Var) -> Option<SuperPoly>) -> Result<SuperPoly, PolyError> {
        let mut base: HashMap<Var, Option<SuperPoly>> = HashMap::new();
        let mut err = None;
        let out = self.substitute(&mut |v: &Var| {
            let b = v.base();
            let img = base
                .entry(b)
                .or_insert_with(|| {
                    let img = image(&b);
                    if let Some(p) = &img {
                        if !p.is_zero() && p.parity() != Some(b.is_odd()) {
                            err = Some(PolyError::ParityMismatch(b));
                        }
                    }
                    img
                })
                .clone()?;
            Some(img.derive_n(v.flavor(), v.order))
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Maps every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> SuperPoly {
        SuperPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Specializes `k` and/or `c` in every coefficient.
    pub fn eval_scalars(&self, k: Option<&Scalar>, c: Option<&Scalar>) -> SuperPoly {
        self.map_coeffs(|x| x.eval(k, c))
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> SuperPoly {
        SuperPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Conformal weight of each monomial under `weight` (per variable, derivatives included).
    pub fn weights(&self, weight: &impl Fn(&Var) -> Rat) -> BTreeSet<Rat> {
        self.terms.keys().map(|m| mono_weight(m, weight)).collect()
    }

    /// The weight if every monomial has the same one.
    pub fn homogeneous_weight(&self, weight: &impl Fn(&Var) -> Rat) -> Option<Rat> {
        let w = self.weights(weight);
        if w.len() == 1 {
            w.into_iter().next()
        } else {
            None
        }
    }

    /// Drops every monomial of weight above `max`.
    pub fn truncate_weight(&self, max: &Rat, weight: &impl Fn(&Var) -> Rat) -> SuperPoly {
        self.filter(|m| mono_weight(m, weight) <= *max)
    }
}

pub fn mono_weight(m: &Mono, weight: &impl Fn(&Var) -> Rat) -> Rat {
    m.0.iter().fold(rat_int(0), |acc, (v, e)| acc + weight(v) * rat_int(*e as i64))
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, o: &SuperPoly) -> SuperPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}
impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, o: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}
impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        SuperPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}
impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, o: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, &if neg { -c } else { c });
                }
            }
        }
        out
    }
}
impl Add for SuperPoly {
    type Output = SuperPoly;
    fn add(self, o: SuperPoly) -> SuperPoly {
        &self + &o
    }
}
impl Sub for SuperPoly {
    type Output = SuperPoly;
    fn sub(self, o: SuperPoly) -> SuperPoly {
        &self - &o
    }
}
impl Mul for SuperPoly {
    type Output = SuperPoly;
    fn mul(self, o: SuperPoly) -> SuperPoly {
        &self * &o
    }
}
impl Neg for SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        -&self
    }
}
impl From<Scalar> for SuperPoly {
    fn from(c: Scalar) -> Self {
        SuperPoly::constant(c)
    }
}
impl From<Var> for SuperPoly {
    fn from(v: Var) -> Self {
        SuperPoly::var(v)
    }
}

/// Labels for generators, used when rendering.
pub trait Names {
    fn label(&self, family: Family, index: u32) -> String;
}

/// A fixed table of labels; unknown generators render as `family#index`.
#[derive(Clone, Debug, Default)]
pub struct NameTable {
    pub labels: HashMap<(Family, u32), String>,
}

impl NameTable {
    pub fn insert(&mut self, family: Family, index: usize, label: impl Into<String>) {
        self.labels.insert((family, index as u32), label.into());
    }
    pub fn merge(&mut self, other: &NameTable) {
        for (k, v) in &other.labels {
            self.labels.insert(*k, v.clone());
        }
    }
}

impl Names for NameTable {
    fn label(&self, family: Family, index: u32) -> String {
        self.labels.get(&(family, index)).cloned().unwrap_or_else(|| format!("{:?}#{}", family, index))
    }
}

pub fn render_var(v: &Var, names: &dyn Names) -> String {
    let l = names.label(v.family, v.index);
    let op = match v.flavor() {
        Flavor::Even => "∂",
        Flavor::Odd => "D",
    };
    match v.order {
        0 => l,
        1 => format!("{}{}", op, l),
        n => format!("{}^{}{}", op, n, l),
    }
}

pub fn render_mono(m: &Mono, names: &dyn Names) -> String {
    let mut parts = Vec::new();
    for (v, e) in &m.0 {
        let s = render_var(v, names);
        for _ in 0..*e {
            parts.push(s.clone());
        }
    }
    parts.join("·")
}

fn coeff_prefix(c: &Scalar) -> String {
    if let Some(g) = c.as_constant() {
        if g.is_real() && g.re.is_integer() {
            return format!("{}·", g.re);
        }
        return format!("({})", g);
    }
    if c.is_single_term() {
        let s = c.to_string();
        if s.ends_with(')') {
            s
        } else {
            format!("{}·", s)
        }
    } else {
        format!("({})", c)
    }
}

/// Canonical text form, e.g. `F + (1/2)k·∂H + (1/4)H·H`.
pub fn render(p: &SuperPoly, names: &dyn Names) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().enumerate() {
        let (neg, mag) = match c.terms() {
            [(_, g)] if g.is_real() && g.re < Rat::from_integer(0.into()) => (true, -c),
            [(_, g)] if g.re == Rat::from_integer(0.into()) && g.im < Rat::from_integer(0.into()) => (true, -c),
            _ => (false, c.clone()),
        };
        let body = if m.is_one() {
            if mag.is_single_term() {
                mag.to_string()
            } else {
                format!("({})", mag)
            }
        } else {
            let ms = render_mono(m, names);
            if mag.is_one() {
                ms
            } else {
                format!("{}{}", coeff_prefix(&mag), ms)
            }
        };
        if i == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Wrapper implementing `Display` with a name table.
pub struct Rendered<'a>(pub &'a SuperPoly, pub &'a dyn Names);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self.0, self.1))
    }
}

/// Serialized form: a list of `(coefficient, factors)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyRecord(pub Vec<(Scalar, Mono)>);

impl From<&SuperPoly> for PolyRecord {
    fn from(p: &SuperPoly) -> Self {
        PolyRecord(p.terms.iter().map(|(m, c)| (c.clone(), m.clone())).collect())
    }
}

impl PolyRecord {
    /// Rebuilds the polynomial, re-canonicalizing every monomial.
    pub fn to_poly(&self) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (c, m) in &self.0 {
            let mut acc = SuperPoly::constant(c.clone());
            for (v, e) in &m.0 {
                acc = &acc * &SuperPoly::var(*v).pow(*e);
            }
            out = &out + &acc;
        }
        out
    }
}

impl Serialize for SuperPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(PolyRecord::deserialize(d)?.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(i: usize) -> Var {
        Var::gen(Family::Affine, i, true)
    }
    fn even(i: usize) -> Var {
        Var::gen(Family::Affine, i, false)
    }
    fn sv(i: usize, base_odd: bool) -> Var {
        Var::gen(Family::Susy, i, base_odd)
    }
    fn p(v: Var) -> SuperPoly {
        SuperPoly::var(v)
    }

    #[test]
    fn odd_variables_anticommute_and_square_to_zero() {
        let (x, y) = (p(odd(0)), p(odd(1)));
        assert_eq!(&x * &y, -(&y * &x));
        assert!((&x * &x).is_zero());
        let a = p(even(2));
        assert_eq!(&a * &x, &x * &a);
    }

    #[test]
    fn partial_derivative_signs() {
        let (x, y) = (p(odd(0)), p(odd(1)));
        let xy = &x * &y;
        assert_eq!(xy.partial(&odd(1)), -x.clone());
        assert_eq!(xy.partial(&odd(0)), y);
        let a = p(even(2));
        let a3 = a.pow(3);
        assert_eq!(a3.partial(&even(2)), a.pow(2).scale(&Scalar::int(3)));
    }

    #[test]
    fn d_squares_to_partial() {
        let f = &(&p(sv(0, false)) * &p(sv(1, true))) + &p(sv(2, false)).pow(2);
        assert_eq!(f.super_d().super_d(), f.partial_t());
        assert!(p(even(0)).try_super_d().is_err());
    }

    #[test]
    fn d_is_an_odd_derivation() {
        let a = &p(sv(0, true)) + &p(sv(3, false).with_order(1));
        let b = p(sv(1, true));
        let lhs = (&a * &b).super_d();
        let rhs = &(&a.super_d() * &b) + &(&a * &b.super_d());
        // a is odd here, so the second term carries a minus sign
        let rhs_signed = &(&a.super_d() * &b) - &(&a * &b.super_d());
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs_signed);
    }

    #[test]
    fn commutator_of_partial_and_d() {
        // [∂/∂u^{[m]}, D] = ∂/∂u^{[m-1]}
        let u = sv(0, false);
        let w = sv(1, true);
        let f = &(&p(u.with_order(1)) * &p(w)) + &(&p(u).pow(2) * &p(w.with_order(2)));
        for m in 1..3u32 {
            let d_um = u.with_order(m);
            let lhs_a = f.super_d().partial(&d_um);
            // D and ∂/∂u^{[m]} have parities 1 and p(u)+m; graded commutator
            let sign = if d_um.is_odd() { Scalar::int(1) } else { Scalar::int(-1) };
            let lhs = &lhs_a + &f.partial(&d_um).super_d().scale(&sign);
            assert_eq!(lhs, f.partial(&u.with_order(m - 1)), "m = {}", m);
        }
    }

    #[test]
    fn substitution_is_differential() {
        let u = even(0);
        let f = &p(u.with_order(1)) * &p(u);
        let img = &p(even(1)) + &SuperPoly::constant(Scalar::k());
        let out = f.substitute_gens(&mut |v| if *v == u { Some(img.clone()) } else { None }).unwrap();
        assert_eq!(out, &img.partial_t() * &img);
        let bad = f.substitute_gens(&mut |v| if *v == u { Some(p(odd(3))) } else { None });
        assert!(matches!(bad, Err(PolyError::ParityMismatch(_))));
    }

    #[test]
    fn mixed_flavors_are_rejected() {
        assert_eq!(p(even(0)).checked_mul(&p(sv(0, false))), Err(PolyError::MixedFlavor));
    }

    #[test]
    fn serde_round_trip_and_render() {
        let mut names = NameTable::default();
        names.insert(Family::Affine, 0, "H");
        names.insert(Family::Affine, 1, "F");
        let h = Var::gen(Family::Affine, 0, false);
        let f = p(Var::gen(Family::Affine, 1, false));
        let w = &(&f + &p(h.with_order(1)).scale(&"(1/2)k".parse().unwrap())) + &p(h).pow(2).scale(&Scalar::rational(1, 4));
        let text = render(&w, &names);
        assert_eq!(text, "(1/4)H·H + (1/2)k·∂H + F");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<SuperPoly>(&json).unwrap(), w);
    }
}

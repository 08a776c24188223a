//! Exact scalars.
//!
//! A [`Scalar`] is a polynomial in the level `k` and the BRST constant `c`
//! with coefficients in the Gaussian rationals `Q(i)`. Every coefficient that
//! appears anywhere in the crate is one of these.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gauss { re, im }
    }
    pub fn real(re: Rat) -> Self {
        Gauss { re, im: Rat::zero() }
    }
    pub fn int(n: i64) -> Self {
        Gauss::real(rat_int(n))
    }
    pub fn zero() -> Self {
        Gauss::int(0)
    }
    pub fn one() -> Self {
        Gauss::int(1)
    }
    pub fn i() -> Self {
        Gauss { re: Rat::zero(), im: Rat::one() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Gauss { re: &self.re / &n, im: -(&self.im / &n) })
    }
    /// `i^n` for any integer `n`.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Gauss::int(1),
            1 => Gauss::i(),
            2 => Gauss::int(-1),
            _ => -Gauss::i(),
        }
    }
}

impl Add for &Gauss {
    type Output = Gauss;
    fn add(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl Sub for &Gauss {
    type Output = Gauss;
    fn sub(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl Mul for &Gauss {
    type Output = Gauss;
    fn mul(self, o: &Gauss) -> Gauss {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(&self.re * &o.re);
        }
        Gauss { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}
impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}
impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }
}
impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        &self + &o
    }
}
impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        &self - &o
    }
}
impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        &self * &o
    }
}

impl From<Rat> for Gauss {
    fn from(r: Rat) -> Self {
        Gauss::real(r)
    }
}

fn fmt_rat_factor(r: &Rat) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("({})", r)
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let mag = self.im.abs();
        let body = if mag.is_one() { "i".to_string() } else { format!("{}i", fmt_rat_factor(&mag)) };
        let im = if self.im.is_negative() { format!("-{}", body) } else { body };
        if self.re.is_zero() {
            write!(f, "{}", im)
        } else if im.starts_with('-') {
            write!(f, "{}{}", self.re, im)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

/// Exponents of `k` and `c` in a scalar monomial.
pub type Exp = (u32, u32);

/// Polynomial in `k` and `c` over `Q(i)`, kept sorted with no zero terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: Vec<(Exp, Gauss)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }
    pub fn one() -> Self {
        Scalar::from_gauss(Gauss::one())
    }
    pub fn int(n: i64) -> Self {
        Scalar::from_gauss(Gauss::int(n))
    }
    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::from_gauss(Gauss::real(rat(n, d)))
    }
    pub fn i() -> Self {
        Scalar::from_gauss(Gauss::i())
    }
    /// The level `k`.
    pub fn k() -> Self {
        Scalar { terms: vec![((1, 0), Gauss::one())] }
    }
    /// The BRST constant `c`.
    pub fn c() -> Self {
        Scalar { terms: vec![((0, 1), Gauss::one())] }
    }
    pub fn monomial(exp: Exp, coeff: Gauss) -> Self {
        if coeff.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(exp, coeff)] }
        }
    }
    pub fn from_gauss(g: Gauss) -> Self {
        Scalar::monomial((0, 0), g)
    }
    pub fn from_rat(r: Rat) -> Self {
        Scalar::from_gauss(Gauss::real(r))
    }
    pub fn terms(&self) -> &[(Exp, Gauss)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }
    /// The value if this scalar does not depend on `k` or `c`.
    pub fn as_constant(&self) -> Option<Gauss> {
        match self.terms.as_slice() {
            [] => Some(Gauss::zero()),
            [((0, 0), g)] => Some(g.clone()),
            _ => None,
        }
    }
    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }
    pub fn depends_on_c(&self) -> bool {
        self.terms.iter().any(|((_, c), _)| *c > 0)
    }
    pub fn scale(&self, g: &Gauss) -> Scalar {
        if g.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, x)| (*e, x * g)).collect() }
    }
    pub fn pow(&self, n: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
    /// Substitutes values for `k` and/or `c`.
    pub fn eval(&self, k: Option<&Scalar>, c: Option<&Scalar>) -> Scalar {
        let mut out = Scalar::zero();
        for ((ek, ec), g) in &self.terms {
            let mut t = Scalar::from_gauss(g.clone());
            t = &t
                * &match k {
                    Some(v) => v.pow(*ek),
                    None => Scalar::monomial((*ek, 0), Gauss::one()),
                };
            t = &t
                * &match c {
                    Some(v) => v.pow(*ec),
                    None => Scalar::monomial((0, *ec), Gauss::one()),
                };
            out += &t;
        }
        out
    }

    fn from_unsorted(mut terms: Vec<(Exp, Gauss)>) -> Scalar {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Exp, Gauss)> = Vec::with_capacity(terms.len());
        for (e, g) in terms {
            match out.last_mut() {
                Some((le, lg)) if *le == e => *lg = &*lg + &g,
                _ => out.push((e, g)),
            }
        }
        out.retain(|(_, g)| !g.is_zero());
        Scalar { terms: out }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            if j == o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0) {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() || o.terms[j].0 < self.terms[i].0 {
                out.push(o.terms[j].clone());
                j += 1;
            } else {
                let s = &self.terms[i].1 + &o.terms[j].1;
                if !s.is_zero() {
                    out.push((self.terms[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Scalar { terms: out }
    }
}
impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}
impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.terms.len() == 1 && self.terms[0].0 == (0, 0) {
            return o.scale(&self.terms[0].1);
        }
        if o.terms.len() == 1 && o.terms[0].0 == (0, 0) {
            return self.scale(&o.terms[0].1);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ga) in &self.terms {
            for (eb, gb) in &o.terms {
                terms.push(((ea.0 + eb.0, ea.1 + eb.1), ga * gb));
            }
        }
        Scalar::from_unsorted(terms)
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, g)| (*e, -g)).collect() }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}
impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}
impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl From<Gauss> for Scalar {
    fn from(g: Gauss) -> Self {
        Scalar::from_gauss(g)
    }
}
impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}
impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

fn fmt_symbols(e: Exp) -> String {
    let mut s = String::new();
    for (name, p) in [("k", e.0), ("c", e.1)] {
        match p {
            0 => {}
            1 => s.push_str(name),
            _ => s.push_str(&format!("{}^{}", name, p)),
        }
    }
    s
}

impl Scalar {
    /// True when the rendering is a single signed factor that needs no parentheses
    /// when multiplied on the right by something else.
    pub fn is_single_term(&self) -> bool {
        self.terms.len() <= 1
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, g) in self.terms.iter().rev() {
            let syms = fmt_symbols(*e);
            let (neg, mag) = if (g.is_real() && g.re.is_negative()) || (g.re.is_zero() && g.im.is_negative()) {
                (true, -g)
            } else {
                (false, g.clone())
            };
            let coeff = if syms.is_empty() {
                if mag.is_real() || mag.re.is_zero() {
                    mag.to_string()
                } else {
                    format!("({})", mag)
                }
            } else if mag.is_one() {
                String::new()
            } else if mag.is_real() {
                fmt_rat_factor(&mag.re)
            } else if mag.re.is_zero() && mag.im.is_one() {
                "i".to_string()
            } else {
                format!("({})", mag)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            write!(f, "{}{}", coeff, syms)?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse scalar {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

struct ScalarParser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> ScalarParser<'a> {
    fn err(&self, reason: &str) -> ParseScalarError {
        ParseScalarError { input: self.input.to_string(), reason: format!("{} at {}", reason, self.pos) }
    }
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }
    fn integer(&mut self) -> Result<BigInt, ParseScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }
    fn exponent(&mut self) -> Result<u32, ParseScalarError> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            n.to_string().parse::<u32>().map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }
    fn expr(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = Scalar::zero();
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn term(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(ch) if ch.is_ascii_digit() || ch == '(' || ch == 'i' || ch == 'k' || ch == 'c' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn factor(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let n = self.integer()?;
                let mut r = BigRational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    r /= BigRational::from_integer(d);
                }
                Ok(Scalar::from_rat(r))
            }
            Some('i') => {
                self.pos += 1;
                Ok(Scalar::i())
            }
            Some('k') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Scalar::monomial((e, 0), Gauss::one()))
            }
            Some('c') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Scalar::monomial((0, e), Gauss::one()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ScalarParser { chars: s.chars().collect(), pos: 0, input: s };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a constant `Q(i)` value such as `"-3/2"`, `"i"` or `"1+2i"`.
pub fn parse_gauss(s: &str) -> Result<Gauss, ParseScalarError> {
    let v: Scalar = s.parse()?;
    v.as_constant().ok_or_else(|| ParseScalarError { input: s.to_string(), reason: "expected a constant".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_round_trip() {
        let k = Scalar::k();
        let x = &(&k.pow(3) * &Scalar::rational(-1, 2)) + &(&Scalar::c() * &Scalar::i());
        let s = x.to_string();
        assert_eq!(s, "-(1/2)k^3 + ic");
        assert_eq!(s.parse::<Scalar>().unwrap(), x);
        for text in ["0", "1", "-i", "(1/2+(3/2)i)k", "2k^2c - 7/3", "(1+i)^2"] {
            let v: Scalar = text.parse().unwrap();
            assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{}", text);
        }
        assert_eq!("(1+i)^2".parse::<Scalar>().unwrap(), Scalar::from_gauss(Gauss::new(rat_int(0), rat_int(2))));
    }

    #[test]
    fn gauss_inverse() {
        let z = Gauss::new(rat(1, 2), rat(-3, 1));
        assert!((&z * &z.inv().unwrap()).is_one());
        assert!(Gauss::zero().inv().is_none());
        assert_eq!(Gauss::i_pow(3), -Gauss::i());
    }

    #[test]
    fn eval_specializes_symbols() {
        let x: Scalar = "k^2 + 3kc".parse().unwrap();
        let v = x.eval(Some(&Scalar::int(2)), Some(&Scalar::i()));
        assert_eq!(v, "4 + 6i".parse().unwrap());
        let partial = x.eval(None, Some(&Scalar::zero()));
        assert_eq!(partial, "k^2".parse().unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("k +".parse::<Scalar>().is_err());
        assert!(parse_gauss("k").is_err());
    }
}

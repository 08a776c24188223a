//! SUSY Poisson vertex superalgebras (N = 1): χ-brackets on `D`-flavored polynomials.
//!
//! `χ` is odd, `χ²` is central, and `[D, χ] = Dχ + χD = -2χ²`. A χ-bracket
//! `{a_χ b} = Σ χ^n a_{[n]}b` has parity `p(a) + p(b) + 1`.
//!
//! Conventions:
//!
//! ```text
//! {Da_χ b} = χ{a_χ b}          {a_χ Db} = -s(a)(D+χ){a_χ b}
//! {a_χ bc} = {a_χ b}c + s(a+1, b) b{a_χ c}
//! {a_χ b}  = s(a,b) Σ (-D-χ)^n b_{[n]}a
//! ```

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::liesuper::LieSuperalgebra;
use crate::pva::{render_powers, AxiomFailure, BracketTable, LambdaPoly};
use crate::scalar::Scalar;
use crate::superpoly::{Family, Names, SuperPoly, Var};

fn sign(neg: bool) -> Scalar {
    if neg {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

fn par(p: &SuperPoly) -> bool {
    p.parity().expect("homogeneous element expected")
}

/// `Σ χ^n c_n`, with `χ` written to the left of the coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChiPoly {
    pub coeffs: BTreeMap<u32, SuperPoly>,
}

impl ChiPoly {
    pub fn zero() -> Self {
        ChiPoly::default()
    }
    pub fn constant(p: SuperPoly) -> Self {
        let mut out = ChiPoly::zero();
        out.add_at(0, &p);
        out
    }
    pub fn monomial(n: u32, p: SuperPoly) -> Self {
        let mut out = ChiPoly::zero();
        out.add_at(n, &p);
        out
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn coeff(&self, n: u32) -> SuperPoly {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }
    pub fn add_at(&mut self, n: u32, p: &SuperPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_default();
        *e = &*e + p;
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }
    pub fn add(&mut self, o: &ChiPoly) {
        for (n, p) in &o.coeffs {
            self.add_at(*n, p);
        }
    }
    pub fn sub(&mut self, o: &ChiPoly) {
        for (n, p) in &o.coeffs {
            self.add_at(*n, &-p);
        }
    }
    pub fn scale(&self, c: &Scalar) -> ChiPoly {
        self.map(|p| p.scale(c))
    }
    pub fn map(&self, f: impl Fn(&SuperPoly) -> SuperPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (n, p) in &self.coeffs {
            out.add_at(*n, &f(p));
        }
        out
    }
    /// `P · self`, using `P χ^n = s(P)^n χ^n P`.
    pub fn left_mul(&self, p: &SuperPoly) -> ChiPoly {
        let (p0, p1) = p.split_parity();
        let mut out = ChiPoly::zero();
        for (n, c) in &self.coeffs {
            out.add_at(*n, &(&p0 * c));
            let t = &p1 * c;
            out.add_at(*n, &if n % 2 == 1 { -&t } else { t });
        }
        out
    }
    /// `self · P`.
    pub fn right_mul(&self, p: &SuperPoly) -> ChiPoly {
        self.map(|c| c * p)
    }
    /// `χ · self`.
    pub fn times_chi(&self) -> ChiPoly {
        ChiPoly { coeffs: self.coeffs.iter().map(|(n, p)| (n + 1, p.clone())).collect() }
    }
    /// `(D + χ)` applied on the left: `χ^n c ↦ (-1)^n (χ^n Dc + χ^{n+1} c)`.
    pub fn d_plus_chi(&self) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (n, c) in &self.coeffs {
            let s = sign(n % 2 == 1);
            out.add_at(*n, &c.super_d().scale(&s));
            out.add_at(n + 1, &c.scale(&s));
        }
        out
    }
    pub fn d_plus_chi_n(&self, n: u32) -> ChiPoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.d_plus_chi();
        }
        out
    }
    /// `Σ (-D-χ)^n c_n` with the operator acting on the coefficient.
    pub fn substitute_neg_d_minus_chi(&self) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (n, c) in &self.coeffs {
            let t = ChiPoly::constant(c.clone()).d_plus_chi_n(*n);
            out.add(&t.scale(&sign(n % 2 == 1)));
        }
        out
    }
    pub fn eval_scalars(&self, k: Option<&Scalar>, c: Option<&Scalar>) -> ChiPoly {
        self.map(|p| p.eval_scalars(k, c))
    }
    pub fn render(&self, names: &dyn Names) -> String {
        render_powers(&self.coeffs, "χ", names)
    }
}

/// An operator `Σ c χ^n D^m` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChiDWord {
    pub terms: BTreeMap<(u32, u32), Scalar>,
}

/// A letter of an operator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Chi,
    D,
}

impl ChiDWord {
    pub fn one() -> Self {
        let mut w = ChiDWord::default();
        w.add((0, 0), &Scalar::one());
        w
    }
    pub fn letter(l: Letter) -> Self {
        let mut w = ChiDWord::default();
        w.add(if l == Letter::Chi { (1, 0) } else { (0, 1) }, &Scalar::one());
        w
    }
    fn add(&mut self, key: (u32, u32), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Scalar::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
    /// `D^m χ` in normal form, by `Dχ = -χD - 2χ²`.
    fn d_pow_times_chi(m: u32) -> ChiDWord {
        let mut w = ChiDWord::letter(Letter::Chi);
        for _ in 0..m {
            // D · (Σ c χ^n D^j) = Σ c ((-1)^n χ^n D^{j+1} - 2[n odd] χ^{n+1} D^j)
            let mut next = ChiDWord::default();
            for (&(n, j), c) in &w.terms {
                next.add((n, j + 1), &c.scale_sign(n % 2 == 1));
                if n % 2 == 1 {
                    next.add((n + 1, j), &(c * &Scalar::int(-2)));
                }
            }
            w = next;
        }
        w
    }
    pub fn mul(&self, o: &ChiDWord) -> ChiDWord {
        let mut out = ChiDWord::default();
        for (&(n1, m1), c1) in &self.terms {
            for (&(n2, m2), c2) in &o.terms {
                // χ^{n1} D^{m1} χ^{n2} D^{m2}
                let mut mid = ChiDWord::default();
                mid.add((0, m1), &Scalar::one());
                for _ in 0..n2 {
                    let mut next = ChiDWord::default();
                    for (&(n, j), c) in &mid.terms {
                        for (&(a, b), d) in &ChiDWord::d_pow_times_chi(j).terms {
                            next.add((n + a, b), &(c * d));
                        }
                    }
                    mid = next;
                }
                for (&(n, j), c) in &mid.terms {
                    out.add((n1 + n, j + m2), &(&(c1 * c2) * c));
                }
            }
        }
        out
    }
    pub fn plus(&self, o: &ChiDWord) -> ChiDWord {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add(*k, c);
        }
        out
    }
    /// Normal form of a product of letters.
    pub fn from_letters(word: &[Letter]) -> ChiDWord {
        word.iter().fold(ChiDWord::one(), |acc, l| acc.mul(&ChiDWord::letter(*l)))
    }
    /// Applies the operator to a polynomial.
    pub fn apply(&self, p: &SuperPoly) -> ChiPoly {
        let mut out = ChiPoly::zero();
        for (&(n, m), c) in &self.terms {
            out.add_at(n, &p.super_d_n(m).scale(c));
        }
        out
    }
}

trait ScaleSign {
    fn scale_sign(&self, neg: bool) -> Scalar;
}

impl ScaleSign for Scalar {
    fn scale_sign(&self, neg: bool) -> Scalar {
        if neg {
            -self
        } else {
            self.clone()
        }
    }
}

/// χ-brackets of generators. Pairs not listed bracket to zero.
#[derive(Clone, Debug, Default)]
pub struct SusyTable {
    pub gens: Vec<Var>,
    pub entries: HashMap<(Var, Var), ChiPoly>,
}

impl SusyTable {
    pub fn new(gens: Vec<Var>) -> Self {
        SusyTable { gens, entries: HashMap::new() }
    }
    pub fn set(&mut self, a: Var, b: Var, v: ChiPoly) {
        if v.is_zero() {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), v);
        }
    }
    pub fn get(&self, a: &Var, b: &Var) -> Option<&ChiPoly> {
        self.entries.get(&(*a, *b))
    }
    pub fn entry(&self, a: &Var, b: &Var) -> ChiPoly {
        self.get(a, b).cloned().unwrap_or_default()
    }
    pub fn eval_scalars(&self, k: Option<&Scalar>, c: Option<&Scalar>) -> SusyTable {
        SusyTable { gens: self.gens.clone(), entries: self.entries.iter().map(|(key, v)| (*key, v.eval_scalars(k, c))).collect() }
    }
}

/// Sign conventions for the SUSY affine bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SusyConvention {
    /// `{ā_χ b̄} = s(a)(\overline{[a,b]} + kχ(a|b))`.
    Affine,
    /// `{j_ā χ j_b̄} = s(a, b̄) j_{\overline{[a,b]}} + kχ(a|b)`. Related to
    /// `Affine` by `j_ā = i^{p(a)} ā`.
    Current,
}

/// The SUSY affine algebra on `Family::Susy` generators `ā` of parity `p(a) + 1`.
pub fn susy_affine_table(g: &LieSuperalgebra, level: &Scalar) -> SusyTable {
    susy_table_in(g, level, Family::Susy, SusyConvention::Affine)
}

/// The current algebra on `Family::Current` generators `j_ā`.
pub fn susy_current_table(g: &LieSuperalgebra, level: &Scalar) -> SusyTable {
    susy_table_in(g, level, Family::Current, SusyConvention::Current)
}

pub fn susy_table_in(g: &LieSuperalgebra, level: &Scalar, family: Family, conv: SusyConvention) -> SusyTable {
    let gens: Vec<Var> = (0..g.dim()).map(|i| Var::gen(family, i, !g.parity[i])).collect();
    let mut t = SusyTable::new(gens.clone());
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let (s, sk) = match conv {
                SusyConvention::Affine => (sign(g.parity[i]), sign(g.parity[i])),
                SusyConvention::Current => (sign(g.parity[i] && !g.parity[j]), Scalar::one()),
            };
            let mut lin = SuperPoly::zero();
            for (l, c) in g.brackets[i][j].iter().enumerate() {
                lin.add_scaled(&SuperPoly::var(gens[l]), &(&s * &Scalar::from_gauss(c.clone())));
            }
            let mut v = ChiPoly::constant(lin);
            let f = g.form.get(i, j);
            if !f.is_zero() {
                v.add_at(1, &SuperPoly::constant(&(level * &Scalar::from_gauss(f.clone())) * &sk));
            }
            t.set(gens[i], gens[j], v);
        }
    }
    t
}

/// `{f_χ u}` for a generator `u`.
fn bracket_with_gen(table: &SusyTable, f: &SuperPoly, f_odd: bool, u: &Var) -> ChiPoly {
    let mut out = ChiPoly::zero();
    for y in f.vars() {
        let Some(entry) = table.get(&y.base(), u) else { continue };
        let df = f.partial(&y);
        let m = y.order;
        let mut term = ChiPoly::zero();
        for (r, c) in &entry.coeffs {
            let x = ChiPoly::constant(df.clone()).d_plus_chi_n(r + m);
            let s = sign(par(c) && (r + m) % 2 == 1) * sign((r + m) / 2 % 2 == 1);
            term.add(&x.left_mul(c).scale(&s));
        }
        out.add(&term.scale(&sign((f_odd ^ y.is_odd()) && u.is_odd())));
    }
    out
}

/// Right-Leibniz extension: `{f_χ g}` from `{f_χ u}` on generators.
fn extend_right(f_odd: bool, g: &SuperPoly, inner: &mut impl FnMut(&Var) -> ChiPoly) -> ChiPoly {
    let mut out = ChiPoly::zero();
    let (g0, g1) = g.split_parity();
    let mut cache: HashMap<Var, ChiPoly> = HashMap::new();
    for (gp, g_odd) in [(&g0, false), (&g1, true)] {
        if gp.is_zero() {
            continue;
        }
        for x in gp.vars() {
            let u = x.base();
            let base = cache.entry(u).or_insert_with(|| inner(&u));
            if base.is_zero() {
                continue;
            }
            let n = x.order;
            let t = base.d_plus_chi_n(n).scale(&sign(!f_odd && n % 2 == 1));
            let dg = gp.partial(&x);
            let s = sign((!f_odd ^ x.is_odd()) && (g_odd ^ x.is_odd()));
            out.add(&t.left_mul(&dg).scale(&s));
        }
    }
    out
}

/// `{f_χ g}` by the master formula.
pub fn bracket(table: &SusyTable, f: &SuperPoly, g: &SuperPoly) -> ChiPoly {
    let mut out = ChiPoly::zero();
    let (f0, f1) = f.split_parity();
    for (fp, f_odd) in [(&f0, false), (&f1, true)] {
        if fp.is_zero() {
            continue;
        }
        out.add(&extend_right(f_odd, g, &mut |u| bracket_with_gen(table, fp, f_odd, u)));
    }
    out
}

/// `{f_χ g}` computed without the left master formula: `{f_χ u}` is obtained
/// from `{u_χ f}` by skew-symmetry. Serves as an independent cross-check.
pub fn bracket_via_skew(table: &SusyTable, f: &SuperPoly, g: &SuperPoly) -> ChiPoly {
    let mut out = ChiPoly::zero();
    let (f0, f1) = f.split_parity();
    for (fp, f_odd) in [(&f0, false), (&f1, true)] {
        if fp.is_zero() {
            continue;
        }
        out.add(&extend_right(f_odd, g, &mut |u| {
            let uf = extend_right(u.is_odd(), fp, &mut |v| table.entry(u, v));
            uf.substitute_neg_d_minus_chi().scale(&sign(f_odd && u.is_odd()))
        }));
    }
    out
}

/// `{a_χ b} - s(a,b) Σ (-D-χ)^n b_{[n]}a`.
pub fn skew_defect(table: &SusyTable, a: &SuperPoly, b: &SuperPoly) -> ChiPoly {
    let mut out = bracket(table, a, b);
    let r = bracket(table, b, a).substitute_neg_d_minus_chi();
    out.sub(&r.scale(&sign(par(a) && par(b))));
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Coefficients of `χ^a γ^b` in `(χ + γ)^r` (`χ, γ` odd, anticommuting).
fn chi_plus_gamma_pow(r: u32) -> Vec<((u32, u32), i64)> {
    let s = r / 2;
    let mut out = Vec::new();
    for i in 0..=s {
        let c = binomial(s, i);
        if r % 2 == 0 {
            out.push(((2 * i, 2 * (s - i)), c));
        } else {
            out.push(((2 * i + 1, 2 * (s - i)), c));
            out.push(((2 * i, 2 * (s - i) + 1), c));
        }
    }
    out
}

/// Defect of the Jacobi identity, as coefficients of `χ^n γ^m`.
pub fn jacobi_defect(table: &SusyTable, a: &SuperPoly, b: &SuperPoly, c: &SuperPoly) -> BTreeMap<(u32, u32), SuperPoly> {
    let mut out: BTreeMap<(u32, u32), SuperPoly> = BTreeMap::new();
    let mut add = |key: (u32, u32), p: SuperPoly| {
        if p.is_zero() {
            return;
        }
        let e = out.entry(key).or_default();
        *e = &*e + &p;
    };
    let (pa, pb) = (par(a), par(b));
    // {a_χ {b_γ c}}
    for (m, bc) in &bracket(table, b, c).coeffs {
        for (n, x) in &bracket(table, a, bc).coeffs {
            let neg = (!pa && m % 2 == 1) ^ (m * n % 2 == 1);
            add((*n, *m), x.scale(&sign(neg)));
        }
    }
    // -{{a_χ b}_{χ+γ} c}
    for (n, ab) in &bracket(table, a, b).coeffs {
        for (r, x) in &bracket(table, ab, c).coeffs {
            for ((i, j), coef) in chi_plus_gamma_pow(*r) {
                let s = Scalar::int(coef) * sign(pa ^ (n % 2 == 1));
                add((n + i, j), x.scale(&s));
            }
        }
    }
    // -s(a+1, b+1){b_γ {a_χ c}}
    let s_ab = sign(pa && pb) * sign(pa) * sign(pb);
    for (n, ac) in &bracket(table, a, c).coeffs {
        for (m, x) in &bracket(table, b, ac).coeffs {
            let neg = !pb && n % 2 == 1;
            add((*n, *m), x.scale(&(&s_ab * &sign(neg))));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Skew-symmetry on every ordered pair of generators.
pub fn check_skew(table: &SusyTable) -> Vec<AxiomFailure> {
    let mut out = Vec::new();
    for a in &table.gens {
        for b in &table.gens {
            let d = skew_defect(table, &SuperPoly::var(*a), &SuperPoly::var(*b));
            if !d.is_zero() {
                out.push(AxiomFailure { axiom: "SUSY skew-symmetry", args: vec![*a, *b], defect: format!("{:?}", d) });
            }
        }
    }
    out
}

/// Jacobi identity on every ordered triple of generators.
pub fn check_jacobi(table: &SusyTable) -> Vec<AxiomFailure> {
    let mut out = Vec::new();
    for a in &table.gens {
        for b in &table.gens {
            for c in &table.gens {
                let d = jacobi_defect(table, &SuperPoly::var(*a), &SuperPoly::var(*b), &SuperPoly::var(*c));
                if !d.is_empty() {
                    out.push(AxiomFailure { axiom: "SUSY Jacobi", args: vec![*a, *b, *c], defect: format!("{:?}", d) });
                }
            }
        }
    }
    out
}

/// `{Da_χ b} - χ{a_χ b}` and `{a_χ Db} + s(a)(D+χ){a_χ b}`.
pub fn sesquilinearity_defects(table: &SusyTable, a: &SuperPoly, b: &SuperPoly) -> (ChiPoly, ChiPoly) {
    let ab = bracket(table, a, b);
    let mut left = bracket(table, &a.super_d(), b);
    left.sub(&ab.times_chi());
    let mut right = bracket(table, a, &b.super_d());
    right.add(&ab.d_plus_chi().scale(&sign(par(a))));
    (left, right)
}

/// `{a_χ bc} - {a_χ b}c - s(a+1, b) b{a_χ c}`.
pub fn right_leibniz_defect(table: &SusyTable, a: &SuperPoly, b: &SuperPoly, c: &SuperPoly) -> ChiPoly {
    let mut out = bracket(table, a, &(b * c));
    out.sub(&bracket(table, a, b).right_mul(c));
    out.sub(&bracket(table, a, c).left_mul(b).scale(&sign(!par(a) && par(b))));
    out
}

/// `{a_{χ+D} c}_→ b = Σ s(a+c)^n (-1)^{⌊n/2⌋} a_{[n]}c (χ+D)^n b`.
fn bracket_arrow(table: &SusyTable, a: &SuperPoly, c: &SuperPoly, b: &SuperPoly) -> ChiPoly {
    let mut out = ChiPoly::zero();
    let s_ac = par(a) ^ par(c);
    for (n, x) in &bracket(table, a, c).coeffs {
        let y = ChiPoly::constant(b.clone()).d_plus_chi_n(*n);
        out.add(&y.left_mul(x).scale(&(sign(s_ac && n % 2 == 1) * sign(n / 2 % 2 == 1))));
    }
    out
}

/// `{ab_χ c} - s(b,c){a_{χ+D}c}_→ b - s(a, b+c){b_{χ+D}c}_→ a`.
pub fn left_leibniz_defect(table: &SusyTable, a: &SuperPoly, b: &SuperPoly, c: &SuperPoly) -> ChiPoly {
    let (pa, pb, pc) = (par(a), par(b), par(c));
    let mut out = bracket(table, &(a * b), c);
    out.sub(&bracket_arrow(table, a, c, b).scale(&sign(pb && pc)));
    out.sub(&bracket_arrow(table, b, c, a).scale(&sign(pa && (pb ^ pc))));
    out
}

/// Underlying λ-bracket algebra: generators `u_i ↦ Reduced(2i)`, `Du_i ↦ Reduced(2i+1)`
/// with `a_{(n)}b = (-1)^n a_{[2n+1]}b`.
pub fn reduce_to_pva(table: &SusyTable) -> BracketTable {
    let index: HashMap<Var, usize> = table.gens.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let to_reduced = |p: &SuperPoly| -> SuperPoly {
        p.substitute(&mut |v| {
            let i = index[&v.base()];
            let r = Var::gen(Family::Reduced, 2 * i + (v.order % 2) as usize, v.is_odd());
            Some(SuperPoly::var(r.with_order(v.order / 2)))
        })
    };
    let mut lifts = Vec::new();
    let mut gens = Vec::new();
    for (i, u) in table.gens.iter().enumerate() {
        lifts.push(SuperPoly::var(*u));
        gens.push(Var::gen(Family::Reduced, 2 * i, u.is_odd()));
        lifts.push(SuperPoly::var(u.with_order(1)));
        gens.push(Var::gen(Family::Reduced, 2 * i + 1, !u.is_odd()));
    }
    let mut out = BracketTable::new(gens.clone());
    for (a, la) in gens.iter().zip(&lifts) {
        for (b, lb) in gens.iter().zip(&lifts) {
            let v = bracket(table, la, lb);
            let mut lp = LambdaPoly::zero();
            for (n, p) in &v.coeffs {
                if n % 2 == 1 {
                    let k = (n - 1) / 2;
                    lp.add_at(k, &to_reduced(p).scale(&sign(k % 2 == 1)));
                }
            }
            out.set(*a, *b, lp);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::catalog;

    fn table(name: &str) -> (LieSuperalgebra, SusyTable) {
        let ga = catalog(name).unwrap().graded().unwrap();
        let t = susy_affine_table(&ga.g, &Scalar::k());
        (ga.g, t)
    }

    /// Rewrites `Dχ → -χD - 2χχ` at random positions until no `Dχ` is left.
    fn random_rewrite(word: &[Letter], rng: &mut impl rand::Rng) -> ChiDWord {
        let mut todo: Vec<(Vec<Letter>, i64)> = vec![(word.to_vec(), 1)];
        let mut out = ChiDWord::default();
        while !todo.is_empty() {
            let (w, c) = todo.swap_remove(rng.gen_range(0..todo.len()));
            let spots: Vec<usize> =
                (0..w.len().saturating_sub(1)).filter(|&i| w[i] == Letter::D && w[i + 1] == Letter::Chi).collect();
            if spots.is_empty() {
                let n = w.iter().filter(|l| **l == Letter::Chi).count() as u32;
                out.add((n, w.len() as u32 - n), &Scalar::int(c));
                continue;
            }
            let i = spots[rng.gen_range(0..spots.len())];
            let mut a = w[..i].to_vec();
            a.extend([Letter::Chi, Letter::D]);
            a.extend(&w[i + 2..]);
            let mut b = w[..i].to_vec();
            b.extend([Letter::Chi, Letter::Chi]);
            b.extend(&w[i + 2..]);
            todo.push((a, -c));
            todo.push((b, -2 * c));
        }
        out
    }

    #[test]
    fn operator_words_are_confluent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let len = rng.gen_range(1..8);
            let word: Vec<Letter> = (0..len).map(|_| if rng.gen_bool(0.5) { Letter::Chi } else { Letter::D }).collect();
            let nf = ChiDWord::from_letters(&word);
            for _ in 0..3 {
                assert_eq!(random_rewrite(&word, &mut rng), nf);
            }
        }
        // (D+χ)^n as a word agrees with the coefficient-level operator
        let (g, t) = table("osp12");
        let e = SuperPoly::var(t.gens[g.index_of("e").unwrap()]);
        let dc = ChiDWord::letter(Letter::D).plus(&ChiDWord::letter(Letter::Chi));
        let mut w = ChiDWord::one();
        for n in 0..5 {
            assert_eq!(w.apply(&e), ChiPoly::constant(e.clone()).d_plus_chi_n(n));
            w = dc.mul(&w);
        }
    }

    #[test]
    fn master_formula_reproduces_the_table() {
        for name in ["sl2", "osp12", "sl21"] {
            let (_, t) = table(name);
            for a in &t.gens {
                for b in &t.gens {
                    assert_eq!(bracket(&t, &SuperPoly::var(*a), &SuperPoly::var(*b)), t.entry(a, b), "{}", name);
                }
            }
        }
    }

    #[test]
    fn affine_axioms_hold() {
        for name in ["sl2", "osp12", "sl21"] {
            let ga = catalog(name).unwrap().graded().unwrap();
            for t in [susy_affine_table(&ga.g, &Scalar::k()), susy_current_table(&ga.g, &Scalar::k())] {
                let s = check_skew(&t);
                assert!(s.is_empty(), "{} {}", name, s[0]);
                let j = check_jacobi(&t);
                assert!(j.is_empty(), "{} {}", name, j[0]);
            }
        }
    }

    #[test]
    fn osp12_entries() {
        let (g, t) = table("osp12");
        let v = |l: &str| t.gens[g.index_of(l).unwrap()];
        let mut ef = ChiPoly::constant(SuperPoly::var(v("H")));
        ef.add_at(1, &SuperPoly::constant(Scalar::k().scale(&crate::scalar::Gauss::int(2))));
        assert_eq!(t.entry(&v("e"), &v("f")), ef);
        assert!(t.entry(&v("F"), &v("F")).is_zero());
        assert_eq!(
            t.entry(&v("H"), &v("H")),
            ChiPoly::monomial(1, SuperPoly::constant(Scalar::k().scale(&crate::scalar::Gauss::int(2))))
        );
    }

    #[test]
    fn current_table_is_the_twisted_affine_table() {
        use crate::scalar::Gauss;
        let ga = catalog("sl21").unwrap().graded().unwrap();
        let aff = susy_affine_table(&ga.g, &Scalar::k());
        let cur = susy_current_table(&ga.g, &Scalar::k());
        // j_ā ↦ i^{p(a)} ā
        let tw = |i: usize| if ga.g.parity[i] { Scalar::from_gauss(Gauss::i()) } else { Scalar::one() };
        let to_aff = |p: &SuperPoly| {
            p.substitute(&mut |v| Some(SuperPoly::var(Var { family: Family::Susy, ..*v }).scale(&tw(v.index as usize))))
        };
        for i in 0..ga.g.dim() {
            for j in 0..ga.g.dim() {
                let lhs = cur.entry(&cur.gens[i], &cur.gens[j]).map(|p| to_aff(p));
                let rhs = aff.entry(&aff.gens[i], &aff.gens[j]).scale(&(&tw(i) * &tw(j)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn master_formula_matches_skew_route() {
        let (g, t) = table("sl21");
        let v = |i: usize| SuperPoly::var(t.gens[i]);
        let n = g.dim();
        let polys = vec![
            &v(0) * &v(1).super_d(),
            &v(2).super_d_n(2) * &v(n - 1),
            &(&v(1) * &v(3)) * &v(4).super_d(),
            v(n - 2).super_d_n(3),
        ];
        for f in &polys {
            for h in &polys {
                let f = f.split_parity();
                for fp in [f.0, f.1] {
                    assert_eq!(bracket(&t, &fp, h), bracket_via_skew(&t, &fp, h));
                }
            }
        }
    }

    #[test]
    fn sesquilinearity_and_leibniz() {
        let (g, t) = table("osp12");
        let v = |l: &str| SuperPoly::var(t.gens[g.index_of(l).unwrap()]);
        let (e, f, h) = (v("e"), v("f"), v("H"));
        for (a, b, c) in [(&e, &f, &h.super_d()), (&h, &e.super_d(), &f), (&f.super_d(), &h, &e)] {
            let (l, r) = sesquilinearity_defects(&t, a, b);
            assert!(l.is_zero() && r.is_zero());
            assert!(right_leibniz_defect(&t, a, b, c).is_zero());
            assert!(left_leibniz_defect(&t, a, b, c).is_zero());
            assert!(jacobi_defect(&t, a, &(b * c), c).is_empty());
            assert!(skew_defect(&t, &(a * b), c).is_zero());
        }
    }

    #[test]
    fn reduction_is_a_pva() {
        for name in ["sl2", "osp12"] {
            let (_, t) = table(name);
            let r = reduce_to_pva(&t);
            assert!(crate::pva::check_skew(&r).is_empty(), "{}", name);
            assert!(crate::pva::check_jacobi(&r).is_empty(), "{}", name);
        }
    }
}

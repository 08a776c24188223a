//! Poisson vertex superalgebras: λ-brackets on ∂-flavored polynomials.
//!
//! A [`BracketTable`] fixes `{u_i λ u_j}` on generators; [`bracket`] extends
//! it to all polynomials by the master formula
//!
//! ```text
//! {f_λ g} = Σ σ · ∂g/∂u_j^{(n)} (λ+∂)^n {u_i _{λ+∂} u_j}_→ (-λ-∂)^m ∂f/∂u_i^{(m)}
//! σ = s(f + u_j, g + u_j) · s(f + u_i, u_j)
//! ```
//!
//! where all derivatives are left derivatives.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::liesuper::LieSuperalgebra;
use crate::scalar::{Rat, Scalar};
use crate::superpoly::{render, Family, Names, SuperPoly, Var};

/// `Σ λ^n c_n` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LambdaPoly {
    pub coeffs: BTreeMap<u32, SuperPoly>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }
    pub fn constant(p: SuperPoly) -> Self {
        let mut out = LambdaPoly::zero();
        out.add_at(0, &p);
        out
    }
    /// `c·λ^n`.
    pub fn monomial(n: u32, p: SuperPoly) -> Self {
        let mut out = LambdaPoly::zero();
        out.add_at(n, &p);
        out
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn coeff(&self, n: u32) -> SuperPoly {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
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
    pub fn add(&mut self, o: &LambdaPoly) {
        for (n, p) in &o.coeffs {
            self.add_at(*n, p);
        }
    }
    pub fn sub(&mut self, o: &LambdaPoly) {
        for (n, p) in &o.coeffs {
            self.add_at(*n, &-p);
        }
    }
    pub fn scale(&self, c: &Scalar) -> LambdaPoly {
        self.map(|p| p.scale(c))
    }
    pub fn map(&self, f: impl Fn(&SuperPoly) -> SuperPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (n, p) in &self.coeffs {
            out.add_at(*n, &f(p));
        }
        out
    }
    /// `p · self`.
    pub fn left_mul(&self, p: &SuperPoly) -> LambdaPoly {
        self.map(|c| p * c)
    }
    /// `self · p`.
    pub fn right_mul(&self, p: &SuperPoly) -> LambdaPoly {
        self.map(|c| c * p)
    }
    /// `λ · self`.
    pub fn times_lambda(&self) -> LambdaPoly {
        LambdaPoly { coeffs: self.coeffs.iter().map(|(n, p)| (n + 1, p.clone())).collect() }
    }
    /// `(λ + ∂)` applied to every coefficient.
    pub fn lambda_plus_partial(&self) -> LambdaPoly {
        let mut out = self.times_lambda();
        out.add(&self.map(|p| p.partial_t()));
        out
    }
    pub fn lambda_plus_partial_n(&self, n: u32) -> LambdaPoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.lambda_plus_partial();
        }
        out
    }
    /// `Σ (-λ-∂)^n c_n`: the substitution `λ ↦ -λ-∂` with `∂` acting on the coefficient.
    pub fn substitute_neg_lambda_minus_partial(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (n, p) in &self.coeffs {
            let mut t = LambdaPoly::constant(p.clone());
            for _ in 0..*n {
                t = t.lambda_plus_partial().scale(&Scalar::int(-1));
            }
            out.add(&t);
        }
        out
    }
    pub fn eval_scalars(&self, k: Option<&Scalar>, c: Option<&Scalar>) -> LambdaPoly {
        self.map(|p| p.eval_scalars(k, c))
    }
    pub fn render(&self, names: &dyn Names) -> String {
        render_powers(&self.coeffs, "λ", names)
    }
}

pub(crate) fn render_powers(coeffs: &BTreeMap<u32, SuperPoly>, sym: &str, names: &dyn Names) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = coeffs
        .iter()
        .map(|(n, p)| {
            let body = render(p, names);
            match n {
                0 => body,
                1 => format!("({}){}", body, sym),
                _ => format!("({}){}^{}", body, sym, n),
            }
        })
        .collect();
    parts.join(" + ")
}

/// `Σ λ^n μ^m c_{n,m}`, used for Jacobi identities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambdaMuPoly {
    pub coeffs: BTreeMap<(u32, u32), SuperPoly>,
}

impl LambdaMuPoly {
    pub fn add_at(&mut self, nm: (u32, u32), p: &SuperPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.coeffs.entry(nm).or_default();
        *e = &*e + p;
        if e.is_zero() {
            self.coeffs.remove(&nm);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// λ-brackets of generators. Pairs not listed bracket to zero.
#[derive(Clone, Debug, Default)]
pub struct BracketTable {
    pub gens: Vec<Var>,
    pub entries: HashMap<(Var, Var), LambdaPoly>,
}

impl BracketTable {
    pub fn new(gens: Vec<Var>) -> Self {
        BracketTable { gens, entries: HashMap::new() }
    }
    pub fn set(&mut self, a: Var, b: Var, v: LambdaPoly) {
        if v.is_zero() {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), v);
        }
    }
    pub fn get(&self, a: &Var, b: &Var) -> Option<&LambdaPoly> {
        self.entries.get(&(*a, *b))
    }
    pub fn entry(&self, a: &Var, b: &Var) -> LambdaPoly {
        self.get(a, b).cloned().unwrap_or_default()
    }
    pub fn eval_scalars(&self, k: Option<&Scalar>, c: Option<&Scalar>) -> BracketTable {
        BracketTable {
            gens: self.gens.clone(),
            entries: self.entries.iter().map(|(key, v)| (*key, v.eval_scalars(k, c))).collect(),
        }
    }
}

fn sign(neg: bool) -> Scalar {
    if neg {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

/// The affine λ-bracket `{a_λ b} = [a,b] + kλ(a|b)` on `Family::Affine` generators.
pub fn affine_table(g: &LieSuperalgebra, level: &Scalar) -> BracketTable {
    let gens: Vec<Var> = (0..g.dim()).map(|i| Var::gen(Family::Affine, i, g.parity[i])).collect();
    let mut t = BracketTable::new(gens.clone());
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let mut lin = SuperPoly::zero();
            for (l, c) in g.brackets[i][j].iter().enumerate() {
                lin.add_scaled(&SuperPoly::var(gens[l]), &Scalar::from_gauss(c.clone()));
            }
            let mut v = LambdaPoly::constant(lin);
            let f = g.form.get(i, j);
            if !f.is_zero() {
                v.add_at(1, &SuperPoly::constant(level * &Scalar::from_gauss(f.clone())));
            }
            t.set(gens[i], gens[j], v);
        }
    }
    t
}

/// `{f_λ u}` for a generator `u`.
fn bracket_with_gen(table: &BracketTable, f: &SuperPoly, f_odd: bool, u: &Var) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    for y in f.vars() {
        let Some(entry) = table.get(&y.base(), u) else { continue };
        let df = f.partial(&y);
        let mut x = LambdaPoly::constant(df);
        for _ in 0..y.order {
            x = x.lambda_plus_partial().scale(&Scalar::int(-1));
        }
        let mut term = LambdaPoly::zero();
        for (r, c) in &entry.coeffs {
            term.add(&x.lambda_plus_partial_n(*r).left_mul(c));
        }
        let s = sign((f_odd ^ y.is_odd()) && u.is_odd());
        out.add(&term.scale(&s));
    }
    out
}

/// `{f_λ g}` by the master formula.
pub fn bracket(table: &BracketTable, f: &SuperPoly, g: &SuperPoly) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    let (f0, f1) = f.split_parity();
    let (g0, g1) = g.split_parity();
    for (fp, f_odd) in [(&f0, false), (&f1, true)] {
        if fp.is_zero() {
            continue;
        }
        let mut inner_cache: HashMap<Var, LambdaPoly> = HashMap::new();
        for (gp, g_odd) in [(&g0, false), (&g1, true)] {
            if gp.is_zero() {
                continue;
            }
            for x in gp.vars() {
                let u = x.base();
                let inner = inner_cache.entry(u).or_insert_with(|| bracket_with_gen(table, fp, f_odd, &u));
                if inner.is_zero() {
                    continue;
                }
                let dg = gp.partial(&x);
                let term = inner.lambda_plus_partial_n(x.order).left_mul(&dg);
                let s = sign((f_odd ^ x.is_odd()) && (g_odd ^ x.is_odd()));
                out.add(&term.scale(&s));
            }
        }
    }
    out
}

/// `{a_{λ+∂} c}_→ b = Σ_n a_{(n)}c (λ+∂)^n b`.
pub fn bracket_arrow(ac: &LambdaPoly, b: &SuperPoly) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    let base = LambdaPoly::constant(b.clone());
    for (n, c) in &ac.coeffs {
        out.add(&base.lambda_plus_partial_n(*n).left_mul(c));
    }
    out
}

/// Parity of a homogeneous polynomial; panics otherwise.
pub(crate) fn par(p: &SuperPoly) -> bool {
    p.parity().expect("homogeneous element expected")
}

/// `{a_λ b} + s(a,b) {b_{-λ-∂} a}` (zero iff skew-symmetry holds).
pub fn skew_defect(table: &BracketTable, a: &SuperPoly, b: &SuperPoly) -> LambdaPoly {
    let mut lhs = bracket(table, a, b);
    let rhs = bracket(table, b, a).substitute_neg_lambda_minus_partial();
    lhs.add(&rhs.scale(&sign(par(a) && par(b))));
    lhs
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// `{a_λ{b_μ c}} - {{a_λ b}_{λ+μ} c} - s(a,b){b_μ{a_λ c}}` in powers `λ^n μ^m`.
pub fn jacobi_defect(table: &BracketTable, a: &SuperPoly, b: &SuperPoly, c: &SuperPoly) -> LambdaMuPoly {
    let mut out = LambdaMuPoly::default();
    for (m, bc) in &bracket(table, b, c).coeffs {
        for (n, x) in &bracket(table, a, bc).coeffs {
            out.add_at((*n, *m), x);
        }
    }
    for (n, ab) in &bracket(table, a, b).coeffs {
        for (r, x) in &bracket(table, ab, c).coeffs {
            // (λ+μ)^r
            for i in 0..=*r {
                let coef = Scalar::int(-binomial(*r, i));
                out.add_at((n + i, r - i), &x.scale(&coef));
            }
        }
    }
    let s = sign(par(a) && par(b));
    for (m, ac) in &bracket(table, a, c).coeffs {
        for (n, x) in &bracket(table, b, ac).coeffs {
            out.add_at((*m, *n), &x.scale(&-&s));
        }
    }
    out
}

/// `{∂a_λ b} + λ{a_λ b}` and `{a_λ ∂b} - (λ+∂){a_λ b}`.
pub fn sesquilinearity_defects(table: &BracketTable, a: &SuperPoly, b: &SuperPoly) -> (LambdaPoly, LambdaPoly) {
    let ab = bracket(table, a, b);
    let mut left = bracket(table, &a.partial_t(), b);
    left.add(&ab.times_lambda());
    let mut right = bracket(table, a, &b.partial_t());
    right.sub(&ab.lambda_plus_partial());
    (left, right)
}

/// `{a_λ bc} - s(a,b) b{a_λ c} - {a_λ b}c`.
pub fn right_leibniz_defect(table: &BracketTable, a: &SuperPoly, b: &SuperPoly, c: &SuperPoly) -> LambdaPoly {
    let mut out = bracket(table, a, &(b * c));
    out.sub(&bracket(table, a, c).left_mul(b).scale(&sign(par(a) && par(b))));
    out.sub(&bracket(table, a, b).right_mul(c));
    out
}

/// `{ab_λ c} - s(b,c){a_{λ+∂}c}_→ b - s(a,bc){b_{λ+∂}c}_→ a`.
pub fn left_leibniz_defect(table: &BracketTable, a: &SuperPoly, b: &SuperPoly, c: &SuperPoly) -> LambdaPoly {
    let mut out = bracket(table, &(a * b), c);
    out.sub(&bracket_arrow(&bracket(table, a, c), b).scale(&sign(par(b) && par(c))));
    out.sub(&bracket_arrow(&bracket(table, b, c), a).scale(&sign(par(a) && (par(b) ^ par(c)))));
    out
}

/// A failed axiom instance.
#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub args: Vec<Var>,
    pub defect: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on {:?}: {}", self.axiom, self.args, self.defect)
    }
}

/// Skew-symmetry on every ordered pair of generators.
pub fn check_skew(table: &BracketTable) -> Vec<AxiomFailure> {
    let mut out = Vec::new();
    for a in &table.gens {
        for b in &table.gens {
            let d = skew_defect(table, &SuperPoly::var(*a), &SuperPoly::var(*b));
            if !d.is_zero() {
                out.push(AxiomFailure { axiom: "skew-symmetry", args: vec![*a, *b], defect: format!("{:?}", d) });
            }
        }
    }
    out
}

/// Jacobi identity on every ordered triple of generators.
pub fn check_jacobi(table: &BracketTable) -> Vec<AxiomFailure> {
    let mut out = Vec::new();
    for a in &table.gens {
        for b in &table.gens {
            for c in &table.gens {
                let d = jacobi_defect(table, &SuperPoly::var(*a), &SuperPoly::var(*b), &SuperPoly::var(*c));
                if !d.is_zero() {
                    out.push(AxiomFailure { axiom: "Jacobi", args: vec![*a, *b, *c], defect: format!("{:?}", d) });
                }
            }
        }
    }
    out
}

/// Weight of a variable when generator weights are given: `Δ(u) + order·step`.
pub fn derivative_weight(base: Rat, order: u32, step: &Rat) -> Rat {
    base + step * Rat::from_integer((order as i64).into())
}

/// True if `{a_λ b}` is homogeneous of weight `Δa + Δb - 1` (λ counted with weight 1).
pub fn bracket_weight_ok(v: &LambdaPoly, expected: &Rat, weight: &impl Fn(&Var) -> Rat) -> bool {
    v.coeffs.iter().all(|(n, p)| {
        let target = expected - Rat::from_integer((*n as i64).into());
        p.weights(weight).iter().all(|w| *w == target)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::catalog;

    fn table(name: &str) -> (LieSuperalgebra, BracketTable) {
        let ga = catalog(name).unwrap().graded().unwrap();
        let t = affine_table(&ga.g, &Scalar::k());
        (ga.g, t)
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
            let (_, t) = table(name);
            assert!(check_skew(&t).is_empty(), "{}", name);
            assert!(check_jacobi(&t).is_empty(), "{}", name);
        }
    }

    #[test]
    fn sl2_quadratic_bracket_by_hand() {
        // {E_λ H·H} = 2·H·[E,H] + k-term: [E,H] = -2E, (E|H) = 0
        let (g, t) = table("sl2");
        let v = |l: &str| SuperPoly::var(t.gens[g.index_of(l).unwrap()]);
        let got = bracket(&t, &v("E"), &(&v("H") * &v("H")));
        let want = LambdaPoly::constant((&v("E") * &v("H")).scale(&Scalar::int(-4)));
        assert_eq!(got, want);
        // {E_λ F} = H + kλ
        let mut ef = LambdaPoly::constant(v("H"));
        ef.add_at(1, &SuperPoly::constant(Scalar::k()));
        assert_eq!(bracket(&t, &v("E"), &v("F")), ef);
    }

    #[test]
    fn leibniz_rules_on_odd_generators() {
        let (g, t) = table("osp12");
        let v = |l: &str| SuperPoly::var(t.gens[g.index_of(l).unwrap()]);
        let (e, f, h) = (v("e"), v("f"), v("H"));
        let df = f.partial_t();
        for (a, b, c) in [(&e, &f, &df), (&f, &e, &h), (&e, &df, &f), (&h, &e, &f)] {
            assert!(right_leibniz_defect(&t, a, b, c).is_zero());
            assert!(left_leibniz_defect(&t, a, b, c).is_zero());
            assert!(jacobi_defect(&t, a, &(b * c), c).is_zero());
        }
    }
}

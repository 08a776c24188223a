//! Classical W-algebras `W(g, F)` attached to an sl₂-triple `(E, H, F)`.
//!
//! Everything is computed in the adapted basis `{q_j^n}` of [`Adapted`]:
//! the variables with `n = 0` span `g^F`, those with `n ≥ 1` span `[E, g]`.
//!
//! * `ρ` sends a variable of grade `≥ 1` to the constant `(F|a)` and its
//!   derivatives to zero; other variables are kept.
//! * `π` kills every variable with `n ≥ 1`.
//!
//! A generator `ω(q_j) = q_j + γ(q_j) + γ^{≥2}(q_j)` is found by solving
//! `ρ{n_λ w} = 0` for `n ∈ g_{≥1/2}` over a weight-homogeneous ansatz.

use std::collections::BTreeMap;
use std::fmt;

use crate::liesuper::{admissible_chains, Adapted, AlgebraError, ChainKind, GradedAlgebra, Index, Vector};
use crate::linalg::{solve_scalar_system, Equation, SolveError};
use crate::pva::{affine_table, bracket, BracketTable, LambdaPoly};
use crate::scalar::{rat, rat_int, Gauss, Rat, Scalar};
use crate::superpoly::{Family, Mono, NameTable, SuperPoly, Var};

#[derive(Debug, thiserror::Error)]
pub enum WError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator {chain}: {source}")]
    Solve { chain: usize, source: SolveError },
    #[error("generator {chain}: linear part disagrees with the chain formula")]
    LinearPart { chain: usize },
    #[error("input not in W or generators not canonical")]
    NotInW,
}

fn sign(neg: bool) -> Scalar {
    if neg {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

/// Enumerates monomials of exact weight `target` in the given variables
/// (each with positive weight). Odd variables appear at most once.
pub(crate) fn monomials_of_weight(vars: &[(Var, Rat)], target: &Rat) -> Vec<Mono> {
    fn rec(vars: &[(Var, Rat)], i: usize, left: &Rat, cur: &mut Vec<(Var, u32)>, out: &mut Vec<Mono>) {
        if left.is_zero_rat() {
            out.push(Mono(cur.clone()));
            return;
        }
        if i == vars.len() {
            return;
        }
        let (v, w) = &vars[i];
        let max_e = if v.is_odd() { 1 } else { u32::MAX };
        let mut e = 0u32;
        let mut rem = left.clone();
        loop {
            if e > 0 {
                cur.push((*v, e));
            }
            rec(vars, i + 1, &rem, cur, out);
            if e > 0 {
                cur.pop();
            }
            e += 1;
            rem -= w;
            if e > max_e || rem < Rat::from_integer(0.into()) {
                break;
            }
        }
    }
    let mut sorted = vars.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Vec::new();
    rec(&sorted, 0, target, &mut Vec::new(), &mut out);
    out
}

trait IsZeroRat {
    fn is_zero_rat(&self) -> bool;
}

impl IsZeroRat for Rat {
    fn is_zero_rat(&self) -> bool {
        *self == Rat::from_integer(0.into())
    }
}

/// Linear system from `Σ x_i·P_i + P_0 = 0` for `LambdaPoly`s, one equation per
/// `(λ-power, monomial)`.
pub(crate) fn equations_from(rhs: &LambdaPoly, cols: &[LambdaPoly]) -> Vec<Equation> {
    let mut eqs: BTreeMap<(u32, Mono), Equation> = BTreeMap::new();
    for (i, p) in cols.iter().enumerate() {
        for (n, c) in &p.coeffs {
            for (m, s) in c.terms() {
                eqs.entry((*n, m.clone())).or_default().coeffs.insert(i, s.clone());
            }
        }
    }
    for (n, c) in &rhs.coeffs {
        for (m, s) in c.terms() {
            let e = eqs.entry((*n, m.clone())).or_default();
            e.rhs = &e.rhs - s;
        }
    }
    eqs.into_values().collect()
}

/// The affine algebra in the adapted basis together with the maps `ρ` and `π`.
#[derive(Clone, Debug)]
pub struct ReductionContext {
    pub adapted: Adapted,
    pub level: Scalar,
    pub table: BracketTable,
    /// `(F | q_a)` for each adapted basis vector.
    f_pairing: Vec<Gauss>,
    pub names: NameTable,
}

impl ReductionContext {
    pub fn new(ga: &GradedAlgebra, level: Scalar) -> Result<Self, WError> {
        let adapted = Adapted::new(ga, ChainKind::Even)?;
        let table = affine_table(&adapted.alg, &level);
        let (_, _, f) = adapted.sl2();
        let f_pairing = (0..adapted.dim()).map(|a| adapted.alg.form_of(&f, &adapted.alg.basis(a))).collect();
        let mut names = NameTable::default();
        for (i, l) in ga.g.labels.iter().enumerate() {
            names.insert(Family::Affine, i, l.clone());
        }
        for j in 0..adapted.chains.count() {
            names.insert(Family::AffineGen, j, generator_name(ga, &adapted.chains.lower[j][0], j));
        }
        Ok(ReductionContext { adapted, level, table, f_pairing, names })
    }

    pub fn var(&self, a: usize) -> Var {
        Var::gen(Family::Affine, a, self.adapted.alg.parity[a])
    }

    pub fn gen_var(&self, j: usize) -> Var {
        Var::gen(Family::AffineGen, j, self.adapted.chains.parities[j])
    }

    pub fn grade(&self, a: usize) -> &Rat {
        &self.adapted.grading[a]
    }

    /// Number of generators, `dim g^F`.
    pub fn rank(&self) -> usize {
        self.adapted.chains.count()
    }

    /// Conformal weight `1 + α_j` of the generator `q_j`.
    pub fn generator_weight(&self, j: usize) -> Rat {
        rat_int(1) + &self.adapted.chains.spins[j]
    }

    /// Conformal weight of a variable: `1 - grade` plus one per derivative;
    /// generator symbols have the weight of their leading term.
    pub fn weight(&self, v: &Var) -> Rat {
        let base = match v.family {
            Family::Affine => rat_int(1) - self.grade(v.index as usize),
            Family::AffineGen => self.generator_weight(v.index as usize),
            _ => panic!("variable outside the W-algebra context"),
        };
        base + rat_int(v.order as i64)
    }

    /// Linear polynomial `Σ v_a q_a`.
    pub fn linear(&self, v: &[Gauss]) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (a, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&SuperPoly::var(self.var(a)), &Scalar::from_gauss(c.clone()));
            }
        }
        out
    }

    /// `ω(v^♯)` as a linear polynomial in generator symbols.
    pub fn omega_sharp(&self, v: &[Gauss]) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (j, c) in self.adapted.sharp(v).iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&SuperPoly::var(self.gen_var(j)), &Scalar::from_gauss(c.clone()));
            }
        }
        out
    }

    pub fn rho(&self, p: &SuperPoly) -> SuperPoly {
        p.substitute(&mut |v| {
            let a = v.index as usize;
            if v.family != Family::Affine || *self.grade(a) < rat_int(1) {
                return None;
            }
            Some(if v.order == 0 {
                SuperPoly::constant(Scalar::from_gauss(self.f_pairing[a].clone()))
            } else {
                SuperPoly::zero()
            })
        })
    }

    pub fn rho_lambda(&self, p: &LambdaPoly) -> LambdaPoly {
        p.map(|c| self.rho(c))
    }

    pub fn pi(&self, p: &SuperPoly) -> SuperPoly {
        p.substitute(&mut |v| {
            if v.family == Family::Affine && !self.adapted.is_kernel(v.index as usize) {
                Some(SuperPoly::zero())
            } else {
                None
            }
        })
    }

    /// Adapted positions spanning `n = g_{≥1/2}`.
    pub fn n_positions(&self) -> Vec<usize> {
        self.adapted.positions(|g| *g >= rat(1, 2))
    }

    /// Adapted positions spanning `p = g_{≤1/2}`.
    pub fn p_positions(&self) -> Vec<usize> {
        self.adapted.positions(|g| *g <= rat(1, 2))
    }

    /// Rewrites an adapted-basis polynomial in the original basis.
    pub fn to_original(&self, p: &SuperPoly) -> SuperPoly {
        let orig_parity = &self.adapted.original.g.parity;
        p.substitute(&mut |v| {
            if v.family != Family::Affine {
                return None;
            }
            let mut out = SuperPoly::zero();
            for (l, c) in self.adapted.to_original[v.index as usize].iter().enumerate() {
                if !c.is_zero() {
                    let x = Var::gen(Family::Affine, l, orig_parity[l]).with_order(v.order);
                    out.add_scaled(&SuperPoly::var(x), &Scalar::from_gauss(c.clone()));
                }
            }
            Some(out)
        })
    }

    /// `ρ{x_λ y}` for Lie algebra elements in adapted coordinates.
    pub fn rho_bracket_elements(&self, x: &[Gauss], y: &[Gauss]) -> LambdaPoly {
        self.rho_lambda(&bracket(&self.table, &self.linear(x), &self.linear(y)))
    }

    /// `γ(q_j)`: the part of `ω(q_j)` linear in `[E, g_{≤-1/2}]`-variables, by the chain formula.
    pub fn gamma_linear(&self, j: usize) -> SuperPoly {
        let ad = &self.adapted;
        let ch = &ad.chains;
        let alpha = &ch.spins[j];
        let q = ad.lower((j, 0));
        let mut out = SuperPoly::zero();
        for chain in admissible_chains(ch, &(-alpha - rat_int(1)), &rat(1, 2)) {
            let &(jp, np) = chain.last().unwrap();
            if np + 1 >= ch.len(jp) {
                continue;
            }
            let mut acc = SuperPoly::var(self.var(ad.position[&(jp, np + 1)]));
            for t in (0..chain.len()).rev() {
                let x: Vector = if t == 0 {
                    q.clone()
                } else {
                    let (jj, nn) = chain[t - 1];
                    ad.lower((jj, nn + 1))
                };
                let y = ad.upper(chain[t]);
                acc = self.chain_factor(&x, &y, &acc, chain[t]);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// `s(j)([x,y]^♯ - (x|y)k∂)` applied to `tail`.
    fn chain_factor(&self, x: &[Gauss], y: &[Gauss], tail: &SuperPoly, ix: Index) -> SuperPoly {
        let alg = &self.adapted.alg;
        let br = self.linear(&self.adapted.sharp_vec(&alg.bracket(x, y)));
        let f = alg.form_of(x, y);
        let mut out = &br * tail;
        if !f.is_zero() {
            let c = &self.level * &Scalar::from_gauss(f);
            out = &out - &tail.partial_t().scale(&c);
        }
        out.scale(&sign(self.adapted.chains.parities[ix.0]))
    }

    /// Variables of `p` with their weights, up to weight `max`.
    fn p_vars(&self, max: &Rat) -> Vec<(Var, Rat)> {
        let mut out = Vec::new();
        for a in self.p_positions() {
            let mut order = 0;
            loop {
                let v = self.var(a).with_order(order);
                let w = self.weight(&v);
                if w > *max {
                    break;
                }
                out.push((v, w));
                order += 1;
            }
        }
        out
    }

    fn has_e_var(&self, m: &Mono) -> bool {
        m.0.iter().any(|(v, _)| v.family == Family::Affine && !self.adapted.is_kernel(v.index as usize))
    }

    /// Number of `[E, g]`-variables in a monomial, with multiplicity.
    pub fn e_degree(&self, m: &Mono) -> u32 {
        m.0.iter().filter(|(v, _)| v.family == Family::Affine && !self.adapted.is_kernel(v.index as usize)).map(|(_, e)| e).sum()
    }

    /// True if `ρ{n_λ w} = 0` for every basis element `n` of `g_{≥1/2}`.
    pub fn is_in_w(&self, w: &SuperPoly) -> bool {
        self.n_positions().iter().all(|&a| self.rho_lambda(&bracket(&self.table, &SuperPoly::var(self.var(a)), w)).is_zero())
    }

    /// Solves for `ω(q_j)`.
    pub fn solve_generator(&self, j: usize) -> Result<WGenerator, WError> {
        let weight = self.generator_weight(j);
        let parity = self.adapted.chains.parities[j];
        let q = SuperPoly::var(self.var(self.adapted.generator_position(j)));
        let ansatz: Vec<Mono> = monomials_of_weight(&self.p_vars(&weight), &weight)
            .into_iter()
            .filter(|m| m.is_odd() == parity && self.has_e_var(m))
            .collect();
        let mut eqs = Vec::new();
        for a in self.n_positions() {
            let n = SuperPoly::var(self.var(a));
            let rhs = self.rho_lambda(&bracket(&self.table, &n, &q));
            let cols: Vec<LambdaPoly> = ansatz
                .iter()
                .map(|m| self.rho_lambda(&bracket(&self.table, &n, &SuperPoly::term(m.clone(), Scalar::one()))))
                .collect();
            eqs.extend(equations_from(&rhs, &cols));
        }
        let x = solve_scalar_system(ansatz.len(), eqs).map_err(|source| WError::Solve { chain: j, source })?;
        let mut value = q;
        for (m, c) in ansatz.into_iter().zip(x) {
            value.add_term(m, &c);
        }
        let linear = value.filter(|m| self.e_degree(m) == 1);
        if linear != self.gamma_linear(j) {
            return Err(WError::LinearPart { chain: j });
        }
        Ok(WGenerator { chain: j, weight, parity, value })
    }

    /// `ρ{q^i_m λ q_j^n}` against the three-case table; returns violating index pairs.
    pub fn check_dual_bracket_cases(&self) -> Vec<(Index, Index)> {
        let ad = &self.adapted;
        let ch = &ad.chains;
        let mut bad = Vec::new();
        for &(i, m) in &ad.order {
            for &(j, n) in &ad.order {
                let t1 = ch.grade((i, m));
                let t2 = ch.grade((j, n));
                let x = ad.upper((i, m));
                let y = ad.lower((j, n));
                let got = self.rho_bracket_elements(&x, &y);
                let d = &t2 - &t1;
                let want = if d > rat_int(1) {
                    LambdaPoly::zero()
                } else if d == rat_int(1) {
                    let v = if i == j && n == m + 1 { Scalar::one() } else { Scalar::zero() };
                    LambdaPoly::constant(SuperPoly::constant(v))
                } else {
                    let mut w = LambdaPoly::constant(self.rho(&self.linear(&ad.alg.bracket(&x, &y))));
                    if i == j && m == n {
                        w.add_at(1, &SuperPoly::constant(self.level.clone()));
                    }
                    w
                };
                if got != want {
                    bad.push(((i, m), (j, n)));
                }
            }
        }
        bad
    }

    pub fn solve_all(&self) -> Result<WAlgebra, WError> {
        let gens: Vec<WGenerator> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..self.rank()).map(|j| s.spawn(move || self.solve_generator(j))).collect();
            handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect::<Result<_, _>>()
        })?;
        Ok(WAlgebra { ctx: self.clone(), gens })
    }
}

fn generator_name(ga: &GradedAlgebra, v: &[Gauss], j: usize) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 {
        format!("ω_{}", ga.g.labels[nz[0]])
    } else {
        format!("ω{}", j)
    }
}

/// `ω(q_j)` in adapted coordinates.
#[derive(Clone, Debug)]
pub struct WGenerator {
    pub chain: usize,
    pub weight: Rat,
    pub parity: bool,
    pub value: SuperPoly,
}

/// Which way generator brackets are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Master formula in the affine algebra followed by `ρ` and rewriting.
    Direct,
    /// Chain-sum formula in generator coordinates.
    Closed,
}

/// A solved W-algebra.
#[derive(Clone, Debug)]
pub struct WAlgebra {
    pub ctx: ReductionContext,
    pub gens: Vec<WGenerator>,
}

impl WAlgebra {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Generator value rendered in the original basis.
    pub fn render_generator(&self, j: usize) -> String {
        crate::superpoly::render(&self.ctx.to_original(&self.gens[j].value), &self.ctx.names)
    }

    pub fn generator_name(&self, j: usize) -> String {
        crate::superpoly::render_var(&self.ctx.gen_var(j), &self.ctx.names)
    }

    /// Evaluates a polynomial in generator symbols.
    pub fn evaluate(&self, p: &SuperPoly) -> SuperPoly {
        p.substitute_gens(&mut |v| (v.family == Family::AffineGen).then(|| self.gens[v.index as usize].value.clone()))
            .expect("generator parities are consistent")
    }

    /// `ω^{-1}(A)`: `π(A)` with `q_j ↦ ω_j`, verified by evaluation.
    pub fn rewrite(&self, a: &SuperPoly) -> Result<SuperPoly, WError> {
        let ctx = &self.ctx;
        let out = ctx.pi(a).substitute(&mut |v| {
            if v.family != Family::Affine {
                return None;
            }
            let (j, _) = ctx.adapted.order[v.index as usize];
            Some(SuperPoly::var(ctx.gen_var(j).with_order(v.order)))
        });
        if self.evaluate(&out) != *a {
            return Err(WError::NotInW);
        }
        Ok(out)
    }

    pub fn bracket_direct(&self, i: usize, j: usize) -> Result<LambdaPoly, WError> {
        let ctx = &self.ctx;
        let v = ctx.rho_lambda(&bracket(&ctx.table, &self.gens[i].value, &self.gens[j].value));
        let mut out = LambdaPoly::zero();
        for (n, c) in &v.coeffs {
            out.add_at(*n, &self.rewrite(c)?);
        }
        Ok(out)
    }

    /// `{ω(a)_λ ω(b)}` by the chain-sum formula, `a = q_i`, `b = q_j`.
    pub fn bracket_closed(&self, i: usize, j: usize) -> LambdaPoly {
        let ctx = &self.ctx;
        let ad = &ctx.adapted;
        let ch = &ad.chains;
        let alg = &ad.alg;
        let a = ad.lower((i, 0));
        let b = ad.lower((j, 0));
        let k = &ctx.level;
        let mut out = LambdaPoly::constant(ctx.omega_sharp(&alg.bracket(&a, &b)));
        out.add_at(1, &SuperPoly::constant(k * &Scalar::from_gauss(alg.form_of(&a, &b))));
        let (t1, t2) = (&ch.spins[i], &ch.spins[j]);
        let mut sum = LambdaPoly::zero();
        for chain in admissible_chains(ch, &(-t2 - rat_int(1)), t1) {
            let &(jp, np) = chain.last().unwrap();
            if np + 1 >= ch.len(jp) {
                continue;
            }
            let x = ad.lower((jp, np + 1));
            let mut acc = LambdaPoly::constant(ctx.omega_sharp(&alg.bracket(&x, &a)));
            acc.add_at(1, &SuperPoly::constant(-(k * &Scalar::from_gauss(alg.form_of(&x, &a)))));
            for t in (0..chain.len()).rev() {
                let x: Vector = if t == 0 {
                    b.clone()
                } else {
                    let (jj, nn) = chain[t - 1];
                    ad.lower((jj, nn + 1))
                };
                let y = ad.upper(chain[t]);
                let mut next = acc.left_mul(&ctx.omega_sharp(&alg.bracket(&x, &y)));
                let f = alg.form_of(&x, &y);
                if !f.is_zero() {
                    next.sub(&acc.lambda_plus_partial().scale(&(k * &Scalar::from_gauss(f))));
                }
                acc = next.scale(&sign(ch.parities[chain[t].0]));
                if acc.is_zero() {
                    break;
                }
            }
            sum.add(&acc);
        }
        let s_ab = sign(ch.parities[i] && ch.parities[j]);
        out.sub(&sum.scale(&s_ab));
        out
    }

    pub fn bracket(&self, i: usize, j: usize, method: Method) -> Result<LambdaPoly, WError> {
        match method {
            Method::Direct => self.bracket_direct(i, j),
            Method::Closed => Ok(self.bracket_closed(i, j)),
        }
    }

    /// The λ-bracket table in generator coordinates.
    pub fn table(&self, method: Method) -> Result<BracketTable, WError> {
        let gens: Vec<Var> = (0..self.rank()).map(|j| self.ctx.gen_var(j)).collect();
        let mut t = BracketTable::new(gens.clone());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                t.set(gens[i], gens[j], self.bracket(i, j, method)?);
            }
        }
        Ok(t)
    }

    /// Pairs where the two methods disagree.
    pub fn compare_methods(&self) -> Result<Vec<(usize, usize)>, WError> {
        let mut bad = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if self.bracket_direct(i, j)? != self.bracket_closed(i, j) {
                    bad.push((i, j));
                }
            }
        }
        Ok(bad)
    }
}

impl fmt::Display for WGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generator {} (weight {})", self.chain, self.weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::catalog;

    fn ctx(name: &str) -> ReductionContext {
        ReductionContext::new(&catalog(name).unwrap().graded().unwrap(), Scalar::k()).unwrap()
    }

    fn orig(ctx: &ReductionContext, label: &str) -> SuperPoly {
        let g = &ctx.adapted.original.g;
        let i = g.index_of(label).unwrap();
        SuperPoly::var(Var::gen(Family::Affine, i, g.parity[i]))
    }

    #[test]
    fn sl2_generator_by_hand() {
        let c = ctx("sl2");
        let w = c.solve_generator(0).unwrap();
        let (f, h) = (orig(&c, "F"), orig(&c, "H"));
        let want = &(&f + &h.partial_t().scale(&"(1/2)k".parse().unwrap())) + &(&h * &h).scale(&"1/4".parse().unwrap());
        assert_eq!(c.to_original(&w.value), want);
        assert_eq!(c.to_original(&c.gamma_linear(0)), h.partial_t().scale(&"(1/2)k".parse().unwrap()));
        let c0 = ReductionContext::new(&catalog("sl2").unwrap().graded().unwrap(), Scalar::zero()).unwrap();
        assert!(c0.gamma_linear(0).is_zero());
    }

    #[test]
    fn virasoro_bracket_both_ways() {
        let c = ctx("sl2");
        let w = c.solve_all().unwrap();
        let om = SuperPoly::var(c.gen_var(0));
        // k(∂ + 2λ)ω - (k³/2)λ³
        let mut want = LambdaPoly::constant(om.partial_t().scale(&Scalar::k()));
        want.add_at(1, &om.scale(&Scalar::k().scale(&Gauss::int(2))));
        want.add_at(3, &SuperPoly::constant("-(1/2)k^3".parse().unwrap()));
        assert_eq!(w.bracket_direct(0, 0).unwrap(), want);
        assert_eq!(w.bracket_closed(0, 0), want);
    }

    #[test]
    fn dual_bracket_cases_hold() {
        for name in ["sl2", "sl3-principal", "sl3-minimal", "osp12", "sl21"] {
            assert!(ctx(name).check_dual_bracket_cases().is_empty(), "{}", name);
        }
    }

    #[test]
    fn generators_are_members_of_weight_delta() {
        for name in ["sl3-minimal", "osp12"] {
            let c = ctx(name);
            let w = c.solve_all().unwrap();
            for g in &w.gens {
                assert!(c.is_in_w(&g.value), "{} {}", name, g);
                assert_eq!(g.value.homogeneous_weight(&|v| c.weight(v)), Some(g.weight.clone()));
            }
        }
    }
}

//! The SUSY classical BRST complex `C(ḡ, f)` and its degree-zero cohomology.
//!
//! The complex is the current algebra on `j_ā` (`a ∈ g`) tensored with the
//! charged ghosts `φ_α` (`u_α ∈ n = g_{>0}`) and `φ^ᾱ` (dual to `u_α`, in
//! `n_-`), with `{φ^ᾱ_χ φ_β} = {φ_β χ φ^ᾱ} = δ_{αβ}`. Everything is expressed
//! in the adapted basis built from the osp(1|2) chains, so `g^f` is spanned by
//! basis vectors.
//!
//! ```text
//! d   = Σ (j_ᾱ - c(f|u_α)) φ^ᾱ + ½ Σ s(α,β)s(β) φ_{[u_α,u_β]} φ^β̄ φ^ᾱ
//! J_ā = j_ā - Σ s(a,β)s(a)s(β) φ^β̄ φ_{[u_β,a]}
//! ```
//!
//! Degree-zero cocycles are polynomials in the `J_ā`, `a ∈ g_{≤0}`; each
//! generator `E_i = J_{ū_i} + R_i` is found by an exact solve at fixed
//! conformal weight.

use std::collections::BTreeMap;

use crate::classical_w::monomials_of_weight;
use crate::liesuper::{Adapted, AlgebraError, ChainKind, GradedAlgebra, Vector};
use crate::linalg::{solve_scalar_system, Equation, SolveError};
use crate::scalar::{rat, rat_int, Gauss, Rat, Scalar};
use crate::superpoly::{Family, Mono, NameTable, SuperPoly, Var};
use crate::susy_pva::{bracket, susy_current_table, ChiPoly, SusyTable};

#[derive(Debug, thiserror::Error)]
pub enum BrstError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator {chain}: filtration correction failed: {source}")]
    Correction { chain: usize, source: SolveError },
    #[error("representative not reduced")]
    NotReduced,
}

fn sign(neg: bool) -> Scalar {
    if neg {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

fn half() -> Scalar {
    Scalar::rational(1, 2)
}

#[derive(Clone, Debug)]
pub struct BrstComplex {
    pub adapted: Adapted,
    pub level: Scalar,
    pub table: SusyTable,
    /// Adapted positions of the basis `u_α` of `n`.
    pub nil: Vec<usize>,
    /// `u^α ∈ n_-` with `(u^α|u_β) = δ_{αβ}`, adapted coordinates.
    pub dual: Vec<Vector>,
    f: Vector,
    pub names: NameTable,
}

impl BrstComplex {
    pub fn new(ga: &GradedAlgebra, level: Scalar) -> Result<Self, BrstError> {
        let adapted = Adapted::new(ga, ChainKind::Odd)?;
        let alg = &adapted.alg;
        let table0 = susy_current_table(alg, &level);
        let nil = adapted.positions(|g| *g > rat_int(0));
        let neg = adapted.positions(|g| *g < rat_int(0));
        // pairing matrix P[α][γ] = (u_γ^- | u_α); dual = inverse combination
        let mut dual = Vec::new();
        let m = crate::linalg::Matrix::from_columns(
            nil.len(),
            &neg.iter().map(|&b| nil.iter().map(|&a| alg.form.get(b, a).clone()).collect()).collect::<Vec<_>>(),
        );
        for (al, _) in nil.iter().enumerate() {
            let mut rhs = vec![Gauss::zero(); nil.len()];
            rhs[al] = Gauss::one();
            let x = m.solve(&rhs).ok_or_else(|| AlgebraError::Decomposition("form does not pair n and n_-".into()))?;
            let mut v = alg.zero();
            for (i, &b) in neg.iter().enumerate() {
                v[b] = x[i].clone();
            }
            dual.push(v);
        }
        let (_, f) = adapted.odd_pair().ok_or_else(|| AlgebraError::Decomposition("no osp(1|2) triple".into()))?;
        let mut gens = table0.gens.clone();
        let mut table = table0;
        for (al, &a) in nil.iter().enumerate() {
            let odd = alg.parity[a];
            let g = Var::gen(Family::Ghost, al, odd);
            let gb = Var::gen(Family::GhostBar, al, !odd);
            gens.push(g);
            gens.push(gb);
        }
        table.gens = gens;
        for al in 0..nil.len() {
            let odd = alg.parity[nil[al]];
            let g = Var::gen(Family::Ghost, al, odd);
            let gb = Var::gen(Family::GhostBar, al, !odd);
            table.set(gb, g, ChiPoly::constant(SuperPoly::one()));
            table.set(g, gb, ChiPoly::constant(SuperPoly::one()));
        }
        let mut names = NameTable::default();
        for a in 0..adapted.dim() {
            let l = adapted.label(a);
            names.insert(Family::Current, a, format!("j_{}", l));
            names.insert(Family::Block, a, format!("J_{}", l));
        }
        for (al, &a) in nil.iter().enumerate() {
            let l = adapted.label(a);
            names.insert(Family::Ghost, al, format!("φ_{}", l));
            names.insert(Family::GhostBar, al, format!("φ^{}", l));
        }
        for j in 0..adapted.chains.count() {
            names.insert(Family::SusyGen, j, format!("E_{}", adapted.label(adapted.generator_position(j))));
        }
        Ok(BrstComplex { adapted, level, table, nil, dual, f, names })
    }

    fn odd(&self, a: usize) -> bool {
        self.adapted.alg.parity[a]
    }

    fn grade(&self, a: usize) -> &Rat {
        &self.adapted.grading[a]
    }

    pub fn current(&self, a: usize) -> Var {
        Var::gen(Family::Current, a, !self.odd(a))
    }

    pub fn ghost(&self, al: usize) -> Var {
        Var::gen(Family::Ghost, al, self.odd(self.nil[al]))
    }

    pub fn ghost_bar(&self, al: usize) -> Var {
        Var::gen(Family::GhostBar, al, !self.odd(self.nil[al]))
    }

    pub fn block(&self, a: usize) -> Var {
        Var::gen(Family::Block, a, !self.odd(a))
    }

    /// `φ_{π₊x} = Σ (u^α|x) φ_α`.
    pub fn phi_of(&self, x: &[Gauss]) -> SuperPoly {
        let alg = &self.adapted.alg;
        let mut out = SuperPoly::zero();
        for al in 0..self.nil.len() {
            let c = alg.form_of(&self.dual[al], x);
            if !c.is_zero() {
                out.add_scaled(&SuperPoly::var(self.ghost(al)), &Scalar::from_gauss(c));
            }
        }
        out
    }

    /// `φ^{\overline{π₋x}} = Σ (x|u_α) φ^ᾱ`.
    pub fn phi_bar_of(&self, x: &[Gauss]) -> SuperPoly {
        let alg = &self.adapted.alg;
        let mut out = SuperPoly::zero();
        for (al, &a) in self.nil.iter().enumerate() {
            let c = alg.form_of(x, &alg.basis(a));
            if !c.is_zero() {
                out.add_scaled(&SuperPoly::var(self.ghost_bar(al)), &Scalar::from_gauss(c));
            }
        }
        out
    }

    /// The element `d^c`.
    pub fn differential(&self, c: &Scalar) -> SuperPoly {
        let alg = &self.adapted.alg;
        let mut d = SuperPoly::zero();
        for (al, &a) in self.nil.iter().enumerate() {
            let fc = Scalar::from_gauss(alg.form_of(&self.f, &alg.basis(a)));
            let j = &SuperPoly::var(self.current(a)) - &SuperPoly::constant(c * &fc);
            d = &d + &(&j * &SuperPoly::var(self.ghost_bar(al)));
        }
        for (al, &a) in self.nil.iter().enumerate() {
            for (be, &b) in self.nil.iter().enumerate() {
                let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(b)) * half();
                let phi = self.phi_of(&alg.bracket(&alg.basis(a), &alg.basis(b)));
                if phi.is_zero() {
                    continue;
                }
                let t = &(&phi * &SuperPoly::var(self.ghost_bar(be))) * &SuperPoly::var(self.ghost_bar(al));
                d = &d + &t.scale(&s);
            }
        }
        d
    }

    /// `d_{[0]}x = {d_χ x}|_{χ=0}`.
    pub fn d0(&self, d: &SuperPoly, x: &SuperPoly) -> SuperPoly {
        bracket(&self.table, d, x).coeff(0)
    }

    /// `Σ_β s(a,β)s(a)s(β) φ^β̄ φ_{[u_β,a]}`, so that `J_ā = j_ā - ghost_part(a)`.
    fn ghost_part(&self, a: usize) -> SuperPoly {
        let alg = &self.adapted.alg;
        let mut out = SuperPoly::zero();
        for (be, &b) in self.nil.iter().enumerate() {
            let phi = self.phi_of(&alg.bracket(&alg.basis(b), &alg.basis(a)));
            if phi.is_zero() {
                continue;
            }
            let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(a)) * sign(self.odd(b));
            out = &out + &(&SuperPoly::var(self.ghost_bar(be)) * &phi).scale(&s);
        }
        out
    }

    /// The building block `J_ā` in the complex.
    pub fn building_block(&self, a: usize) -> SuperPoly {
        &SuperPoly::var(self.current(a)) - &self.ghost_part(a)
    }

    /// Replaces each `D^n J_ā` by `D^n` of the building block.
    pub fn expand_blocks(&self, p: &SuperPoly) -> SuperPoly {
        p.substitute_gens(&mut |v| (v.family == Family::Block).then(|| self.building_block(v.index as usize)))
            .expect("building blocks have the parity of their currents")
    }

    /// Inverse of [`expand_blocks`](Self::expand_blocks) on `S(R_-)`: currents of
    /// `g_{≤0}` are rewritten through `j_ā = J_ā + ghost_part(a)`. Fails if a
    /// current of `n` or a ghost `φ_α` survives.
    pub fn to_blocks(&self, p: &SuperPoly) -> Result<SuperPoly, BrstError> {
        let out = p
            .substitute_gens(&mut |v| {
                (v.family == Family::Current && *self.grade(v.index as usize) <= rat_int(0)).then(|| {
                    let a = v.index as usize;
                    &SuperPoly::var(self.block(a)) + &self.ghost_part(a)
                })
            })
            .expect("parity preserved");
        let stray = out.vars().iter().any(|v| matches!(v.family, Family::Current | Family::Ghost));
        if stray {
            return Err(BrstError::NotReduced);
        }
        Ok(out)
    }

    /// Bidegree `gr` of a variable of `S(R_-)`; `D` has bidegree zero.
    pub fn bigrade(&self, v: &Var) -> (Rat, Rat) {
        match v.family {
            Family::Block => {
                let g = self.grade(v.index as usize).clone();
                (g.clone(), -g)
            }
            Family::GhostBar => {
                let g = self.grade(self.nil[v.index as usize]).clone();
                (rat(1, 2) - &g, g + rat(1, 2))
            }
            _ => panic!("variable outside S(R_-)"),
        }
    }

    /// Bidegree of a monomial.
    pub fn mono_bigrade(&self, m: &Mono) -> (Rat, Rat) {
        let mut p = rat_int(0);
        let mut q = rat_int(0);
        for (v, e) in &m.0 {
            let (a, b) = self.bigrade(v);
            p += a * rat_int(*e as i64);
            q += b * rat_int(*e as i64);
        }
        (p, q)
    }

    /// Conformal weight `Δ`: `½ - g_a` for `J_ā`, `g_β` for `φ^β̄`, `½` per `D`.
    pub fn delta(&self, v: &Var) -> Rat {
        let base = match v.family {
            Family::Block | Family::Current => rat(1, 2) - self.grade(v.index as usize),
            Family::GhostBar => self.grade(self.nil[v.index as usize]).clone(),
            _ => panic!("variable without a Δ-weight"),
        };
        base + rat(v.order as i64, 2)
    }

    /// Every generator of the complex.
    pub fn generators(&self) -> Vec<Var> {
        self.table.gens.clone()
    }

    /// `{d_χ d}` (zero iff the check passes) and the generators `x` with `d_{[0]}²x ≠ 0`.
    pub fn check_d_squared(&self, c: &Scalar) -> (ChiPoly, Vec<Var>) {
        let d = self.differential(c);
        let dd = bracket(&self.table, &d, &d);
        let bad = self
            .generators()
            .into_iter()
            .filter(|x| {
                let once = self.d0(&d, &SuperPoly::var(*x));
                !self.d0(&d, &once).is_zero()
            })
            .collect();
        (dd, bad)
    }

    /// Compares `d_{[0]}` on the generators with the closed expressions
    /// for `φ_α`, `φ^ᾱ` and `j_ā`. Returns the labels that disagree.
    pub fn check_differential_on_generators(&self, c: &Scalar) -> Vec<String> {
        let alg = &self.adapted.alg;
        let d = self.differential(c);
        let mut bad = Vec::new();
        let nm = |v: Var| crate::superpoly::render_var(&v, &self.names);
        for (al, &a) in self.nil.iter().enumerate() {
            // -s(α) j_ᾱ - c(f|u_α) + Σ s(α,β)s(β) φ^β̄ φ_{[u_β,u_α]}
            let fc = Scalar::from_gauss(alg.form_of(&self.f, &alg.basis(a)));
            let mut want = &SuperPoly::var(self.current(a)).scale(&-sign(self.odd(a))) - &SuperPoly::constant(c * &fc);
            for (be, &b) in self.nil.iter().enumerate() {
                let phi = self.phi_of(&alg.bracket(&alg.basis(b), &alg.basis(a)));
                let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(b));
                want = &want + &(&SuperPoly::var(self.ghost_bar(be)) * &phi).scale(&s);
            }
            if self.d0(&d, &SuperPoly::var(self.ghost(al))) != want {
                bad.push(nm(self.ghost(al)));
            }
            // ½ Σ s(α,β)s(β) φ^β̄ φ^{[u_β,u^α]}
            let mut want = SuperPoly::zero();
            for (be, &b) in self.nil.iter().enumerate() {
                let pb = self.phi_bar_of(&alg.bracket(&alg.basis(b), &self.dual[al]));
                let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(b)) * half();
                want = &want + &(&SuperPoly::var(self.ghost_bar(be)) * &pb).scale(&s);
            }
            if self.d0(&d, &SuperPoly::var(self.ghost_bar(al))) != want {
                bad.push(nm(self.ghost_bar(al)));
            }
        }
        for a in 0..self.adapted.dim() {
            // Σ s(α,a)s(α) φ^ᾱ j_{[u_α,a]} - Σ s(α) kD φ^ᾱ (u_α|a)
            let mut want = SuperPoly::zero();
            for (al, &b) in self.nil.iter().enumerate() {
                let br = alg.bracket(&alg.basis(b), &alg.basis(a));
                let mut j = SuperPoly::zero();
                for (l, x) in br.iter().enumerate() {
                    if !x.is_zero() {
                        j.add_scaled(&SuperPoly::var(self.current(l)), &Scalar::from_gauss(x.clone()));
                    }
                }
                let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(b));
                want = &want + &(&SuperPoly::var(self.ghost_bar(al)) * &j).scale(&s);
                let fm = alg.form_of(&alg.basis(b), &alg.basis(a));
                if !fm.is_zero() {
                    let kk = &(&self.level * &Scalar::from_gauss(fm)) * &sign(self.odd(b));
                    want = &want - &SuperPoly::var(self.ghost_bar(al).with_order(1)).scale(&kk);
                }
            }
            if self.d0(&d, &SuperPoly::var(self.current(a))) != want {
                bad.push(nm(self.current(a)));
            }
        }
        bad
    }

    /// `d_{[0]}J_ā` for `a ∈ g_{≤0}` against the closed expression
    /// `Σ s(a,β)s(β) φ^β̄ (J_{π≤0[u_β,a]} + c(f|[u_β,a])) - Σ s(β) kDφ^β̄ (u_β|a)`.
    /// Returns the adapted positions that disagree.
    pub fn check_block_action(&self, c: &Scalar) -> Vec<usize> {
        let alg = &self.adapted.alg;
        let d = self.differential(c);
        let mut bad = Vec::new();
        for a in self.adapted.positions(|g| *g <= rat_int(0)) {
            let got = self.to_blocks(&self.d0(&d, &self.building_block(a)));
            let mut want = SuperPoly::zero();
            for (be, &b) in self.nil.iter().enumerate() {
                let br = alg.bracket(&alg.basis(b), &alg.basis(a));
                let mut inner = SuperPoly::constant(c * &Scalar::from_gauss(alg.form_of(&self.f, &br)));
                for (l, x) in br.iter().enumerate() {
                    if !x.is_zero() && *self.grade(l) <= rat_int(0) {
                        inner.add_scaled(&SuperPoly::var(self.block(l)), &Scalar::from_gauss(x.clone()));
                    }
                }
                let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(b));
                want = &want + &(&SuperPoly::var(self.ghost_bar(be)) * &inner).scale(&s);
                let fm = alg.form_of(&alg.basis(b), &alg.basis(a));
                if !fm.is_zero() {
                    let kk = &(&self.level * &Scalar::from_gauss(fm)) * &sign(self.odd(b));
                    want = &want - &SuperPoly::var(self.ghost_bar(be).with_order(1)).scale(&kk);
                }
            }
            if got.ok().as_ref() != Some(&want) {
                bad.push(a);
            }
        }
        bad
    }

    /// `{J_ā χ J_b̄} = s(a,b)s(a)J_{[a,b]} + kχ(a|b)` for `a, b` both in
    /// `g_{≤0}` or both in `g_{>0}`. Returns the pairs that disagree.
    pub fn check_block_brackets(&self) -> Vec<(usize, usize)> {
        let alg = &self.adapted.alg;
        let mut bad = Vec::new();
        let dim = self.adapted.dim();
        for a in 0..dim {
            for b in 0..dim {
                let lo = (*self.grade(a) <= rat_int(0)) == (*self.grade(b) <= rat_int(0));
                if !lo {
                    continue;
                }
                let got = bracket(&self.table, &self.building_block(a), &self.building_block(b));
                let br = alg.bracket(&alg.basis(a), &alg.basis(b));
                let mut lin = SuperPoly::zero();
                for (l, x) in br.iter().enumerate() {
                    if !x.is_zero() {
                        lin.add_scaled(&self.building_block(l), &Scalar::from_gauss(x.clone()));
                    }
                }
                let s = sign(self.odd(a) && self.odd(b)) * sign(self.odd(a));
                let mut want = ChiPoly::constant(lin.scale(&s));
                let fm = alg.form.get(a, b);
                if !fm.is_zero() {
                    want.add_at(1, &SuperPoly::constant(&self.level * &Scalar::from_gauss(fm.clone())));
                }
                if got != want {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Block variables `D^n J_ā`, `a ∈ g_{≤0}`, of weight at most `max`.
    fn block_vars(&self, max: &Rat) -> Vec<(Var, Rat)> {
        let mut out = Vec::new();
        for a in self.adapted.positions(|g| *g <= rat_int(0)) {
            let mut order = 0;
            loop {
                let v = self.block(a).with_order(order);
                let w = self.delta(&v);
                if w > *max {
                    break;
                }
                out.push((v, w));
                order += 1;
            }
        }
        out
    }

    fn filtration(&self, m: &Mono) -> Rat {
        self.mono_bigrade(m).0
    }

    fn is_kernel_block(&self, v: &Var) -> bool {
        v.family == Family::Block && self.adapted.is_kernel(v.index as usize)
    }

    /// Solves for `E_j = J_{ū_j} + R_j` with `d^c_{[0]}E_j = 0`, `R_j` in filtration
    /// `≥ g_j + ½`, Δ-homogeneous, with no monomial purely in `J_{g^f}`.
    pub fn solve_generator(&self, d: &SuperPoly, j: usize) -> Result<BrstGenerator, BrstError> {
        let ad = &self.adapted;
        let pos = ad.generator_position(j);
        let lead = SuperPoly::var(self.block(pos));
        let weight = self.delta(&self.block(pos));
        let parity = !self.odd(pos);
        let floor = self.grade(pos) + rat(1, 2);
        let ansatz: Vec<Mono> = monomials_of_weight(&self.block_vars(&weight), &weight)
            .into_iter()
            .filter(|m| m.is_odd() == parity && self.filtration(m) >= floor && !m.0.iter().all(|(v, _)| self.is_kernel_block(v)))
            .collect();
        let rhs = self.d0(d, &self.expand_blocks(&lead));
        let cols: Vec<SuperPoly> =
            ansatz.iter().map(|m| self.d0(d, &self.expand_blocks(&SuperPoly::term(m.clone(), Scalar::one())))).collect();
        let x = solve_scalar_system(ansatz.len(), poly_equations(&rhs, &cols))
            .map_err(|source| BrstError::Correction { chain: j, source })?;
        let mut value = lead;
        for (m, c) in ansatz.into_iter().zip(x) {
            value.add_term(m, &c);
        }
        Ok(BrstGenerator { chain: j, weight, parity, value })
    }

    /// All cohomology generators for the given `c`.
    pub fn cohomology(&self, c: &Scalar) -> Result<BrstCohomology, BrstError> {
        let d = self.differential(c);
        let n = self.adapted.chains.count();
        let gens = std::thread::scope(|s| {
            let hs: Vec<_> = (0..n)
                .map(|j| {
                    s.spawn({
                        let d = &d;
                        move || self.solve_generator(d, j)
                    })
                })
                .collect();
            hs.into_iter().map(|h| h.join().expect("solver thread panicked")).collect::<Result<Vec<_>, _>>()
        })?;
        Ok(BrstCohomology { cplx: self.clone(), c: c.clone(), d, gens })
    }

    /// Block polynomial written in original-basis block variables (for display).
    pub fn blocks_to_original(&self, p: &SuperPoly) -> (SuperPoly, NameTable) {
        let g = &self.adapted.original.g;
        let out = p.substitute(&mut |v| {
            if v.family != Family::Block {
                return None;
            }
            let mut s = SuperPoly::zero();
            for (l, c) in self.adapted.to_original[v.index as usize].iter().enumerate() {
                if !c.is_zero() {
                    s.add_scaled(
                        &SuperPoly::var(Var::gen(Family::Block, l, !g.parity[l]).with_order(v.order)),
                        &Scalar::from_gauss(c.clone()),
                    );
                }
            }
            Some(s)
        });
        let mut names = NameTable::default();
        for (l, lab) in g.labels.iter().enumerate() {
            names.insert(Family::Block, l, format!("J_{}", lab));
        }
        (out, names)
    }
}

/// One equation per monomial of `rhs + Σ x_i cols[i] = 0`.
pub(crate) fn poly_equations(rhs: &SuperPoly, cols: &[SuperPoly]) -> Vec<Equation> {
    let mut eqs: BTreeMap<Mono, Equation> = BTreeMap::new();
    for (i, p) in cols.iter().enumerate() {
        for (m, s) in p.terms() {
            eqs.entry(m.clone()).or_default().coeffs.insert(i, s.clone());
        }
    }
    for (m, s) in rhs.terms() {
        let e = eqs.entry(m.clone()).or_default();
        e.rhs = &e.rhs - s;
    }
    eqs.into_values().collect()
}

/// `E_j` as a polynomial in block variables.
#[derive(Clone, Debug)]
pub struct BrstGenerator {
    pub chain: usize,
    pub weight: Rat,
    /// Parity of `E_j` (`p(u_j) + 1`).
    pub parity: bool,
    pub value: SuperPoly,
}

/// `H⁰` of the complex at a fixed `c`, with its generators.
#[derive(Clone, Debug)]
pub struct BrstCohomology {
    pub cplx: BrstComplex,
    pub c: Scalar,
    pub d: SuperPoly,
    pub gens: Vec<BrstGenerator>,
}

impl BrstCohomology {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_var(&self, j: usize) -> Var {
        Var::gen(Family::SusyGen, j, self.gens[j].parity)
    }

    /// Evaluates a polynomial in `E`-symbols as a block polynomial.
    pub fn evaluate(&self, p: &SuperPoly) -> SuperPoly {
        p.substitute_gens(&mut |v| (v.family == Family::SusyGen).then(|| self.gens[v.index as usize].value.clone()))
            .expect("generator parities are consistent")
    }

    /// Rewrites a degree-zero cocycle given in block variables in `E`-coordinates.
    pub fn rewrite(&self, a: &SuperPoly) -> Result<SuperPoly, BrstError> {
        let ad = &self.cplx.adapted;
        let out = a.substitute(&mut |v| {
            if v.family != Family::Block {
                return None;
            }
            let (j, n) = ad.order[v.index as usize];
            Some(if n == 0 { SuperPoly::var(self.gen_var(j).with_order(v.order)) } else { SuperPoly::zero() })
        });
        if self.evaluate(&out) != *a {
            return Err(BrstError::NotReduced);
        }
        Ok(out)
    }

    /// `{E_i χ E_j}` in `E`-coordinates, computed in the complex.
    pub fn bracket(&self, i: usize, j: usize) -> Result<ChiPoly, BrstError> {
        let cx = &self.cplx;
        let a = cx.expand_blocks(&self.gens[i].value);
        let b = cx.expand_blocks(&self.gens[j].value);
        let v = bracket(&cx.table, &a, &b);
        let mut out = ChiPoly::zero();
        for (n, p) in &v.coeffs {
            out.add_at(*n, &self.rewrite(&cx.to_blocks(p)?)?);
        }
        Ok(out)
    }

    pub fn table(&self) -> Result<SusyTable, BrstError> {
        let gens: Vec<Var> = (0..self.rank()).map(|j| self.gen_var(j)).collect();
        let mut t = SusyTable::new(gens.clone());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                t.set(gens[i], gens[j], self.bracket(i, j)?);
            }
        }
        Ok(t)
    }

    /// Generators whose `d_{[0]}` does not vanish.
    pub fn non_closed(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&j| !self.cplx.d0(&self.d, &self.cplx.expand_blocks(&self.gens[j].value)).is_zero()).collect()
    }

    pub fn render_generator(&self, j: usize) -> String {
        let (p, names) = self.cplx.blocks_to_original(&self.gens[j].value);
        crate::superpoly::render(&p, &names)
    }

    pub fn generator_name(&self, j: usize) -> String {
        crate::superpoly::render_var(&self.gen_var(j), &self.cplx.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::catalog;
    use crate::susy_pva::{check_jacobi, check_skew};

    fn cplx(name: &str) -> BrstComplex {
        BrstComplex::new(&catalog(name).unwrap().graded().unwrap(), Scalar::k()).unwrap()
    }

    #[test]
    fn complex_table_is_a_susy_lca() {
        let cx = cplx("osp12");
        assert_eq!(cx.table.gens.len(), 9);
        assert!(check_skew(&cx.table).is_empty());
        assert!(check_jacobi(&cx.table).is_empty());
        let e = cx.adapted.position[&(0, 3)];
        let al = cx.nil.iter().position(|&a| a == e).unwrap();
        assert_eq!(cx.table.entry(&cx.ghost_bar(al), &cx.ghost(al)), ChiPoly::constant(SuperPoly::one()));
        assert!(cx.table.entry(&cx.current(0), &cx.ghost(al)).is_zero());
    }

    #[test]
    fn d_squares_to_zero_with_symbolic_c() {
        for name in ["osp12", "sl21"] {
            let cx = cplx(name);
            let (dd, bad) = cx.check_d_squared(&Scalar::c());
            assert!(dd.is_zero(), "{}", name);
            assert!(bad.is_empty(), "{} {:?}", name, bad);
        }
    }

    #[test]
    fn differential_on_generators() {
        for name in ["osp12", "sl21"] {
            let cx = cplx(name);
            assert!(
                cx.check_differential_on_generators(&Scalar::c()).is_empty(),
                "{} {:?}",
                name,
                cx.check_differential_on_generators(&Scalar::c())
            );
            assert!(cx.check_block_action(&Scalar::c()).is_empty(), "{}", name);
            assert!(cx.check_block_brackets().is_empty(), "{}", name);
        }
    }

    #[test]
    fn osp12_generator() {
        let cx = cplx("osp12");
        let h = cx.cohomology(&Scalar::i()).unwrap();
        assert_eq!(h.rank(), 1);
        assert_eq!(h.gens[0].weight, rat(3, 2));
        assert!(h.non_closed().is_empty());
        // F is not touched by the ghost part
        let f = cx.adapted.generator_position(0);
        assert_eq!(cx.building_block(f), SuperPoly::var(cx.current(f)));
        let t = h.table().unwrap();
        assert!(check_skew(&t).is_empty());
        assert!(check_jacobi(&t).is_empty());
    }
}

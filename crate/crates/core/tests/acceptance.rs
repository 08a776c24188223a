//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Checks are exact; time limits are wall-clock.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superw::brst::BrstComplex;
use superw::classical_w::{Method, ReductionContext};
use superw::cli::{chi_weight_ok, random_poly};
use superw::liesuper::{catalog, catalog_names, ChainKind, Chains, GradedAlgebra};
use superw::pva::{self, affine_table, bracket_weight_ok, BracketTable, LambdaPoly};
use superw::scalar::{rat, Scalar};
use superw::superpoly::{Family, SuperPoly, Var};
use superw::susy_pva::{self, reduce_to_pva, susy_affine_table, susy_current_table, SusyTable};
use superw::susy_w::{check_equivalence, SusyReductionContext};

const SUSY: [&str; 2] = ["osp12", "sl21"];
const SEED: u64 = 20240611;

fn graded(name: &str) -> GradedAlgebra {
    catalog(name).unwrap().graded().unwrap()
}

fn s(x: &str) -> Scalar {
    x.parse().unwrap()
}

/// Criterion 1: the sl2 generator and its self-bracket.
fn virasoro() -> Result<(), String> {
    let ga = graded("sl2");
    let w = ReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.solve_all().map_err(|e| e.to_string())?;
    if w.rank() != 1 {
        return Err(format!("rank {}", w.rank()));
    }
    let g = &ga.g;
    let v = |l: &str, order: u32| SuperPoly::var(Var::gen(Family::Affine, g.index_of(l).unwrap(), false).with_order(order));
    let want = &(&v("F", 0) + &v("H", 1).scale(&s("(1/2)k"))) + &(&v("H", 0) * &v("H", 0)).scale(&s("1/4"));
    let got = w.ctx.to_original(&w.gens[0].value);
    if got != want {
        return Err(format!("generator {}", w.render_generator(0)));
    }
    let t = SuperPoly::var(w.ctx.gen_var(0));
    let mut want = LambdaPoly::zero();
    want.add_at(0, &t.partial_t().scale(&Scalar::k()));
    want.add_at(1, &t.scale(&s("2k")));
    want.add_at(3, &SuperPoly::constant(s("-(1/2)k^3")));
    for m in [Method::Direct, Method::Closed] {
        let b = w.bracket(0, 0, m).map_err(|e| e.to_string())?;
        if b != want {
            return Err(format!("{:?} bracket {}", m, b.render(&w.ctx.names)));
        }
    }
    Ok(())
}

/// Criterion 2: linear parts and closed brackets for the even catalog algebras.
fn classical_equivalence() -> Result<(), String> {
    for name in ["sl2", "sl3-principal", "sl3-minimal"] {
        let rc = ReductionContext::new(&graded(name), Scalar::k()).map_err(|e| e.to_string())?;
        let w = rc.solve_all().map_err(|e| format!("{}: {}", name, e))?;
        for (j, g) in w.gens.iter().enumerate() {
            if g.value.filter(|m| rc.e_degree(m) == 1) != rc.gamma_linear(j) {
                return Err(format!("{}: linear part of generator {}", name, j));
            }
        }
        let bad = w.compare_methods().map_err(|e| e.to_string())?;
        if !bad.is_empty() {
            return Err(format!("{}: closed ≠ direct on {:?}", name, bad));
        }
    }
    Ok(())
}

/// Criterion 3: both chain tensor identities.
fn tensor_identities() -> Result<(), String> {
    for name in catalog_names() {
        let ga = graded(name);
        let mut kinds = vec![ChainKind::Even];
        if ga.osp.is_some() {
            kinds.push(ChainKind::Odd);
        }
        for kind in kinds {
            let ch = Chains::build(&ga, kind).map_err(|e| e.to_string())?;
            for (t, m) in ch.tensor_identity(&ga.g) {
                if m.rank() != 0 {
                    return Err(format!("{} {:?} at t = {}", name, kind, t));
                }
            }
        }
    }
    Ok(())
}

/// Criterion 4: `{d_χ d} = 0` with symbolic `c` and `d_[0]² = 0` on generators.
fn brst_soundness() -> Result<(), String> {
    for name in SUSY {
        let cx = BrstComplex::new(&graded(name), Scalar::k()).map_err(|e| e.to_string())?;
        let (dd, bad) = cx.check_d_squared(&Scalar::c());
        if !dd.is_zero() {
            return Err(format!("{}: {{d_χ d}} = {}", name, dd.render(&cx.names)));
        }
        if !bad.is_empty() {
            return Err(format!("{}: d_[0]² ≠ 0 on {} generators", name, bad.len()));
        }
    }
    Ok(())
}

/// `dim ker ad f`, computed directly from the structure constants.
fn dim_centralizer(ga: &GradedAlgebra) -> usize {
    let f = &ga.osp.as_ref().unwrap().f;
    ga.g.ad(f).kernel().len()
}

/// Criterion 5: SUSY W generators, membership, linear parts and closed brackets.
fn susy_w() -> Result<(), String> {
    for name in SUSY {
        let ga = graded(name);
        let rc = SusyReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?;
        let w = rc.solve_all().map_err(|e| format!("{}: {}", name, e))?;
        if w.rank() != dim_centralizer(&ga) {
            return Err(format!("{}: {} generators, dim g^f = {}", name, w.rank(), dim_centralizer(&ga)));
        }
        for (j, g) in w.gens.iter().enumerate() {
            if !rc.is_in_w(&g.value) {
                return Err(format!("{}: generator {} not in W", name, j));
            }
            if g.value.filter(|m| rc.e_degree(m) == 1) != rc.gamma_linear(j) {
                return Err(format!("{}: linear part of generator {}", name, j));
            }
        }
        let bad = w.compare_methods().map_err(|e| e.to_string())?;
        if !bad.is_empty() {
            return Err(format!("{}: closed ≠ direct on {:?}", name, bad));
        }
    }
    Ok(())
}

/// Criterion 6: reduction and BRST at `c = i` agree after the twist.
fn brst_equivalence() -> Result<(), String> {
    for name in SUSY {
        let ga = graded(name);
        let w = SusyReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.solve_all().map_err(|e| e.to_string())?;
        let h =
            BrstComplex::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.cohomology(&Scalar::i()).map_err(|e| e.to_string())?;
        let rep = check_equivalence(&w, &h).map_err(|e| e.to_string())?;
        if !rep.passed() {
            return Err(format!("{}: {:?}", name, rep));
        }
    }
    Ok(())
}

fn lambda_axioms(label: &str, t: &BracketTable) -> Result<(), String> {
    let (a, b) = (pva::check_skew(t).len(), pva::check_jacobi(t).len());
    if a + b > 0 {
        return Err(format!("{}: {} skew, {} Jacobi failures", label, a, b));
    }
    Ok(())
}

fn chi_axioms(label: &str, t: &SusyTable) -> Result<(), String> {
    let (a, b) = (susy_pva::check_skew(t).len(), susy_pva::check_jacobi(t).len());
    if a + b > 0 {
        return Err(format!("{}: {} skew, {} Jacobi failures", label, a, b));
    }
    lambda_axioms(&format!("{} reduced", label), &reduce_to_pva(t))
}

fn parts(p: &SuperPoly) -> Vec<SuperPoly> {
    let (e, o) = p.split_parity();
    [e, o].into_iter().filter(|q| !q.is_zero()).collect()
}

/// Criterion 7: axiom suites, reductions and randomized Leibniz/sesquilinearity.
fn axioms() -> Result<(), String> {
    for name in catalog_names() {
        let ga = graded(name);
        lambda_axioms(&format!("{} affine", name), &affine_table(&ga.g, &Scalar::k()))?;
        let w = ReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.solve_all().map_err(|e| e.to_string())?;
        for m in [Method::Direct, Method::Closed] {
            lambda_axioms(&format!("{} W {:?}", name, m), &w.table(m).map_err(|e| e.to_string())?)?;
        }
    }
    for name in SUSY {
        let ga = graded(name);
        chi_axioms(&format!("{} SUSY affine", name), &susy_affine_table(&ga.g, &Scalar::k()))?;
        chi_axioms(&format!("{} SUSY currents", name), &susy_current_table(&ga.g, &Scalar::k()))?;
        let w = SusyReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.solve_all().map_err(|e| e.to_string())?;
        for m in [Method::Direct, Method::Closed] {
            chi_axioms(&format!("{} SUSY W {:?}", name, m), &w.table(m).map_err(|e| e.to_string())?)?;
        }
        let h =
            BrstComplex::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.cohomology(&Scalar::i()).map_err(|e| e.to_string())?;
        chi_axioms(&format!("{} BRST cohomology", name), &h.table().map_err(|e| e.to_string())?)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for name in SUSY {
        let ga = graded(name);
        let lt = affine_table(&ga.g, &Scalar::k());
        let ct = susy_affine_table(&ga.g, &Scalar::k());
        for trial in 0..8 {
            let (a, b, c) = (
                random_poly(&mut rng, &lt.gens, 3, 2),
                random_poly(&mut rng, &lt.gens, 3, 2),
                random_poly(&mut rng, &lt.gens, 3, 2),
            );
            for a in parts(&a) {
                for b in parts(&b) {
                    let (x, y) = pva::sesquilinearity_defects(&lt, &a, &b);
                    if !x.is_zero() || !y.is_zero() {
                        return Err(format!("{} λ sesquilinearity, trial {}", name, trial));
                    }
                    for c in parts(&c) {
                        if !pva::right_leibniz_defect(&lt, &a, &b, &c).is_zero()
                            || !pva::left_leibniz_defect(&lt, &a, &b, &c).is_zero()
                        {
                            return Err(format!("{} λ Leibniz, trial {}", name, trial));
                        }
                    }
                }
            }
            let (a, b, c) = (
                random_poly(&mut rng, &ct.gens, 3, 2),
                random_poly(&mut rng, &ct.gens, 3, 2),
                random_poly(&mut rng, &ct.gens, 3, 2),
            );
            for a in parts(&a) {
                for b in parts(&b) {
                    let (x, y) = susy_pva::sesquilinearity_defects(&ct, &a, &b);
                    if !x.is_zero() || !y.is_zero() {
                        return Err(format!("{} χ sesquilinearity, trial {}", name, trial));
                    }
                    for c in parts(&c) {
                        if !susy_pva::right_leibniz_defect(&ct, &a, &b, &c).is_zero()
                            || !susy_pva::left_leibniz_defect(&ct, &a, &b, &c).is_zero()
                        {
                            return Err(format!("{} χ Leibniz, trial {}", name, trial));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Criterion 8: Δ-homogeneity of every generator and bracket.
fn weights() -> Result<(), String> {
    for name in catalog_names() {
        let ga = graded(name);
        let w = ReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.solve_all().map_err(|e| e.to_string())?;
        let wt = |v: &Var| w.ctx.weight(v);
        for (j, g) in w.gens.iter().enumerate() {
            // Δ of a variable of grade i is 1 - i; the generator weight is 1 + spin.
            if g.weight != rat(1, 1) + &w.ctx.adapted.chains.spins[j] || g.value.homogeneous_weight(&wt) != Some(g.weight.clone())
            {
                return Err(format!("{}: generator {}", name, j));
            }
            for (i, h) in w.gens.iter().enumerate() {
                let b = w.bracket(j, i, Method::Direct).map_err(|e| e.to_string())?;
                if !bracket_weight_ok(&b, &(&g.weight + &h.weight - rat(1, 1)), &wt) {
                    return Err(format!("{}: bracket ({}, {})", name, j, i));
                }
            }
        }
        if ga.osp.is_none() {
            continue;
        }
        let sw =
            SusyReductionContext::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.solve_all().map_err(|e| e.to_string())?;
        let wt = |v: &Var| sw.ctx.weight(v);
        for (j, g) in sw.gens.iter().enumerate() {
            if g.weight != rat(1, 2) + &sw.ctx.adapted.chains.spins[j]
                || g.value.homogeneous_weight(&wt) != Some(g.weight.clone())
            {
                return Err(format!("{}: SUSY generator {}", name, j));
            }
            for (i, h) in sw.gens.iter().enumerate() {
                let b = sw.bracket(j, i, Method::Direct).map_err(|e| e.to_string())?;
                if !chi_weight_ok(&b, &(&g.weight + &h.weight - rat(1, 2)), &wt) {
                    return Err(format!("{}: SUSY bracket ({}, {})", name, j, i));
                }
            }
        }
        let hc =
            BrstComplex::new(&ga, Scalar::k()).map_err(|e| e.to_string())?.cohomology(&Scalar::i()).map_err(|e| e.to_string())?;
        for (j, g) in hc.gens.iter().enumerate() {
            if g.value.homogeneous_weight(&|v: &Var| hc.cplx.delta(v)) != Some(g.weight.clone()) {
                return Err(format!("{}: BRST generator {}", name, j));
            }
        }
    }
    Ok(())
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Result<(), String>);
    let criteria: [Criterion; 8] = [
        (1, "Virasoro generator and bracket on sl2", 1, virasoro),
        (2, "closed formulas equal direct reduction on sl2, sl3 principal, sl3 minimal", 60, classical_equivalence),
        (3, "chain tensor identities on every catalog algebra", 5, tensor_identities),
        (4, "BRST differential squares to zero", 10, brst_soundness),
        (5, "SUSY W generators, membership, linear parts, closed brackets", 120, susy_w),
        (6, "reduction and BRST constructions agree", 120, brst_equivalence),
        (7, "axiom suites, reductions to λ-brackets, randomized Leibniz", 60, axioms),
        (8, "conformal-weight homogeneity", 60, weights),
    ];
    let mut failed = 0;
    for (n, label, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let verdict = match result {
            Ok(()) if took <= Duration::from_secs(limit) => Ok(()),
            Ok(()) => Err(format!("took {:.2?}, limit {} s", took, limit)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!("PASS criterion {}: {} ({:.2?})", n, label, took),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {} ({:.2?}): {}", n, label, took, e);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

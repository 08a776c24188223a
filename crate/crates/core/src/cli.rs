//! Command-line front end. [`run`] does all the work and returns the exit
//! status with the text to print, so the binary is a one-liner.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::brst::{BrstCohomology, BrstComplex};
use crate::classical_w::{Method, ReductionContext, WAlgebra};
use crate::liesuper::{catalog, catalog_names, AlgebraFile, ChainKind, Chains, GradedAlgebra};
use crate::pva::{self, affine_table, BracketTable};
use crate::scalar::{rat, Rat, Scalar};
use crate::superpoly::{SuperPoly, Var};
use crate::susy_pva::{self, reduce_to_pva, susy_affine_table, susy_current_table, ChiPoly, SusyTable};
use crate::susy_w::{check_equivalence, SusyReductionContext, SusyWAlgebra};

/// Exit status and the document to print on stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

#[derive(Parser, Debug)]
#[command(name = "superw", version, about = "Classical and supersymmetric W-algebras of Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Catalog name or path to an algebra JSON file.
    #[arg(long, global = true, default_value = "sl2")]
    algebra: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Level: `k` for symbolic, or a number such as `3/2`.
    #[arg(long, global = true, default_value = "k")]
    k: String,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Only report generators (and brackets between them) of conformal weight at most this.
    #[arg(long, global = true)]
    max_weight: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Skew,
    Jacobi,
    #[value(name = "chain-identity")]
    ChainIdentity,
    #[value(name = "odd-chain-identity")]
    OddChainIdentity,
    #[value(name = "closed-brackets")]
    ClosedBrackets,
    #[value(name = "susy-closed-brackets")]
    SusyClosedBrackets,
    DSquared,
    #[value(name = "brst-equivalence")]
    BrstEquivalence,
    #[value(name = "susy-to-pva")]
    SusyToPva,
    Leibniz,
    Weights,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in algebras.
    Catalog,
    /// Check the algebra axioms, the triples and the grading.
    Validate,
    /// Generators of the classical W-algebra.
    Generators,
    /// λ-bracket of two classical W generators.
    Bracket {
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
    /// All λ-brackets of classical W generators.
    BracketTable {
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Checks on the BRST complex: `{d_χ d} = 0`, `d` on generators, building blocks.
    BrstCheck {
        /// Value of `c`; `c` keeps it symbolic.
        #[arg(long, default_value = "c")]
        c: String,
    },
    /// Cohomology generators of the BRST complex and their brackets.
    BrstGenerators {
        #[arg(long, default_value = "i")]
        c: String,
    },
    /// Generators of the SUSY W-algebra.
    SusyGenerators,
    /// χ-bracket of two SUSY W generators.
    SusyBracket {
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
    /// All χ-brackets of SUSY W generators.
    SusyBracketTable {
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
}

/// An error before any verification ran (exit status 2) or while computing (exit status 1).
enum Failure {
    Input(String),
    Compute(String),
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

#[derive(Clone, Debug)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, failures: usize, total: usize) -> Check {
    Check {
        name: name.into(),
        passed: failures == 0,
        detail: if failures == 0 { format!("{} checked", total) } else { format!("{} of {} failed", failures, total) },
    }
}

/// What a command produced: either data or a list of checks.
enum Report {
    Data { text: Vec<String>, value: Value },
    Checks(Vec<Check>),
}

struct Ctx {
    ga: GradedAlgebra,
    level: Scalar,
    seed: u64,
    max_weight: Option<Rat>,
}

fn load_algebra(source: &str) -> Result<GradedAlgebra, Failure> {
    let file = if catalog_names().contains(&source) {
        catalog(source).map_err(input)?
    } else if Path::new(source).exists() {
        AlgebraFile::read(Path::new(source)).map_err(input)?
    } else {
        return Err(Failure::Input(format!(
            "{:?} is neither a catalog name ({}) nor a readable file",
            source,
            catalog_names().join(", ")
        )));
    };
    file.graded().map_err(input)
}

fn parse_scalar(flag: &str, s: &str) -> Result<Scalar, Failure> {
    s.parse::<Scalar>().map_err(|e| Failure::Input(format!("--{}: {}", flag, e)))
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    s.trim().parse::<Rat>().map_err(|e| Failure::Input(format!("--max-weight: {:?}: {}", s, e)))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, output: e.render().to_string() };
        }
    };
    let format = cli.format;
    let command = command_name(&cli.command);
    let result = execute(&cli);
    match result {
        Ok(Report::Data { text, value }) => {
            let output = match format {
                Format::Text => text.join("\n") + "\n",
                Format::Structured => document(command, &cli.algebra, "ok", value),
            };
            Outcome { code: 0, output }
        }
        Ok(Report::Checks(checks)) => {
            let ok = checks.iter().all(|c| c.passed);
            let output = match format {
                Format::Text => {
                    let mut s = String::new();
                    for c in &checks {
                        s.push_str(&format!("{} {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
                    }
                    s
                }
                Format::Structured => {
                    let v: Vec<Value> =
                        checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect();
                    document(command, &cli.algebra, if ok { "pass" } else { "fail" }, json!(v))
                }
            };
            Outcome { code: if ok { 0 } else { 1 }, output }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (2, m),
                Failure::Compute(m) => (1, m),
            };
            let output = match format {
                Format::Text => format!("error: {}\n", msg),
                Format::Structured => document(command, &cli.algebra, "error", json!(msg)),
            };
            Outcome { code, output }
        }
    }
}

fn document(command: &str, algebra: &str, status: &str, result: Value) -> String {
    let doc = json!({"command": command, "algebra": algebra, "status": status, "result": result});
    serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog => "catalog",
        Command::Validate => "validate",
        Command::Generators => "generators",
        Command::Bracket { .. } => "bracket",
        Command::BracketTable { .. } => "bracket-table",
        Command::Verify { .. } => "verify",
        Command::BrstCheck { .. } => "brst-check",
        Command::BrstGenerators { .. } => "brst-generators",
        Command::SusyGenerators => "susy-generators",
        Command::SusyBracket { .. } => "susy-bracket",
        Command::SusyBracketTable { .. } => "susy-bracket-table",
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    if let Command::Catalog = cli.command {
        let names: Vec<String> = catalog_names().iter().map(|s| s.to_string()).collect();
        return Ok(Report::Data { text: names.clone(), value: json!(names) });
    }
    let ctx = Ctx {
        ga: load_algebra(&cli.algebra)?,
        level: parse_scalar("k", &cli.k)?,
        seed: cli.seed,
        max_weight: cli.max_weight.as_deref().map(parse_rat).transpose()?,
    };
    match &cli.command {
        Command::Catalog => unreachable!(),
        Command::Validate => Ok(validate(&ctx)),
        Command::Generators => classical_generators(&ctx),
        Command::Bracket { i, j, method } => classical_brackets(&ctx, Some((*i, *j)), (*method).into()),
        Command::BracketTable { method } => classical_brackets(&ctx, None, (*method).into()),
        Command::Verify { suite } => verify(&ctx, *suite).map(Report::Checks),
        Command::BrstCheck { c } => brst_check(&ctx, &parse_scalar("c", c)?).map(Report::Checks),
        Command::BrstGenerators { c } => brst_generators(&ctx, &parse_scalar("c", c)?),
        Command::SusyGenerators => susy_generators(&ctx),
        Command::SusyBracket { i, j, method } => susy_brackets(&ctx, Some((*i, *j)), (*method).into()),
        Command::SusyBracketTable { method } => susy_brackets(&ctx, None, (*method).into()),
    }
}

fn validate(ctx: &Ctx) -> Report {
    let ga = &ctx.ga;
    let mut checks = vec![Check {
        name: "algebra axioms and triples".into(),
        passed: true,
        detail: format!("{}, dim {}", ga.g.name, ga.dim()),
    }];
    let grades: Vec<String> = ga.g.labels.iter().zip(&ga.grading).map(|(l, g)| format!("{}:{}", l, g)).collect();
    checks.push(Check { name: "grading".into(), passed: true, detail: grades.join(" ") });
    match Chains::build(ga, ChainKind::Even) {
        Ok(c) => checks.push(Check { name: "sl2 dual bases".into(), passed: true, detail: format!("dim g^F = {}", c.count()) }),
        Err(e) => checks.push(Check { name: "sl2 dual bases".into(), passed: false, detail: e.to_string() }),
    }
    if ga.osp.is_some() {
        match Chains::build(ga, ChainKind::Odd) {
            Ok(c) => checks.push(Check {
                name: "osp(1|2) dual bases".into(),
                passed: true,
                detail: format!("dim g^f = {}", c.count()),
            }),
            Err(e) => checks.push(Check { name: "osp(1|2) dual bases".into(), passed: false, detail: e.to_string() }),
        }
    }
    Report::Checks(checks)
}

fn require_osp(ctx: &Ctx) -> Result<(), Failure> {
    if ctx.ga.osp.is_none() {
        return Err(Failure::Input(format!("{} has no osp(1|2) triple", ctx.ga.g.name)));
    }
    Ok(())
}

fn solve_classical(ctx: &Ctx) -> Result<WAlgebra, Failure> {
    ReductionContext::new(&ctx.ga, ctx.level.clone()).map_err(input)?.solve_all().map_err(compute)
}

fn solve_susy(ctx: &Ctx) -> Result<SusyWAlgebra, Failure> {
    require_osp(ctx)?;
    SusyReductionContext::new(&ctx.ga, ctx.level.clone()).map_err(input)?.solve_all().map_err(compute)
}

fn solve_brst(ctx: &Ctx, c: &Scalar) -> Result<BrstCohomology, Failure> {
    require_osp(ctx)?;
    BrstComplex::new(&ctx.ga, ctx.level.clone()).map_err(input)?.cohomology(c).map_err(compute)
}

fn within(ctx: &Ctx, w: &Rat) -> bool {
    ctx.max_weight.as_ref().is_none_or(|m| w <= m)
}

fn generator_record(name: String, weight: &Rat, parity: bool, value: &SuperPoly, rendered: String) -> (String, Value) {
    let text = format!("{} = {}    [weight {}, {}]", name, rendered, weight, if parity { "odd" } else { "even" });
    let v = json!({"name": name, "weight": weight.to_string(), "odd": parity, "rendered": rendered, "value": value});
    (text, v)
}

fn collect(items: Vec<(String, Value)>) -> Report {
    let (text, values): (Vec<String>, Vec<Value>) = items.into_iter().unzip();
    Report::Data { text, value: Value::Array(values) }
}

fn classical_generators(ctx: &Ctx) -> Result<Report, Failure> {
    let w = solve_classical(ctx)?;
    let items = w
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| within(ctx, &g.weight))
        .map(|(j, g)| {
            generator_record(w.generator_name(j), &g.weight, g.parity, &w.ctx.to_original(&g.value), w.render_generator(j))
        })
        .collect();
    Ok(collect(items))
}

fn pairs(rank: usize, only: Option<(usize, usize)>, keep: impl Fn(usize) -> bool) -> Result<Vec<(usize, usize)>, Failure> {
    match only {
        Some((i, j)) => {
            if i >= rank || j >= rank {
                return Err(Failure::Input(format!("generator index out of range (rank {})", rank)));
            }
            Ok(vec![(i, j)])
        }
        None => Ok((0..rank).flat_map(|i| (0..rank).map(move |j| (i, j))).filter(|&(i, j)| keep(i) && keep(j)).collect()),
    }
}

fn bracket_record(a: String, b: String, sym: &str, rendered: String, value: Value) -> (String, Value) {
    (format!("{{{} {} {}}} = {}", a, sym, b, rendered), json!({"left": a, "right": b, "rendered": rendered, "value": value}))
}

fn classical_brackets(ctx: &Ctx, only: Option<(usize, usize)>, method: Method) -> Result<Report, Failure> {
    let w = solve_classical(ctx)?;
    let mut items = Vec::new();
    for (i, j) in pairs(w.rank(), only, |j| within(ctx, &w.gens[j].weight))? {
        let v = w.bracket(i, j, method).map_err(compute)?;
        items.push(bracket_record(w.generator_name(i), w.generator_name(j), "λ", v.render(&w.ctx.names), json!(v)));
    }
    Ok(collect(items))
}

fn susy_generators(ctx: &Ctx) -> Result<Report, Failure> {
    let w = solve_susy(ctx)?;
    let items = w
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| within(ctx, &g.weight))
        .map(|(j, g)| {
            generator_record(w.generator_name(j), &g.weight, g.parity, &w.ctx.to_original(&g.value), w.render_generator(j))
        })
        .collect();
    Ok(collect(items))
}

fn susy_brackets(ctx: &Ctx, only: Option<(usize, usize)>, method: Method) -> Result<Report, Failure> {
    let w = solve_susy(ctx)?;
    let mut items = Vec::new();
    for (i, j) in pairs(w.rank(), only, |j| within(ctx, &w.gens[j].weight))? {
        let v = w.bracket(i, j, method).map_err(compute)?;
        items.push(bracket_record(w.generator_name(i), w.generator_name(j), "χ", v.render(&w.ctx.names), json!(v)));
    }
    Ok(collect(items))
}

fn brst_generators(ctx: &Ctx, c: &Scalar) -> Result<Report, Failure> {
    let h = solve_brst(ctx, c)?;
    let mut items = Vec::new();
    for (j, g) in h.gens.iter().enumerate().filter(|(_, g)| within(ctx, &g.weight)) {
        let (value, _) = h.cplx.blocks_to_original(&g.value);
        items.push(generator_record(h.generator_name(j), &g.weight, g.parity, &value, h.render_generator(j)));
    }
    let names = h.cplx.names.clone();
    for (i, j) in pairs(h.rank(), None, |j| within(ctx, &h.gens[j].weight))? {
        let v = h.bracket(i, j).map_err(compute)?;
        items.push(bracket_record(h.generator_name(i), h.generator_name(j), "χ", v.render(&names), json!(v)));
    }
    Ok(collect(items))
}

fn brst_check(ctx: &Ctx, c: &Scalar) -> Result<Vec<Check>, Failure> {
    require_osp(ctx)?;
    let cx = BrstComplex::new(&ctx.ga, ctx.level.clone()).map_err(input)?;
    let n = cx.generators().len();
    let (dd, bad) = cx.check_d_squared(c);
    let mut checks = vec![
        Check {
            name: format!("{{d_χ d}} = 0 (c = {})", c),
            passed: dd.is_zero(),
            detail: if dd.is_zero() { "zero".into() } else { dd.render(&cx.names) },
        },
        check("d_[0]² = 0 on generators", bad.len(), n),
    ];
    let wrong = cx.check_differential_on_generators(c);
    checks.push(check("d_[0] on generators matches closed forms", wrong.len(), n));
    let blocks = cx.adapted.positions(|g| *g <= rat(0, 1)).len();
    checks.push(check("d_[0] on building blocks", cx.check_block_action(c).len(), blocks));
    checks.push(check("building block brackets", cx.check_block_brackets().len(), blocks * blocks));
    Ok(checks)
}

fn pva_axioms(name: &str, t: &BracketTable, skew: bool) -> Check {
    let n = t.gens.len();
    if skew {
        check(format!("skew-symmetry: {}", name), pva::check_skew(t).len(), n * n)
    } else {
        check(format!("Jacobi: {}", name), pva::check_jacobi(t).len(), n * n * n)
    }
}

fn susy_axioms(name: &str, t: &SusyTable, skew: bool) -> Check {
    let n = t.gens.len();
    if skew {
        check(format!("skew-symmetry: {}", name), susy_pva::check_skew(t).len(), n * n)
    } else {
        check(format!("Jacobi: {}", name), susy_pva::check_jacobi(t).len(), n * n * n)
    }
}

fn axiom_suite(ctx: &Ctx, skew: bool) -> Result<Vec<Check>, Failure> {
    let ga = &ctx.ga;
    let mut out = vec![pva_axioms("affine", &affine_table(&ga.g, &ctx.level), skew)];
    let w = solve_classical(ctx)?;
    for (m, label) in [(Method::Direct, "W direct"), (Method::Closed, "W closed")] {
        out.push(pva_axioms(label, &w.table(m).map_err(compute)?, skew));
    }
    if ga.osp.is_some() {
        out.push(susy_axioms("SUSY affine", &susy_affine_table(&ga.g, &ctx.level), skew));
        out.push(susy_axioms("SUSY currents", &susy_current_table(&ga.g, &ctx.level), skew));
        let sw = solve_susy(ctx)?;
        for (m, label) in [(Method::Direct, "SUSY W direct"), (Method::Closed, "SUSY W closed")] {
            out.push(susy_axioms(label, &sw.table(m).map_err(compute)?, skew));
        }
    }
    Ok(out)
}

fn identity_check(name: &str, ga: &GradedAlgebra, kind: ChainKind) -> Result<Check, Failure> {
    let ch = Chains::build(ga, kind).map_err(input)?;
    let res = ch.tensor_identity(&ga.g);
    let bad = res.iter().filter(|(_, m)| m.rank() != 0).count();
    Ok(check(name, bad, res.len()))
}

fn weight_checks(ctx: &Ctx) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    let w = solve_classical(ctx)?;
    let wt = |v: &Var| w.ctx.weight(v);
    let bad = w.gens.iter().filter(|g| g.value.homogeneous_weight(&wt) != Some(g.weight.clone())).count();
    out.push(check("W generators homogeneous of weight 1 + spin", bad, w.rank()));
    let t = w.table(Method::Direct).map_err(compute)?;
    let mut bad = 0;
    for (i, a) in t.gens.iter().enumerate() {
        for (j, b) in t.gens.iter().enumerate() {
            let expected = &w.gens[i].weight + &w.gens[j].weight - rat(1, 1);
            if !pva::bracket_weight_ok(&t.entry(a, b), &expected, &wt) {
                bad += 1;
            }
        }
    }
    out.push(check("W brackets homogeneous", bad, w.rank() * w.rank()));
    if ctx.ga.osp.is_some() {
        let sw = solve_susy(ctx)?;
        let wt = |v: &Var| sw.ctx.weight(v);
        let bad = sw.gens.iter().filter(|g| g.value.homogeneous_weight(&wt) != Some(g.weight.clone())).count();
        out.push(check("SUSY W generators homogeneous of weight 1/2 + spin", bad, sw.rank()));
        let t = sw.table(Method::Direct).map_err(compute)?;
        let mut bad = 0;
        for (i, a) in t.gens.iter().enumerate() {
            for (j, b) in t.gens.iter().enumerate() {
                let expected = &sw.gens[i].weight + &sw.gens[j].weight - rat(1, 2);
                if !chi_weight_ok(&t.entry(a, b), &expected, &wt) {
                    bad += 1;
                }
            }
        }
        out.push(check("SUSY W brackets homogeneous", bad, sw.rank() * sw.rank()));
        let h = solve_brst(ctx, &Scalar::i())?;
        let bad =
            h.gens.iter().filter(|g| g.value.homogeneous_weight(&|v: &Var| h.cplx.delta(v)) != Some(g.weight.clone())).count();
        out.push(check("BRST generators homogeneous", bad, h.rank()));
    }
    Ok(out)
}

/// `{a_χ b}` homogeneous of weight `expected` with `χ` of weight `½`.
pub fn chi_weight_ok(v: &ChiPoly, expected: &Rat, weight: &impl Fn(&Var) -> Rat) -> bool {
    v.coeffs.iter().all(|(n, p)| {
        let target = expected - rat(*n as i64, 2);
        p.weights(weight).iter().all(|w| *w == target)
    })
}

/// A random polynomial in `vars` with derivatives up to `max_order` and degree at most `max_degree`.
pub fn random_poly(rng: &mut impl Rng, vars: &[Var], max_degree: u32, max_order: u32) -> SuperPoly {
    let mut out = SuperPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = SuperPoly::constant(Scalar::int(rng.gen_range(-3..=3)));
        for _ in 0..rng.gen_range(0..=max_degree) {
            let v = vars[rng.gen_range(0..vars.len())].with_order(rng.gen_range(0..=max_order));
            term = &term * &SuperPoly::var(v);
        }
        out = &out + &term;
    }
    out
}

/// Leibniz rules and sesquilinearity on random polynomials.
fn leibniz_checks(ctx: &Ctx) -> Vec<Check> {
    const TRIALS: usize = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let ga = &ctx.ga;
    let mut out = Vec::new();
    let t = affine_table(&ga.g, &ctx.level);
    let (mut sesq, mut right, mut left) = (0, 0, 0);
    for _ in 0..TRIALS {
        let a = random_poly(&mut rng, &t.gens, 3, 2);
        let b = random_poly(&mut rng, &t.gens, 3, 2);
        let c = random_poly(&mut rng, &t.gens, 2, 2);
        let (mut s_ok, mut r_ok, mut l_ok) = (true, true, true);
        for a in homogeneous_parts(&a) {
            for b in homogeneous_parts(&b) {
                let (x, y) = pva::sesquilinearity_defects(&t, &a, &b);
                s_ok &= x.is_zero() && y.is_zero();
                for c in homogeneous_parts(&c) {
                    r_ok &= pva::right_leibniz_defect(&t, &a, &b, &c).is_zero();
                    l_ok &= pva::left_leibniz_defect(&t, &a, &b, &c).is_zero();
                }
            }
        }
        sesq += usize::from(!s_ok);
        right += usize::from(!r_ok);
        left += usize::from(!l_ok);
    }
    out.push(check("sesquilinearity (λ)", sesq, TRIALS));
    out.push(check("right Leibniz (λ)", right, TRIALS));
    out.push(check("left Leibniz (λ)", left, TRIALS));
    if ga.osp.is_some() {
        let t = susy_affine_table(&ga.g, &ctx.level);
        let (mut sesq, mut right, mut left) = (0, 0, 0);
        for _ in 0..TRIALS {
            let a = random_poly(&mut rng, &t.gens, 3, 2);
            let b = random_poly(&mut rng, &t.gens, 3, 2);
            let c = random_poly(&mut rng, &t.gens, 2, 2);
            let (mut s_ok, mut r_ok, mut l_ok) = (true, true, true);
            for a in homogeneous_parts(&a) {
                for b in homogeneous_parts(&b) {
                    let (x, y) = susy_pva::sesquilinearity_defects(&t, &a, &b);
                    s_ok &= x.is_zero() && y.is_zero();
                    for c in homogeneous_parts(&c) {
                        r_ok &= susy_pva::right_leibniz_defect(&t, &a, &b, &c).is_zero();
                        l_ok &= susy_pva::left_leibniz_defect(&t, &a, &b, &c).is_zero();
                    }
                }
            }
            sesq += usize::from(!s_ok);
            right += usize::from(!r_ok);
            left += usize::from(!l_ok);
        }
        out.push(check("sesquilinearity (χ)", sesq, TRIALS));
        out.push(check("right Leibniz (χ)", right, TRIALS));
        out.push(check("left Leibniz (χ)", left, TRIALS));
    }
    out
}

/// Even and odd parts, dropping zero ones.
fn homogeneous_parts(p: &SuperPoly) -> Vec<SuperPoly> {
    let (e, o) = p.split_parity();
    [e, o].into_iter().filter(|q| !q.is_zero()).collect()
}

fn verify(ctx: &Ctx, suite: Suite) -> Result<Vec<Check>, Failure> {
    let ga = &ctx.ga;
    match suite {
        Suite::Skew => axiom_suite(ctx, true),
        Suite::Jacobi => axiom_suite(ctx, false),
        Suite::ChainIdentity => Ok(vec![identity_check("sl2 chain tensor identity", ga, ChainKind::Even)?]),
        Suite::OddChainIdentity => {
            require_osp(ctx)?;
            Ok(vec![identity_check("osp(1|2) chain tensor identity", ga, ChainKind::Odd)?])
        }
        Suite::ClosedBrackets => {
            let rc = ReductionContext::new(ga, ctx.level.clone()).map_err(input)?;
            let w = rc.solve_all().map_err(compute)?;
            let n = w.rank();
            Ok(vec![
                check("generators solved, linear parts match the chain formula", 0, n),
                check("reduced affine brackets of dual bases", rc.check_dual_bracket_cases().len(), ga.dim() * ga.dim()),
                check("closed brackets equal direct brackets", w.compare_methods().map_err(compute)?.len(), n * n),
            ])
        }
        Suite::SusyClosedBrackets => {
            require_osp(ctx)?;
            let rc = SusyReductionContext::new(ga, ctx.level.clone()).map_err(input)?;
            let w = rc.solve_all().map_err(compute)?;
            let n = w.rank();
            let members = w.gens.iter().filter(|g| !rc.is_in_w(&g.value)).count();
            Ok(vec![
                check("generators solved, linear parts match the chain formula", 0, n),
                check("generators lie in W", members, n),
                check("reduced SUSY affine brackets of dual bases", rc.check_dual_bracket_cases().len(), ga.dim() * ga.dim()),
                check("closed brackets equal direct brackets", w.compare_methods().map_err(compute)?.len(), n * n),
            ])
        }
        Suite::DSquared => {
            let mut out = brst_check(ctx, &Scalar::c())?;
            out.truncate(2);
            Ok(out)
        }
        Suite::BrstEquivalence => {
            let w = solve_susy(ctx)?;
            let h = solve_brst(ctx, &Scalar::i())?;
            let rep = check_equivalence(&w, &h).map_err(compute)?;
            let n = w.rank();
            Ok(vec![
                check("generator counts agree", usize::from(n != h.rank()), 1),
                check("generators agree after the twist", rep.generator_mismatches.len(), n),
                check("brackets agree after the twist", rep.bracket_mismatches.len(), n * n),
                Check {
                    name: "bracket/differential correspondence".into(),
                    passed: rep.correspondence_failures.is_empty(),
                    detail: if rep.correspondence_failures.is_empty() {
                        "all probes".into()
                    } else {
                        rep.correspondence_failures.join(", ")
                    },
                },
            ])
        }
        Suite::SusyToPva => {
            require_osp(ctx)?;
            let mut tables = vec![
                ("SUSY affine", susy_affine_table(&ga.g, &ctx.level)),
                ("SUSY currents", susy_current_table(&ga.g, &ctx.level)),
            ];
            let w = solve_susy(ctx)?;
            tables.push(("SUSY W", w.table(Method::Direct).map_err(compute)?));
            let h = solve_brst(ctx, &Scalar::i())?;
            tables.push(("BRST cohomology", h.table().map_err(compute)?));
            let mut out = Vec::new();
            for (name, t) in tables {
                let r = reduce_to_pva(&t);
                out.push(pva_axioms(&format!("{} reduced", name), &r, true));
                out.push(pva_axioms(&format!("{} reduced", name), &r, false));
            }
            Ok(out)
        }
        Suite::Leibniz => Ok(leibniz_checks(ctx)),
        Suite::Weights => weight_checks(ctx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pva::LambdaPoly;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("superw").chain(args.iter().copied()))
    }

    #[test]
    fn virasoro_generator() {
        let o = go(&["generators", "--algebra", "sl2"]);
        assert_eq!(o.code, 0, "{}", o.output);
        assert!(o.output.starts_with("ω_F = "), "{}", o.output);
    }

    #[test]
    fn input_errors_exit_with_two() {
        assert_eq!(go(&["generators", "--algebra", "nope"]).code, 2);
        assert_eq!(go(&["generators", "--k", "(("]).code, 2);
        assert_eq!(go(&["bracket", "5", "0"]).code, 2);
        assert_eq!(go(&["susy-generators", "--algebra", "sl3-principal"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
    }

    #[test]
    fn structured_output_round_trips() {
        let o = go(&["bracket", "0", "0", "--format", "structured"]);
        assert_eq!(o.code, 0);
        let doc: Value = serde_json::from_str(&o.output).unwrap();
        let v: LambdaPoly = serde_json::from_value(doc["result"][0]["value"].clone()).unwrap();
        assert_eq!(v.coeffs.keys().copied().collect::<Vec<_>>(), vec![0, 1, 3]);
        let o2 = go(&["bracket", "0", "0", "--format", "structured"]);
        assert_eq!(o, o2);
    }

    #[test]
    fn suites_pass_on_osp12() {
        for s in ["d-squared", "brst-equivalence", "susy-closed-brackets", "leibniz", "weights"] {
            let o = go(&["verify", "--algebra", "osp12", "--suite", s]);
            assert_eq!(o.code, 0, "{}: {}", s, o.output);
        }
    }
}

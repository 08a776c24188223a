use num_traits::Signed;

use super::algebra::{vec_is_zero, vec_neg, vec_scale, LieSuperalgebra, Vector, Violation};
use super::AlgebraError;
use crate::scalar::{rat, rat_int, Gauss, Rat};

/// An sl₂-triple `{E, H, F}` with `[H,E]=2E`, `[H,F]=-2F`, `[E,F]=H`.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: Vector,
    pub h: Vector,
    pub f: Vector,
}

/// An osp(1|2)-quintuple `{E, e, H, f, F}`.
#[derive(Clone, Debug)]
pub struct OspTriple {
    pub big_e: Vector,
    pub e: Vector,
    pub h: Vector,
    pub f: Vector,
    pub big_f: Vector,
}

impl OspTriple {
    pub fn sl2(&self) -> Sl2Triple {
        Sl2Triple { e: self.big_e.clone(), h: self.h.clone(), f: self.big_f.clone() }
    }
}

fn expect(g: &LieSuperalgebra, out: &mut Vec<Violation>, what: &str, lhs: Vector, rhs: Vector) {
    if lhs != rhs {
        out.push(Violation { check: "triple", detail: format!("{}: got {}, expected {}", what, g.render(&lhs), g.render(&rhs)) });
    }
}

fn expect_form(out: &mut Vec<Violation>, what: &str, got: Gauss, want: i64) {
    if got != Gauss::int(want) {
        out.push(Violation { check: "triple normalization", detail: format!("{} = {}, expected {}", what, got, want) });
    }
}

fn expect_parity(g: &LieSuperalgebra, out: &mut Vec<Violation>, name: &str, v: &Vector, odd: bool) {
    if vec_is_zero(v) || g.parity_of(v) != Some(odd) {
        out.push(Violation {
            check: "triple parity",
            detail: format!("{} must be a nonzero {} element", name, if odd { "odd" } else { "even" }),
        });
    }
}

pub fn check_sl2(g: &LieSuperalgebra, t: &Sl2Triple) -> Vec<Violation> {
    let mut out = Vec::new();
    for (n, v) in [("E", &t.e), ("H", &t.h), ("F", &t.f)] {
        expect_parity(g, &mut out, n, v, false);
    }
    let two = Gauss::int(2);
    expect(g, &mut out, "[H,E]", g.bracket(&t.h, &t.e), vec_scale(&t.e, &two));
    expect(g, &mut out, "[H,F]", g.bracket(&t.h, &t.f), vec_scale(&t.f, &-&two));
    expect(g, &mut out, "[E,F]", g.bracket(&t.e, &t.f), t.h.clone());
    expect_form(&mut out, "(E|F)", g.form_of(&t.e, &t.f), 1);
    expect_form(&mut out, "(H|H)", g.form_of(&t.h, &t.h), 2);
    out
}

pub fn check_osp(g: &LieSuperalgebra, t: &OspTriple) -> Vec<Violation> {
    let mut out = check_sl2(g, &t.sl2());
    expect_parity(g, &mut out, "e", &t.e, true);
    expect_parity(g, &mut out, "f", &t.f, true);
    let two = Gauss::int(2);
    expect(g, &mut out, "[H,e]", g.bracket(&t.h, &t.e), t.e.clone());
    expect(g, &mut out, "[H,f]", g.bracket(&t.h, &t.f), vec_neg(&t.f));
    expect(g, &mut out, "[e,e]", g.bracket(&t.e, &t.e), vec_scale(&t.big_e, &two));
    expect(g, &mut out, "[f,f]", g.bracket(&t.f, &t.f), vec_scale(&t.big_f, &-&two));
    expect(g, &mut out, "[e,f]", g.bracket(&t.e, &t.f), vec_neg(&t.h));
    expect(g, &mut out, "[F,e]", g.bracket(&t.big_f, &t.e), t.f.clone());
    expect(g, &mut out, "[E,f]", g.bracket(&t.big_e, &t.f), t.e.clone());
    expect_form(&mut out, "(e|f)", g.form_of(&t.e, &t.f), -2);
    expect_form(&mut out, "(f|e)", g.form_of(&t.f, &t.e), 2);
    out
}

/// Eigenvalues of `ad H/2` on the basis, or the first basis vector that is
/// not an eigenvector.
pub fn grading_from(g: &LieSuperalgebra, h: &Vector) -> Result<Vec<Rat>, usize> {
    let mut out = Vec::with_capacity(g.dim());
    for i in 0..g.dim() {
        let img = g.bracket(h, &g.basis(i));
        for (j, x) in img.iter().enumerate() {
            if j != i && !x.is_zero() {
                return Err(i);
            }
        }
        let ev = &img[i];
        if !ev.is_real() {
            return Err(i);
        }
        out.push(&ev.re / rat_int(2));
    }
    Ok(out)
}

/// A Lie superalgebra with its basis ordered by `ad H/2`-grading and a
/// validated sl₂ (and optionally osp(1|2)) triple.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub g: LieSuperalgebra,
    pub grading: Vec<Rat>,
    pub sl2: Sl2Triple,
    pub osp: Option<OspTriple>,
}

impl GradedAlgebra {
    /// Validates everything, then reorders the basis by (grading, original order).
    pub fn new(g: LieSuperalgebra, sl2: Sl2Triple, osp: Option<OspTriple>) -> Result<Self, AlgebraError> {
        let mut report = g.validate();
        report.extend(check_sl2(&g, &sl2));
        if let Some(o) = &osp {
            report.extend(check_osp(&g, o));
            if o.h != sl2.h {
                report.push(Violation { check: "triple", detail: "osp(1|2) H differs from sl2 H".into() });
            }
        }
        if !report.is_empty() {
            let text: Vec<String> = report.iter().map(|v| v.to_string()).collect();
            return Err(AlgebraError::Invalid(text.join("; ")));
        }
        let grading = grading_from(&g, &sl2.h).map_err(|i| AlgebraError::NotHomogeneous(g.labels[i].clone()))?;
        let mut perm: Vec<usize> = (0..g.dim()).collect();
        perm.sort_by(|&a, &b| grading[a].cmp(&grading[b]).then(a.cmp(&b)));
        let mv = |v: &Vector| perm.iter().map(|&o| v[o].clone()).collect::<Vector>();
        Ok(GradedAlgebra {
            grading: perm.iter().map(|&o| grading[o].clone()).collect(),
            sl2: Sl2Triple { e: mv(&sl2.e), h: mv(&sl2.h), f: mv(&sl2.f) },
            osp: osp.map(|o| OspTriple { big_e: mv(&o.big_e), e: mv(&o.e), h: mv(&o.h), f: mv(&o.f), big_f: mv(&o.big_f) }),
            g: g.permute(&perm),
        })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    fn indices(&self, pred: impl Fn(&Rat) -> bool) -> Vec<usize> {
        (0..self.dim()).filter(|&i| pred(&self.grading[i])).collect()
    }
    /// `n = g_{>0}`.
    pub fn n(&self) -> Vec<usize> {
        self.indices(|t| t.is_positive())
    }
    /// `m = g_{≥1}`.
    pub fn m(&self) -> Vec<usize> {
        self.indices(|t| *t >= rat_int(1))
    }
    /// `p = g_{<1}`.
    pub fn p(&self) -> Vec<usize> {
        self.indices(|t| *t < rat_int(1))
    }
    /// `g_{≤0}`.
    pub fn nonpositive(&self) -> Vec<usize> {
        self.indices(|t| !t.is_positive())
    }
    /// True when every grade is an integer.
    pub fn is_even_grading(&self) -> bool {
        self.grading.iter().all(|t| t.is_integer())
    }
    pub fn has_half(&self) -> bool {
        self.grading.iter().any(|t| *t == rat(1, 2))
    }
    /// Grade of a homogeneous vector, `None` for zero or inhomogeneous vectors.
    pub fn grade_of(&self, v: &[Gauss]) -> Option<Rat> {
        let mut out: Option<Rat> = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match &out {
                None => out = Some(self.grading[i].clone()),
                Some(t) if *t != self.grading[i] => return None,
                _ => {}
            }
        }
        out
    }
    /// Projection onto the graded pieces selected by `keep`.
    pub fn project(&self, v: &[Gauss], keep: impl Fn(&Rat) -> bool) -> Vector {
        v.iter().enumerate().map(|(i, x)| if keep(&self.grading[i]) { x.clone() } else { Gauss::zero() }).collect()
    }
}

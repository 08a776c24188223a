//! An independent λ-bracket calculator for purely even algebras, used to pin
//! the sl2 golden values before comparing the library against them.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use superw::classical_w::{Method, ReductionContext};
use superw::liesuper::catalog;
use superw::scalar::Scalar;
use superw::superpoly::Family;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Variable `(generator, derivative order)`.
type V = (usize, u32);

/// Commutative polynomial: sorted variable multiset ↦ coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
struct P(BTreeMap<Vec<V>, Q>);

impl P {
    fn c(x: Q) -> P {
        let mut p = P::default();
        p.add_term(vec![], x);
        p
    }
    fn v(x: V) -> P {
        let mut p = P::default();
        p.add_term(vec![x], Q::one());
        p
    }
    fn add_term(&mut self, m: Vec<V>, c: Q) {
        let e = self.0.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }
    fn add(&self, o: &P) -> P {
        let mut r = self.clone();
        for (m, c) in &o.0 {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    fn scale(&self, s: &Q) -> P {
        let mut r = P::default();
        for (m, c) in &self.0 {
            r.add_term(m.clone(), c * s);
        }
        r
    }
    fn mul(&self, o: &P) -> P {
        let mut r = P::default();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                let mut m = a.clone();
                m.extend(b.iter().copied());
                m.sort();
                r.add_term(m, x * y);
            }
        }
        r
    }
    fn d(&self) -> P {
        let mut r = P::default();
        for (m, c) in &self.0 {
            for i in 0..m.len() {
                let mut n = m.clone();
                n[i].1 += 1;
                n.sort();
                r.add_term(n, c.clone());
            }
        }
        r
    }
    fn partial(&self, x: V) -> P {
        let mut r = P::default();
        for (m, c) in &self.0 {
            let e = m.iter().filter(|y| **y == x).count();
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            let pos = n.iter().position(|y| *y == x).unwrap();
            n.remove(pos);
            r.add_term(n, c * Q::from_integer((e as i64).into()));
        }
        r
    }
    fn vars(&self) -> Vec<V> {
        let mut v: Vec<V> = self.0.keys().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `Σ λ^n p_n`.
#[derive(Clone, Debug, Default, PartialEq)]
struct L(Vec<P>);

impl L {
    fn at(&mut self, n: usize) -> &mut P {
        if self.0.len() <= n {
            self.0.resize(n + 1, P::default());
        }
        &mut self.0[n]
    }
    fn add(&mut self, o: &L) {
        for (n, p) in o.0.iter().enumerate() {
            let s = self.at(n).add(p);
            *self.at(n) = s;
        }
    }
    fn trimmed(mut self) -> L {
        while self.0.last().is_some_and(|p| p.0.is_empty()) {
            self.0.pop();
        }
        self
    }
    /// `(λ + ∂)·self`.
    fn lambda_plus_d(&self) -> L {
        let mut r = L::default();
        for (n, p) in self.0.iter().enumerate() {
            let s = r.at(n + 1).add(p);
            *r.at(n + 1) = s;
            let s = r.at(n).add(&p.d());
            *r.at(n) = s;
        }
        r
    }
    fn left_mul(&self, f: &P) -> L {
        L(self.0.iter().map(|p| f.mul(p)).collect())
    }
}

/// Brackets of generators: `{u_i λ u_j} = Σ λ^s table[i][j][s]`.
struct Table(Vec<Vec<Vec<P>>>);

impl Table {
    /// `{f_λ g} = Σ ∂g/∂u_j^(n) (λ+∂)^n {u_i_{λ+∂} u_j}_→ (-λ-∂)^m ∂f/∂u_i^(m)`.
    fn bracket(&self, f: &P, g: &P) -> L {
        let mut out = L::default();
        for xi in f.vars() {
            let a = f.partial(xi);
            // (-λ-∂)^m a
            let mut b = L(vec![a]);
            for _ in 0..xi.1 {
                b = b.lambda_plus_d();
                b = L(b.0.iter().map(|p| p.scale(&-Q::one())).collect());
            }
            for xj in g.vars() {
                let mut inner = L::default();
                for (s, c) in self.0[xi.0][xj.0].iter().enumerate() {
                    let mut t = b.clone();
                    for _ in 0..s {
                        t = t.lambda_plus_d();
                    }
                    inner.add(&t.left_mul(c));
                }
                for _ in 0..xj.1 {
                    inner = inner.lambda_plus_d();
                }
                out.add(&inner.left_mul(&g.partial(xj)));
            }
        }
        out.trimmed()
    }
}

const E: usize = 0;
const H: usize = 1;
const F: usize = 2;

/// Affine sl2 at level `k`, with `(E|F) = 1` and `(H|H) = 2`.
fn sl2(k: &Q) -> Table {
    let z = P::default();
    let mut t = vec![vec![vec![z.clone(); 2]; 3]; 3];
    let v = |i| P::v((i, 0));
    t[H][E][0] = v(E).scale(&q(2, 1));
    t[E][H][0] = v(E).scale(&q(-2, 1));
    t[H][F][0] = v(F).scale(&q(-2, 1));
    t[F][H][0] = v(F).scale(&q(2, 1));
    t[E][F][0] = v(H);
    t[F][E][0] = v(H).scale(&q(-1, 1));
    t[E][F][1] = P::c(k.clone());
    t[F][E][1] = P::c(k.clone());
    t[H][H][1] = P::c(k * q(2, 1));
    Table(t)
}

/// `E ↦ 1`, derivatives of `E` ↦ 0.
fn rho(p: &P) -> P {
    let mut r = P::default();
    for (m, c) in &p.0 {
        if m.iter().any(|&(i, n)| i == E && n > 0) {
            continue;
        }
        let rest: Vec<V> = m.iter().copied().filter(|&(i, _)| i != E).collect();
        r.add_term(rest, c.clone());
    }
    r
}

fn virasoro(k: &Q) -> P {
    P::v((F, 0)).add(&P::v((H, 1)).scale(&(k * q(1, 2)))).add(&P::v((H, 0)).mul(&P::v((H, 0))).scale(&q(1, 4)))
}

const LEVELS: [(i64, i64); 4] = [(1, 1), (3, 1), (-7, 2), (5, 11)];

#[test]
fn oracle_pins_the_virasoro_values() {
    for (n, d) in LEVELS {
        let k = q(n, d);
        let t = sl2(&k);
        let w = virasoro(&k);
        // n = span{E}
        let b = t.bracket(&P::v((E, 0)), &w);
        assert!(b.0.iter().all(|p| rho(p).0.is_empty()), "not in W at k = {}", k);
        let got: Vec<P> = t.bracket(&w, &w).0.iter().map(rho).collect();
        let want = vec![w.d().scale(&k), w.scale(&(q(2, 1) * &k)), P::default(), P::c(-(&k * &k * &k) * q(1, 2))];
        assert_eq!(got, want, "k = {}", k);
    }
}

/// Converts a library polynomial in the original sl2 basis, at a numeric level.
fn from_library(p: &superw::superpoly::SuperPoly, labels: &[String], k: &Q) -> P {
    let ks: Scalar = format!("{}", k).replace(' ', "").parse().unwrap_or_else(|_| panic!("level {}", k));
    let mut out = P::default();
    for (m, c) in p.eval_scalars(Some(&ks), None).terms() {
        let g = c.as_constant().expect("numeric coefficient");
        assert!(g.im.is_zero(), "real coefficient");
        let mut vars = Vec::new();
        for (v, e) in &m.0 {
            assert_eq!(v.family, Family::Affine);
            let i = match labels[v.index as usize].as_str() {
                "E" => E,
                "H" => H,
                "F" => F,
                other => panic!("unexpected label {}", other),
            };
            for _ in 0..*e {
                vars.push((i, v.order));
            }
        }
        vars.sort();
        out.add_term(vars, g.re.clone());
    }
    out
}

#[test]
fn library_matches_the_oracle_on_sl2() {
    let ga = catalog("sl2").unwrap().graded().unwrap();
    let w = ReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
    let labels = &w.ctx.adapted.original.g.labels;
    let gen = w.ctx.to_original(&w.gens[0].value);
    let br = w.bracket(0, 0, Method::Direct).unwrap();
    let closed = w.bracket(0, 0, Method::Closed).unwrap();
    assert_eq!(br, closed);
    for (n, d) in LEVELS {
        let k = q(n, d);
        assert_eq!(from_library(&gen, labels, &k), virasoro(&k), "k = {}", k);
        let t = sl2(&k);
        let oracle: Vec<P> = t.bracket(&virasoro(&k), &virasoro(&k)).0.iter().map(rho).collect();
        let mut lib = Vec::new();
        for s in 0..=br.degree().unwrap() {
            let c = w.ctx.to_original(&w.evaluate(&br.coeff(s)));
            lib.push(from_library(&c, labels, &k));
        }
        assert_eq!(lib, oracle, "k = {}", k);
    }
}

#[test]
fn oracle_sees_skew_symmetry_of_the_affine_table() {
    let k = q(2, 3);
    let t = sl2(&k);
    for i in 0..3 {
        for j in 0..3 {
            // {u_j λ u_i} = -{u_i_{-λ} u_j} for constant-coefficient brackets of degree ≤ 1
            let a = &t.0[i][j];
            let b = &t.0[j][i];
            assert_eq!(a[0], b[0].scale(&-Q::one()));
            assert_eq!(a[1], b[1]);
            assert!(a[1].0.values().all(|c| !c.is_negative()));
        }
    }
}

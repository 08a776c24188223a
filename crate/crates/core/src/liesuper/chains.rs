//! Dual bases of `g^F ⊕ [E, g]` (sl₂ case) and `g^f ⊕ [e, g]` (osp(1|2) case).
//!
//! For a homogeneous basis `q_j ∈ g^X ∩ g(-α_j)` of the kernel of the lowering
//! element `X ∈ {F, f}` and the dual basis `q^j` of the kernel of the raising
//! element `Y ∈ {E, e}`, the chains
//!
//! ```text
//! upper[j][n] = (ad X)^n q^j      lower[j][n] = c_{j,n} (ad Y)^n q_j
//! ```
//!
//! are dual: `(upper[i][m] | lower[j][n]) = δ_ij δ_mn`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebra::{sgn, vec_is_zero, LieSuperalgebra, Vector};
use super::triple::GradedAlgebra;
use super::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::{rat, rat_int, Gauss, Rat};

/// Which triple the chains are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// `X = F`, `Y = E`, chain steps of grade 1.
    Even,
    /// `X = f`, `Y = e`, chain steps of grade 1/2.
    Odd,
}

/// `(j, n)`: the `n`-th element of the `j`-th chain.
pub type Index = (usize, usize);

#[derive(Clone, Debug)]
pub struct Chains {
    pub kind: ChainKind,
    /// `α_j` with `q_j ∈ g(-α_j)`.
    pub spins: Vec<Rat>,
    /// Parity of `q_j` (`true` = odd).
    pub parities: Vec<bool>,
    /// `lower[j][n] = q_j^n`, coordinates in the graded algebra's basis.
    pub lower: Vec<Vec<Vector>>,
    /// `upper[j][n] = q^j_n`.
    pub upper: Vec<Vec<Vector>>,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * b)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn frac(num: BigInt, den: BigInt) -> Gauss {
    Gauss::real(Rat::new(num, den))
}

fn dec(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Decomposition(msg.into())
}

impl Chains {
    pub fn build(ga: &GradedAlgebra, kind: ChainKind) -> Result<Chains, AlgebraError> {
        let g = &ga.g;
        let (x, y) = match kind {
            ChainKind::Even => (ga.sl2.f.clone(), ga.sl2.e.clone()),
            ChainKind::Odd => {
                let o = ga.osp.as_ref().ok_or_else(|| dec("no osp(1|2) triple"))?;
                (o.f.clone(), o.e.clone())
            }
        };
        let ad_x = g.ad(&x);
        let ad_y = g.ad(&y);
        let mut blocks: Vec<(Rat, bool)> = Vec::new();
        for i in 0..g.dim() {
            let key = (ga.grading[i].clone(), g.parity[i]);
            if !blocks.contains(&key) {
                blocks.push(key);
            }
        }
        let kernel_in = |ad: &Matrix, grade: &Rat, odd: bool| -> Vec<Vector> {
            let idx: Vec<usize> = (0..g.dim()).filter(|&i| ga.grading[i] == *grade && g.parity[i] == odd).collect();
            if idx.is_empty() {
                return Vec::new();
            }
            let cols: Vec<Vector> = idx.iter().map(|&i| ad.column(i)).collect();
            let sub = Matrix::from_columns(g.dim(), &cols);
            sub.kernel()
                .into_iter()
                .map(|k| {
                    let mut v = g.zero();
                    for (a, &i) in idx.iter().enumerate() {
                        v[i] = k[a].clone();
                    }
                    v
                })
                .collect()
        };
        let mut spins = Vec::new();
        let mut parities = Vec::new();
        let mut lows = Vec::new();
        let mut ups = Vec::new();
        for (grade, odd) in &blocks {
            if grade.is_positive() {
                continue;
            }
            let qs = kernel_in(&ad_x, grade, *odd);
            if qs.is_empty() {
                continue;
            }
            let es = kernel_in(&ad_y, &-grade, *odd);
            if es.len() != qs.len() {
                return Err(dec(format!("ker ad X and ker ad Y differ in size at grade {}", grade)));
            }
            let mut m = Matrix::zeros(es.len(), qs.len());
            for (a, e) in es.iter().enumerate() {
                for (b, q) in qs.iter().enumerate() {
                    m.set(a, b, g.form_of(e, q));
                }
            }
            let inv = m.inverse().ok_or_else(|| dec(format!("pairing not invertible at grade {}", grade)))?;
            for (i, q) in qs.iter().enumerate() {
                let mut up = g.zero();
                for (a, e) in es.iter().enumerate() {
                    let c = inv.get(i, a);
                    for (l, v) in e.iter().enumerate() {
                        up[l] = &up[l] + &(c * v);
                    }
                }
                spins.push(-grade.clone());
                parities.push(*odd);
                lows.push(q.clone());
                ups.push(up);
            }
        }
        let mut chains = Chains { kind, spins, parities, lower: Vec::new(), upper: Vec::new() };
        for j in 0..lows.len() {
            let len = chains.len(j);
            let mut up = vec![ups[j].clone()];
            let mut low_raw = vec![lows[j].clone()];
            for _ in 1..=len {
                up.push(g.bracket(&x, up.last().unwrap()));
                low_raw.push(g.bracket(&y, low_raw.last().unwrap()));
            }
            if vec_is_zero(&up[len - 1]) || !vec_is_zero(&up[len]) {
                return Err(dec(format!("upper chain {} does not have length {}", j, len)));
            }
            if vec_is_zero(&low_raw[len - 1]) || !vec_is_zero(&low_raw[len]) {
                return Err(dec(format!("lower chain {} does not have length {}", j, len)));
            }
            up.truncate(len);
            low_raw.truncate(len);
            let low = low_raw
                .iter()
                .enumerate()
                .map(|(n, v)| {
                    let c = chains.normalization(j, n);
                    v.iter().map(|x| x * &c).collect()
                })
                .collect();
            chains.upper.push(up);
            chains.lower.push(low);
        }
        let total: usize = (0..chains.count()).map(|j| chains.len(j)).sum();
        if total != g.dim() {
            return Err(dec(format!("chains span {} dimensions, algebra has {}", total, g.dim())));
        }
        chains.check_pairing(g)?;
        Ok(chains)
    }

    /// Number of chains, equal to `dim g^X`.
    pub fn count(&self) -> usize {
        self.spins.len()
    }

    pub fn step(&self) -> Rat {
        match self.kind {
            ChainKind::Even => rat_int(1),
            ChainKind::Odd => rat(1, 2),
        }
    }

    /// Twice the spin, an integer.
    pub fn two_alpha(&self, j: usize) -> u64 {
        (&self.spins[j] * rat_int(2)).to_integer().to_u64().expect("nonnegative spin")
    }

    /// Number of elements of chain `j`.
    pub fn len(&self, j: usize) -> usize {
        match self.kind {
            ChainKind::Even => self.two_alpha(j) as usize + 1,
            ChainKind::Odd => 2 * self.two_alpha(j) as usize + 1,
        }
    }

    /// `c_{j,n}` in `lower[j][n] = c_{j,n} (ad Y)^n q_j`.
    pub fn normalization(&self, j: usize, n: usize) -> Gauss {
        let a2 = self.two_alpha(j);
        match self.kind {
            ChainKind::Even => {
                let n = n as u64;
                let den = factorial(n) * factorial(n) * binomial(a2, n);
                let num = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                frac(num, den)
            }
            ChainKind::Odd => {
                let m = (n / 2) as u64;
                if n % 2 == 0 {
                    frac(BigInt::one(), factorial(m) * factorial(m) * binomial(a2, m))
                } else {
                    let num = if self.parities[j] { BigInt::one() } else { -BigInt::one() };
                    frac(num, factorial(m + 1) * factorial(m) * binomial(a2, m + 1))
                }
            }
        }
    }

    /// Grade of `lower[j][n]`; `(j, n)` belongs to `J_β` for this `β`.
    pub fn grade(&self, ix: Index) -> Rat {
        -&self.spins[ix.0] + self.step() * rat_int(ix.1 as i64)
    }

    /// All indices ordered by (grade, chain, position).
    pub fn indices(&self) -> Vec<Index> {
        let mut out: Vec<Index> = (0..self.count()).flat_map(|j| (0..self.len(j)).map(move |n| (j, n))).collect();
        out.sort_by(|a, b| self.grade(*a).cmp(&self.grade(*b)).then(a.cmp(b)));
        out
    }

    /// `J_β`.
    pub fn index_set(&self, beta: &Rat) -> Vec<Index> {
        self.indices().into_iter().filter(|ix| self.grade(*ix) == *beta).collect()
    }

    /// `lower[j][n]`, or zero past the end of the chain.
    pub fn lower_or_zero(&self, g: &LieSuperalgebra, ix: Index) -> Vector {
        self.lower[ix.0].get(ix.1).cloned().unwrap_or_else(|| g.zero())
    }

    fn check_pairing(&self, g: &LieSuperalgebra) -> Result<(), AlgebraError> {
        for i in 0..self.count() {
            for m in 0..self.len(i) {
                for j in 0..self.count() {
                    for n in 0..self.len(j) {
                        let v = g.form_of(&self.upper[i][m], &self.lower[j][n]);
                        let want = if i == j && m == n { Gauss::one() } else { Gauss::zero() };
                        if v != want {
                            return Err(dec(format!("(q^{}_{} | q_{}^{}) = {}", i, m, j, n, v)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Residuals of the chain tensor identity, one entry per grade `t`:
    ///
    /// `Σ_{J_{-t}} w_j q^j_n ⊗ q_j^{n+1} + Σ_{J_{t-step}} q_i^{m+1} ⊗ q^i_m`,
    ///
    /// where `w_j = s(j)` for [`ChainKind::Even`] and `1` for [`ChainKind::Odd`].
    /// Every residual must vanish.
    pub fn tensor_identity(&self, g: &LieSuperalgebra) -> Vec<(Rat, Matrix)> {
        let d = g.dim();
        let step = self.step();
        let max = self.spins.iter().cloned().fold(Rat::zero(), |a, b| if b > a { b } else { a });
        let mut out = Vec::new();
        let mut t = -&max - &step;
        while t <= &max + &step {
            let mut acc = Matrix::zeros(d, d);
            let mut add = |a: &Vector, b: &Vector, c: &Gauss| {
                for i in 0..d {
                    if a[i].is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        if !b[j].is_zero() {
                            let v = acc.get(i, j) + &(&(&a[i] * &b[j]) * c);
                            acc.set(i, j, v);
                        }
                    }
                }
            };
            for (j, n) in self.index_set(&-&t) {
                let w = match self.kind {
                    ChainKind::Even => sgn(self.parities[j]),
                    ChainKind::Odd => Gauss::one(),
                };
                add(&self.upper[j][n], &self.lower_or_zero(g, (j, n + 1)), &w);
            }
            for (i, m) in self.index_set(&(&t - &step)) {
                add(&self.lower_or_zero(g, (i, m + 1)), &self.upper[i][m], &Gauss::one());
            }
            out.push((t.clone(), acc));
            t += &step;
        }
        out
    }
}

/// All nonempty chains `lo ≺ ix_0 ≺ ix_1 ≺ … ≺ ix_p ≺ hi` for the order with
/// gap `step`: consecutive grades differ by at least `step`, the first grade is
/// at least `lo + step` and the last is at most `hi - step`.
pub fn admissible_chains(chains: &Chains, lo: &Rat, hi: &Rat) -> Vec<Vec<Index>> {
    let step = chains.step();
    let all = chains.indices();
    let mut out = Vec::new();
    let mut stack: Vec<Index> = Vec::new();
    fn rec(
        chains: &Chains,
        all: &[Index],
        step: &Rat,
        hi: &Rat,
        min_grade: Rat,
        stack: &mut Vec<Index>,
        out: &mut Vec<Vec<Index>>,
    ) {
        for ix in all {
            let b = chains.grade(*ix);
            if b < min_grade || b > hi - step {
                continue;
            }
            stack.push(*ix);
            out.push(stack.clone());
            rec(chains, all, step, hi, &b + step, stack, out);
            stack.pop();
        }
    }
    rec(chains, &all, &step, hi, lo + &step, &mut stack, &mut out);
    out
}

/// The algebra rewritten in the basis `{lower[j][n]}`, ordered by grade.
#[derive(Clone, Debug)]
pub struct Adapted {
    pub original: GradedAlgebra,
    pub chains: Chains,
    /// Adapted basis position → `(j, n)`.
    pub order: Vec<Index>,
    pub position: HashMap<Index, usize>,
    /// The algebra in the adapted basis.
    pub alg: LieSuperalgebra,
    pub grading: Vec<Rat>,
    /// Adapted basis vectors in original coordinates.
    pub to_original: Vec<Vector>,
}

impl Adapted {
    pub fn new(ga: &GradedAlgebra, kind: ChainKind) -> Result<Adapted, AlgebraError> {
        let chains = Chains::build(ga, kind)?;
        let order = chains.indices();
        let to_original: Vec<Vector> = order.iter().map(|&(j, n)| chains.lower[j][n].clone()).collect();
        let labels = order.iter().map(|&(j, n)| format!("q{}^{}", j, n)).collect();
        let alg = ga.g.change_basis(&to_original, labels).ok_or_else(|| dec("adapted vectors are not a basis"))?;
        let grading = order.iter().map(|&ix| chains.grade(ix)).collect();
        let position = order.iter().enumerate().map(|(a, &ix)| (ix, a)).collect();
        Ok(Adapted { original: ga.clone(), chains, order, position, alg, grading, to_original })
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Coordinates in the adapted basis of an element given in original coordinates.
    pub fn coords(&self, x: &[Gauss]) -> Vector {
        let g = &self.original.g;
        self.order.iter().map(|&(j, n)| g.form_of(&self.chains.upper[j][n], x)).collect()
    }

    /// Original coordinates of an adapted-coordinate vector.
    pub fn to_orig(&self, v: &[Gauss]) -> Vector {
        let mut out = self.original.g.zero();
        for (a, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, x) in self.to_original[a].iter().enumerate() {
                out[l] = &out[l] + &(c * x);
            }
        }
        out
    }

    /// Adapted coordinates of `lower[j][n]` (zero past the end of the chain).
    pub fn lower(&self, ix: Index) -> Vector {
        let mut v = self.alg.zero();
        if let Some(&a) = self.position.get(&ix) {
            v[a] = Gauss::one();
        }
        v
    }

    /// Adapted coordinates of `upper[j][n]`.
    pub fn upper(&self, ix: Index) -> Vector {
        self.coords(&self.chains.upper[ix.0][ix.1])
    }

    /// Adapted position of the chain generator `q_j`.
    pub fn generator_position(&self, j: usize) -> usize {
        self.position[&(j, 0)]
    }

    /// True if adapted basis vector `a` lies in `g^X`.
    pub fn is_kernel(&self, a: usize) -> bool {
        self.order[a].1 == 0
    }

    /// Projection onto `g^X` along `[Y, g]`, as coefficients on `q_0, q_1, …`.
    pub fn sharp(&self, v: &[Gauss]) -> Vec<Gauss> {
        (0..self.chains.count()).map(|j| v[self.generator_position(j)].clone()).collect()
    }

    /// Projection onto `g^X` along `[Y, g]` as an adapted vector.
    pub fn sharp_vec(&self, v: &[Gauss]) -> Vector {
        v.iter().enumerate().map(|(a, x)| if self.is_kernel(a) { x.clone() } else { Gauss::zero() }).collect()
    }

    /// Triple elements in adapted coordinates, in the order `E, H, F`.
    pub fn sl2(&self) -> (Vector, Vector, Vector) {
        let t = &self.original.sl2;
        (self.coords(&t.e), self.coords(&t.h), self.coords(&t.f))
    }

    /// `(e, f)` of the osp(1|2) triple in adapted coordinates.
    pub fn odd_pair(&self) -> Option<(Vector, Vector)> {
        self.original.osp.as_ref().map(|o| (self.coords(&o.e), self.coords(&o.f)))
    }

    /// Display label of adapted basis vector `a`: the original label when the
    /// vector is a basis vector, else its expansion in parentheses.
    pub fn label(&self, a: usize) -> String {
        let v = &self.to_original[a];
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        if nz.len() == 1 && v[nz[0]].is_one() {
            self.original.g.labels[nz[0]].clone()
        } else {
            format!("({})", self.original.g.render(v))
        }
    }

    /// Adapted positions whose grade satisfies `pred`.
    pub fn positions(&self, pred: impl Fn(&Rat) -> bool) -> Vec<usize> {
        (0..self.dim()).filter(|&a| pred(&self.grading[a])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::catalog;

    fn graded(name: &str) -> GradedAlgebra {
        catalog(name).unwrap().graded().unwrap()
    }

    fn v(g: &LieSuperalgebra, terms: &[(&str, Rat)]) -> Vector {
        let mut out = g.zero();
        for (l, c) in terms {
            out[g.index_of(l).unwrap()] = Gauss::real(c.clone());
        }
        out
    }

    #[test]
    fn sl2_chains_match_hand_values() {
        let ga = graded("sl2");
        let c = Chains::build(&ga, ChainKind::Even).unwrap();
        let g = &ga.g;
        assert_eq!(c.count(), 1);
        assert_eq!(c.upper[0], vec![v(g, &[("E", rat_int(1))]), v(g, &[("H", rat_int(-1))]), v(g, &[("F", rat_int(-2))])]);
        assert_eq!(c.lower[0], vec![v(g, &[("F", rat_int(1))]), v(g, &[("H", rat(-1, 2))]), v(g, &[("E", rat(-1, 2))])]);
        let js: Vec<Rat> = (0..3).map(|n| c.grade((0, n))).collect();
        assert_eq!(js, vec![rat_int(-1), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn osp12_chains_match_hand_values() {
        let ga = graded("osp12");
        let c = Chains::build(&ga, ChainKind::Odd).unwrap();
        let g = &ga.g;
        assert_eq!(c.count(), 1);
        let one = rat_int(1);
        assert_eq!(
            c.upper[0],
            vec![
                v(g, &[("E", one.clone())]),
                v(g, &[("e", -one.clone())]),
                v(g, &[("H", one.clone())]),
                v(g, &[("f", one.clone())]),
                v(g, &[("F", rat_int(-2))]),
            ]
        );
        assert_eq!(
            c.lower[0],
            vec![
                v(g, &[("F", one.clone())]),
                v(g, &[("f", rat(1, 2))]),
                v(g, &[("H", rat(1, 2))]),
                v(g, &[("e", rat(1, 2))]),
                v(g, &[("E", rat(-1, 2))]),
            ]
        );
        assert_eq!(c.normalization(0, 1), Gauss::real(rat(-1, 2)));
    }

    #[test]
    fn chains_exist_for_all_catalog_entries() {
        for name in ["sl2", "sl3-principal", "sl3-minimal", "osp12", "sl21"] {
            let ga = graded(name);
            let c = Chains::build(&ga, ChainKind::Even).unwrap();
            for (t, m) in c.tensor_identity(&ga.g) {
                assert!(m.data.iter().all(|x| x.is_zero()), "{} t={}", name, t);
            }
            if ga.osp.is_some() {
                let c = Chains::build(&ga, ChainKind::Odd).unwrap();
                for (t, m) in c.tensor_identity(&ga.g) {
                    assert!(m.data.iter().all(|x| x.is_zero()), "{} odd t={}", name, t);
                }
            }
        }
    }

    #[test]
    fn chain_enumeration_examples() {
        let ga = graded("sl2");
        let c = Chains::build(&ga, ChainKind::Even).unwrap();
        assert_eq!(admissible_chains(&c, &rat_int(-2), &rat(1, 2)), vec![vec![(0, 0)]]);
        let ga = graded("osp12");
        let c = Chains::build(&ga, ChainKind::Odd).unwrap();
        let got = admissible_chains(&c, &rat(-3, 2), &rat_int(0));
        assert_eq!(got, vec![vec![(0, 0)], vec![(0, 0), (0, 1)], vec![(0, 1)]]);
    }

    #[test]
    fn adapted_coordinates_invert() {
        for name in ["sl3-principal", "sl21"] {
            let ga = graded(name);
            let ad = Adapted::new(&ga, ChainKind::Even).unwrap();
            for i in 0..ga.dim() {
                let b = ga.g.basis(i);
                assert_eq!(ad.to_orig(&ad.coords(&b)), b);
            }
            assert!(ad.alg.validate().is_empty());
        }
    }
}

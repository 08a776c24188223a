use std::fmt;

use crate::linalg::Matrix;
use crate::scalar::Gauss;

/// Coordinates of an element in the basis of its algebra.
pub type Vector = Vec<Gauss>;

pub fn vec_add(a: &[Gauss], b: &[Gauss]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
pub fn vec_sub(a: &[Gauss], b: &[Gauss]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
pub fn vec_neg(a: &[Gauss]) -> Vector {
    a.iter().map(|x| -x).collect()
}
pub fn vec_scale(a: &[Gauss], s: &Gauss) -> Vector {
    a.iter().map(|x| x * s).collect()
}
pub fn vec_is_zero(a: &[Gauss]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// A Lie superalgebra given by structure constants in a fixed basis together
/// with an even supersymmetric invariant bilinear form.
#[derive(Clone, Debug)]
pub struct LieSuperalgebra {
    pub name: String,
    pub labels: Vec<String>,
    /// `true` for odd basis vectors.
    pub parity: Vec<bool>,
    /// `brackets[i][j]` are the coordinates of `[x_i, x_j]`.
    pub brackets: Vec<Vec<Vector>>,
    pub form: Matrix,
}

/// One failed structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

pub(crate) fn sgn(odd: bool) -> Gauss {
    if odd {
        Gauss::int(-1)
    } else {
        Gauss::one()
    }
}

impl LieSuperalgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn zero(&self) -> Vector {
        vec![Gauss::zero(); self.dim()]
    }
    pub fn basis(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = Gauss::one();
        v
    }
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Parity of a vector, `None` if it mixes parities. Zero counts as even.
    pub fn parity_of(&self, v: &[Gauss]) -> Option<bool> {
        let mut p = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match p {
                None => p = Some(self.parity[i]),
                Some(q) if q != self.parity[i] => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(false))
    }

    pub fn bracket(&self, a: &[Gauss], b: &[Gauss]) -> Vector {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (l, c) in self.brackets[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[l] = &out[l] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn form_of(&self, a: &[Gauss], b: &[Gauss]) -> Gauss {
        let mut s = Gauss::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let f = self.form.get(i, j);
                if !y.is_zero() && !f.is_zero() {
                    s = &s + &(&(x * y) * f);
                }
            }
        }
        s
    }

    /// Matrix of `ad a` (columns are images of basis vectors).
    pub fn ad(&self, a: &[Gauss]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.bracket(a, &self.basis(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn render(&self, v: &[Gauss]) -> String {
        let mut parts = Vec::new();
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if x.is_one() {
                parts.push(self.labels[i].clone());
            } else {
                parts.push(format!("({})·{}", x, self.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Runs every structural check and returns all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        let lab = |i: usize| self.labels[i].as_str();
        for i in 0..n {
            for j in 0..n {
                let b = &self.brackets[i][j];
                if vec_is_zero(b) {
                    continue;
                }
                if self.parity_of(b) != Some(self.parity[i] ^ self.parity[j]) {
                    out.push(Violation {
                        check: "bracket parity",
                        detail: format!("[{}, {}] has the wrong parity", lab(i), lab(j)),
                    });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let s = sgn(self.parity[i] && self.parity[j]);
                let rhs = vec_neg(&vec_scale(&self.brackets[j][i], &s));
                if self.brackets[i][j] != rhs {
                    out.push(Violation {
                        check: "super-antisymmetry",
                        detail: format!("[{}, {}] != -s·[{}, {}]", lab(i), lab(j), lab(j), lab(i)),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(l));
                    let lhs = self.bracket(&a, &self.bracket(&b, &c));
                    let r1 = self.bracket(&self.bracket(&a, &b), &c);
                    let s = sgn(self.parity[i] && self.parity[j]);
                    let r2 = vec_scale(&self.bracket(&b, &self.bracket(&a, &c)), &s);
                    if lhs != vec_add(&r1, &r2) {
                        out.push(Violation { check: "Jacobi", detail: format!("fails on ({}, {}, {})", lab(i), lab(j), lab(l)) });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let f = self.form.get(i, j);
                if f.is_zero() {
                    continue;
                }
                if self.parity[i] != self.parity[j] {
                    out.push(Violation { check: "form even", detail: format!("({}|{}) != 0", lab(i), lab(j)) });
                }
                let s = sgn(self.parity[i] && self.parity[j]);
                if *f != &s * self.form.get(j, i) {
                    out.push(Violation {
                        check: "form supersymmetric",
                        detail: format!("({}|{}) != s·({}|{})", lab(i), lab(j), lab(j), lab(i)),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(l));
                    let lhs = self.form_of(&self.bracket(&a, &b), &c);
                    let rhs = self.form_of(&a, &self.bracket(&b, &c));
                    if lhs != rhs {
                        out.push(Violation {
                            check: "form invariant",
                            detail: format!("([{}, {}]|{}) != ({}|[{}, {}])", lab(i), lab(j), lab(l), lab(i), lab(j), lab(l)),
                        });
                    }
                }
            }
        }
        if self.form.rank() < n {
            out.push(Violation { check: "form nondegenerate", detail: format!("rank {} < {}", self.form.rank(), n) });
        }
        out
    }

    /// The same algebra in a new basis; `new_basis` are coordinates in the old one.
    /// Returns `None` if the vectors are not a basis or not parity-homogeneous.
    pub fn change_basis(&self, new_basis: &[Vector], labels: Vec<String>) -> Option<LieSuperalgebra> {
        let n = self.dim();
        if new_basis.len() != n {
            return None;
        }
        let p = Matrix::from_columns(n, new_basis);
        let inv = p.inverse()?;
        let parity: Vec<bool> = new_basis.iter().map(|v| self.parity_of(v)).collect::<Option<_>>()?;
        let brackets =
            (0..n).map(|i| (0..n).map(|j| inv.mul_vec(&self.bracket(&new_basis[i], &new_basis[j]))).collect()).collect();
        let mut form = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                form.set(i, j, self.form_of(&new_basis[i], &new_basis[j]));
            }
        }
        Some(LieSuperalgebra { name: self.name.clone(), labels, parity, brackets, form })
    }

    /// Reorders the basis by `perm` (new index `a` is old index `perm[a]`).
    pub fn permute(&self, perm: &[usize]) -> LieSuperalgebra {
        let n = self.dim();
        let mut pos = vec![0; n];
        for (a, &old) in perm.iter().enumerate() {
            pos[old] = a;
        }
        let mv = |v: &Vector| {
            let mut w = vec![Gauss::zero(); n];
            for (old, x) in v.iter().enumerate() {
                w[pos[old]] = x.clone();
            }
            w
        };
        let mut form = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                form.set(a, b, self.form.get(perm[a], perm[b]).clone());
            }
        }
        LieSuperalgebra {
            name: self.name.clone(),
            labels: perm.iter().map(|&o| self.labels[o].clone()).collect(),
            parity: perm.iter().map(|&o| self.parity[o]).collect(),
            brackets: perm.iter().map(|&i| perm.iter().map(|&j| mv(&self.brackets[i][j])).collect()).collect(),
            form,
        }
    }
}

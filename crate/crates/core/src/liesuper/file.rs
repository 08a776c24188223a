//! On-disk algebra description and the built-in catalog.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{LieSuperalgebra, Vector};
use super::triple::{GradedAlgebra, OspTriple, Sl2Triple};
use super::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::{parse_gauss, Gauss};

/// A basis element referenced by position or by label.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum IndexRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ParityRef {
    Bit(u8),
    Name(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisEntry {
    pub label: String,
    pub parity: ParityRef,
}

/// `[x_i, x_j] = Σ coeff · x_l`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: IndexRef,
    pub j: IndexRef,
    pub coeffs: Vec<(IndexRef, String)>,
}

/// Named dense coefficient vectors, keys `E,H,F` or `E,e,H,f,F`.
pub type TripleFile = BTreeMap<String, Vec<String>>;

/// JSON description of a Lie superalgebra with its triples.
///
/// Bracket pairs that are not listed are zero, except that a listed pair
/// `(i, j)` also determines `(j, i)` by super-antisymmetry when `(j, i)` is
/// not listed itself.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    pub brackets: Vec<BracketEntry>,
    pub form: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sl2: Option<TripleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub osp: Option<TripleFile>,
}

fn bad(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn read(path: &std::path::Path) -> Result<Self, AlgebraError> {
        let text = std::fs::read_to_string(path).map_err(|e| AlgebraError::Io(format!("{}: {}", path.display(), e)))?;
        Self::from_json(&text)
    }

    fn resolve(&self, r: &IndexRef) -> Result<usize, AlgebraError> {
        match r {
            IndexRef::Index(i) if *i < self.basis.len() => Ok(*i),
            IndexRef::Index(i) => Err(bad(format!("index {} out of range", i))),
            IndexRef::Label(l) => {
                self.basis.iter().position(|b| &b.label == l).ok_or_else(|| bad(format!("unknown label {:?}", l)))
            }
        }
    }

    fn vector(&self, name: &str, v: &[String]) -> Result<Vector, AlgebraError> {
        if v.len() != self.basis.len() {
            return Err(bad(format!("{} has {} entries, expected {}", name, v.len(), self.basis.len())));
        }
        v.iter().map(|s| parse_gauss(s).map_err(|e| bad(e.to_string()))).collect()
    }

    fn triple_vec(&self, t: &TripleFile, which: &str, key: &str) -> Result<Vector, AlgebraError> {
        let v = t.get(key).ok_or_else(|| bad(format!("{} triple is missing {}", which, key)))?;
        self.vector(&format!("{}.{}", which, key), v)
    }

    /// The algebra in file order together with the parsed triples, without validation.
    pub fn build(&self) -> Result<(LieSuperalgebra, Option<Sl2Triple>, Option<OspTriple>), AlgebraError> {
        let n = self.basis.len();
        if n == 0 {
            return Err(bad("empty basis"));
        }
        let mut labels = Vec::with_capacity(n);
        let mut parity = Vec::with_capacity(n);
        for b in &self.basis {
            if labels.contains(&b.label) {
                return Err(bad(format!("duplicate label {:?}", b.label)));
            }
            labels.push(b.label.clone());
            parity.push(match &b.parity {
                ParityRef::Bit(0) => false,
                ParityRef::Bit(1) => true,
                ParityRef::Name(s) if s == "even" => false,
                ParityRef::Name(s) if s == "odd" => true,
                other => return Err(bad(format!("bad parity {:?}", other))),
            });
        }
        let mut brackets = vec![vec![vec![Gauss::zero(); n]; n]; n];
        let mut given = vec![vec![false; n]; n];
        for e in &self.brackets {
            let (i, j) = (self.resolve(&e.i)?, self.resolve(&e.j)?);
            if given[i][j] {
                return Err(bad(format!("bracket [{}, {}] listed twice", labels[i], labels[j])));
            }
            given[i][j] = true;
            for (l, c) in &e.coeffs {
                let l = self.resolve(l)?;
                let c = parse_gauss(c).map_err(|e| bad(e.to_string()))?;
                brackets[i][j][l] = &brackets[i][j][l] + &c;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if given[i][j] && !given[j][i] {
                    let s = if parity[i] && parity[j] { Gauss::one() } else { Gauss::int(-1) };
                    brackets[j][i] = brackets[i][j].iter().map(|x| x * &s).collect();
                }
            }
        }
        if self.form.len() != n || self.form.iter().any(|r| r.len() != n) {
            return Err(bad("form must be a dim × dim matrix"));
        }
        let mut form = Matrix::zeros(n, n);
        for (i, row) in self.form.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                form.set(i, j, parse_gauss(s).map_err(|e| bad(e.to_string()))?);
            }
        }
        let g = LieSuperalgebra { name: self.name.clone(), labels, parity, brackets, form };
        let osp = match &self.osp {
            Some(t) => Some(OspTriple {
                big_e: self.triple_vec(t, "osp", "E")?,
                e: self.triple_vec(t, "osp", "e")?,
                h: self.triple_vec(t, "osp", "H")?,
                f: self.triple_vec(t, "osp", "f")?,
                big_f: self.triple_vec(t, "osp", "F")?,
            }),
            None => None,
        };
        let sl2 = match &self.sl2 {
            Some(t) => Some(Sl2Triple {
                e: self.triple_vec(t, "sl2", "E")?,
                h: self.triple_vec(t, "sl2", "H")?,
                f: self.triple_vec(t, "sl2", "F")?,
            }),
            None => osp.as_ref().map(|o| o.sl2()),
        };
        Ok((g, sl2, osp))
    }

    /// Parses, validates and grades the algebra.
    pub fn graded(&self) -> Result<GradedAlgebra, AlgebraError> {
        let (g, sl2, osp) = self.build()?;
        let sl2 = sl2.ok_or_else(|| bad("no sl2 or osp triple given"))?;
        GradedAlgebra::new(g, sl2, osp)
    }

    /// Serializes an algebra (all nonzero brackets listed explicitly).
    pub fn from_algebra(g: &LieSuperalgebra, sl2: Option<&Sl2Triple>, osp: Option<&OspTriple>) -> Self {
        let n = g.dim();
        let strs = |v: &Vector| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let coeffs: Vec<(IndexRef, String)> = g.brackets[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| (IndexRef::Label(g.labels[l].clone()), c.to_string()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry {
                        i: IndexRef::Label(g.labels[i].clone()),
                        j: IndexRef::Label(g.labels[j].clone()),
                        coeffs,
                    });
                }
            }
        }
        AlgebraFile {
            name: g.name.clone(),
            basis: (0..n).map(|i| BasisEntry { label: g.labels[i].clone(), parity: ParityRef::Bit(g.parity[i] as u8) }).collect(),
            brackets,
            form: (0..n).map(|i| (0..n).map(|j| g.form.get(i, j).to_string()).collect()).collect(),
            sl2: sl2.map(|t| TripleFile::from([("E".into(), strs(&t.e)), ("H".into(), strs(&t.h)), ("F".into(), strs(&t.f))])),
            osp: osp.map(|t| {
                TripleFile::from([
                    ("E".into(), strs(&t.big_e)),
                    ("e".into(), strs(&t.e)),
                    ("H".into(), strs(&t.h)),
                    ("f".into(), strs(&t.f)),
                    ("F".into(), strs(&t.big_f)),
                ])
            }),
        }
    }
}

/// Square supermatrix with a parity per row/column index.
struct SuperMatrices {
    n: usize,
    row_parity: Vec<bool>,
}

impl SuperMatrices {
    fn unit(&self, i: usize, j: usize) -> Vector {
        let mut m = vec![Gauss::zero(); self.n * self.n];
        m[i * self.n + j] = Gauss::one();
        m
    }
    fn mul(&self, a: &[Gauss], b: &[Gauss]) -> Vector {
        let n = self.n;
        let mut out = vec![Gauss::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let x = &a[i * n + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &b[l * n + j];
                    if !y.is_zero() {
                        out[i * n + j] = &out[i * n + j] + &(x * y);
                    }
                }
            }
        }
        out
    }
    fn str(&self, a: &[Gauss]) -> Gauss {
        let mut s = Gauss::zero();
        for i in 0..self.n {
            let d = &a[i * self.n + i];
            s = if self.row_parity[i] { &s - d } else { &s + d };
        }
        s
    }

    /// Structure constants of the span of `basis` under the supercommutator,
    /// with form `scale·str(xy)`.
    fn algebra(&self, name: &str, basis: &[(&str, bool, Vector)], scale: Gauss) -> LieSuperalgebra {
        let d = basis.len();
        let cols: Vec<Vector> = basis.iter().map(|b| b.2.clone()).collect();
        let m = Matrix::from_columns(self.n * self.n, &cols);
        let mut brackets = vec![vec![Vec::new(); d]; d];
        let mut form = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (&basis[i].2, &basis[j].2);
                let s = if basis[i].1 && basis[j].1 { Gauss::int(-1) } else { Gauss::one() };
                let yx = self.mul(y, x);
                let c: Vector = self.mul(x, y).iter().zip(&yx).map(|(p, q)| p - &(&s * q)).collect();
                brackets[i][j] = m.solve(&c).expect("catalog basis spans a subalgebra");
                form.set(i, j, &scale * &self.str(&self.mul(x, y)));
            }
        }
        LieSuperalgebra {
            name: name.into(),
            labels: basis.iter().map(|b| b.0.to_string()).collect(),
            parity: basis.iter().map(|b| b.1).collect(),
            brackets,
            form,
        }
    }
}

fn coords(basis: &[(&str, bool, Vector)], terms: &[(&str, i64)]) -> Vector {
    let mut v = vec![Gauss::zero(); basis.len()];
    for (l, c) in terms {
        let i = basis.iter().position(|b| b.0 == *l).expect("label");
        v[i] = Gauss::int(*c);
    }
    v
}

fn sl3_basis(mats: &SuperMatrices) -> Vec<(&'static str, bool, Vector)> {
    let u = |i, j| mats.unit(i, j);
    let h = |a: usize, b: usize| -> Vector { u(a, a).iter().zip(u(b, b)).map(|(x, y)| x - &y).collect() };
    vec![
        ("e12", false, u(0, 1)),
        ("e13", false, u(0, 2)),
        ("e23", false, u(1, 2)),
        ("h1", false, h(0, 1)),
        ("h2", false, h(1, 2)),
        ("e21", false, u(1, 0)),
        ("e31", false, u(2, 0)),
        ("e32", false, u(2, 1)),
    ]
}

/// Names accepted by [`catalog`].
pub fn catalog_names() -> &'static [&'static str] {
    &["sl2", "sl3-principal", "sl3-minimal", "osp12", "sl21"]
}

/// Built-in algebras: sl₂, sl₃ with principal and minimal triples,
/// osp(1|2) and sl(2|1) with its principal osp(1|2).
pub fn catalog(name: &str) -> Result<AlgebraFile, AlgebraError> {
    let even2 = SuperMatrices { n: 2, row_parity: vec![false, false] };
    let even3 = SuperMatrices { n: 3, row_parity: vec![false, false, false] };
    let super3 = SuperMatrices { n: 3, row_parity: vec![false, true, false] };
    match name {
        "sl2" => {
            let h: Vector = even2.unit(0, 0).iter().zip(even2.unit(1, 1)).map(|(x, y)| x - &y).collect();
            let basis = vec![("E", false, even2.unit(0, 1)), ("H", false, h), ("F", false, even2.unit(1, 0))];
            let g = even2.algebra("sl2", &basis, Gauss::one());
            let t = Sl2Triple { e: coords(&basis, &[("E", 1)]), h: coords(&basis, &[("H", 1)]), f: coords(&basis, &[("F", 1)]) };
            Ok(AlgebraFile::from_algebra(&g, Some(&t), None))
        }
        "sl3-principal" | "sl3" => {
            let basis = sl3_basis(&even3);
            let g = even3.algebra("sl3-principal", &basis, Gauss::real(crate::scalar::rat(1, 4)));
            let t = Sl2Triple {
                e: coords(&basis, &[("e12", 1), ("e23", 1)]),
                h: coords(&basis, &[("h1", 2), ("h2", 2)]),
                f: coords(&basis, &[("e21", 2), ("e32", 2)]),
            };
            Ok(AlgebraFile::from_algebra(&g, Some(&t), None))
        }
        "sl3-minimal" => {
            let basis = sl3_basis(&even3);
            let g = even3.algebra("sl3-minimal", &basis, Gauss::one());
            let t = Sl2Triple {
                e: coords(&basis, &[("e13", 1)]),
                h: coords(&basis, &[("h1", 1), ("h2", 1)]),
                f: coords(&basis, &[("e31", 1)]),
            };
            Ok(AlgebraFile::from_algebra(&g, Some(&t), None))
        }
        "osp12" | "osp(1|2)" => {
            let u = |i, j| super3.unit(i, j);
            let comb =
                |a: Vector, b: Vector, s: i64| -> Vector { a.iter().zip(b).map(|(x, y)| x + &(&y * &Gauss::int(s))).collect() };
            let basis = vec![
                ("E", false, u(0, 2)),
                ("e", true, comb(u(0, 1), u(1, 2), 1)),
                ("H", false, comb(u(0, 0), u(2, 2), -1)),
                ("f", true, comb(u(1, 0), u(2, 1), -1).iter().map(|x| -x).collect()),
                ("F", false, u(2, 0)),
            ];
            let g = super3.algebra("osp12", &basis, Gauss::one());
            let o = OspTriple {
                big_e: coords(&basis, &[("E", 1)]),
                e: coords(&basis, &[("e", 1)]),
                h: coords(&basis, &[("H", 1)]),
                f: coords(&basis, &[("f", 1)]),
                big_f: coords(&basis, &[("F", 1)]),
            };
            Ok(AlgebraFile::from_algebra(&g, Some(&o.sl2()), Some(&o)))
        }
        "sl21" | "sl(2|1)" => {
            let u = |i, j| super3.unit(i, j);
            let comb =
                |a: Vector, b: Vector, s: i64| -> Vector { a.iter().zip(b).map(|(x, y)| x + &(&y * &Gauss::int(s))).collect() };
            let basis = vec![
                ("e12", true, u(0, 1)),
                ("e13", false, u(0, 2)),
                ("e23", true, u(1, 2)),
                ("h1", false, comb(u(0, 0), u(2, 2), -1)),
                ("h2", false, comb(u(0, 0), u(1, 1), 1)),
                ("e21", true, u(1, 0)),
                ("e31", false, u(2, 0)),
                ("e32", true, u(2, 1)),
            ];
            let g = super3.algebra("sl21", &basis, Gauss::one());
            let o = OspTriple {
                big_e: coords(&basis, &[("e13", 1)]),
                e: coords(&basis, &[("e12", 1), ("e23", 1)]),
                h: coords(&basis, &[("h1", 1)]),
                f: coords(&basis, &[("e21", -1), ("e32", 1)]),
                big_f: coords(&basis, &[("e31", 1)]),
            };
            Ok(AlgebraFile::from_algebra(&g, Some(&o.sl2()), Some(&o)))
        }
        other => Err(AlgebraError::UnknownCatalog(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn catalog_algebras_validate_and_grade() {
        for name in catalog_names() {
            let file = catalog(name).unwrap();
            let ga = file.graded().unwrap_or_else(|e| panic!("{}: {}", name, e));
            let again = AlgebraFile::from_json(&file.to_json()).unwrap();
            assert_eq!(again, file);
            let sorted = ga.grading.windows(2).all(|w| w[0] <= w[1]);
            assert!(sorted, "{}", name);
        }
    }

    #[test]
    fn osp12_relations_match_the_standard_table() {
        let ga = catalog("osp12").unwrap().graded().unwrap();
        let g = &ga.g;
        let ix = |l: &str| g.basis(g.index_of(l).unwrap());
        assert_eq!(g.bracket(&ix("e"), &ix("f")), g.bracket(&ix("f"), &ix("e")));
        assert_eq!(g.bracket(&ix("e"), &ix("f")), ix("H").iter().map(|x| -x).collect::<Vector>());
        assert_eq!(g.form_of(&ix("e"), &ix("f")), Gauss::int(-2));
        let grades: Vec<_> = ["F", "f", "H", "e", "E"].iter().map(|l| ga.grading[g.index_of(l).unwrap()].clone()).collect();
        assert_eq!(grades, vec![rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]);
    }

    #[test]
    fn flipped_bracket_is_reported() {
        let mut file = catalog("sl2").unwrap();
        for b in file.brackets.iter_mut() {
            if b.i == IndexRef::Label("E".into()) && b.j == IndexRef::Label("F".into()) {
                b.coeffs = vec![(IndexRef::Label("H".into()), "-1".into())];
            }
        }
        let err = file.graded().unwrap_err().to_string();
        assert!(err.contains("[E,F]"), "{}", err);
    }

    #[test]
    fn mirrored_brackets_are_filled_in() {
        let text = r#"{"name":"sl2","basis":[{"label":"E","parity":0},{"label":"H","parity":"even"},{"label":"F","parity":0}],
            "brackets":[{"i":"H","j":"E","coeffs":[["E","2"]]},{"i":1,"j":2,"coeffs":[[2,"-2"]]},{"i":"E","j":"F","coeffs":[["H","1"]]}],
            "form":[["0","0","1"],["0","2","0"],["1","0","0"]],
            "sl2":{"E":["1","0","0"],"H":["0","1","0"],"F":["0","0","1"]}}"#;
        let ga = AlgebraFile::from_json(text).unwrap().graded().unwrap();
        assert_eq!(ga.g.labels, vec!["F", "H", "E"]);
    }
}

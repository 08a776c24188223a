//! λ-brackets of arbitrary differential polynomials in affine sl(2|1), and a
//! check of the Leibniz rules on them.

use superw::liesuper::catalog;
use superw::pva::{affine_table, bracket, left_leibniz_defect, right_leibniz_defect};
use superw::scalar::Scalar;
use superw::superpoly::{render, Family, NameTable, SuperPoly, Var};

fn main() {
    let g = catalog("sl21").unwrap().graded().unwrap().g;
    let t = affine_table(&g, &Scalar::k());
    let mut names = NameTable::default();
    for (i, l) in g.labels.iter().enumerate() {
        names.insert(Family::Affine, i, l.clone());
    }
    let u = |l: &str| {
        let i = g.index_of(l).unwrap();
        SuperPoly::var(Var::gen(Family::Affine, i, g.parity[i]))
    };
    let a = &u("e12") * &u("h1");
    let b = &u("e21").partial_t() * &u("e32");
    let c = u("e23");
    println!("a = {}, b = {}, c = {}", render(&a, &names), render(&b, &names), render(&c, &names));
    println!("{{a λ b}} = {}", bracket(&t, &a, &b).render(&names));
    println!("{{a λ bc}} rule holds: {}", right_leibniz_defect(&t, &a, &b, &c).is_zero());
    println!("{{ab λ c}} rule holds: {}", left_leibniz_defect(&t, &a, &b, &c).is_zero());
}

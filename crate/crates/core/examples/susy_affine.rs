//! χ-brackets in the SUSY affine algebra of osp(1|2), and the λ-bracket
//! algebra obtained from it.

use superw::liesuper::catalog;
use superw::pva;
use superw::scalar::Scalar;
use superw::superpoly::{render, Family, NameTable, SuperPoly, Var};
use superw::susy_pva::{bracket, reduce_to_pva, susy_affine_table};

fn main() {
    let ga = catalog("osp12").unwrap().graded().unwrap();
    let g = &ga.g;
    let t = susy_affine_table(g, &Scalar::k());
    let mut names = NameTable::default();
    for (i, l) in g.labels.iter().enumerate() {
        names.insert(Family::Susy, i, format!("{}̄", l));
    }
    let v = |l: &str| SuperPoly::var(Var::gen(Family::Susy, g.index_of(l).unwrap(), !g.parity[g.index_of(l).unwrap()]));
    for (a, b) in [("e", "f"), ("H", "H"), ("E", "F"), ("F", "F")] {
        println!("{{{}̄ χ {}̄}} = {}", a, b, bracket(&t, &v(a), &v(b)).render(&names));
    }
    let x = &v("H") * &v("e");
    let y = v("f").super_d();
    println!("{{{} χ {}}} = {}", render(&x, &names), render(&y, &names), bracket(&t, &x, &y).render(&names));

    let r = reduce_to_pva(&t);
    println!(
        "reduced λ-bracket algebra: {} generators, skew failures {}, Jacobi failures {}",
        r.gens.len(),
        pva::check_skew(&r).len(),
        pva::check_jacobi(&r).len()
    );
}

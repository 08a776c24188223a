//! Checks that the SUSY W-algebra from reduction and the BRST cohomology at
//! c = i coincide, generator by generator and bracket by bracket.

use superw::brst::BrstComplex;
use superw::liesuper::catalog;
use superw::scalar::Scalar;
use superw::susy_w::{check_equivalence, SusyReductionContext};

fn main() {
    for name in ["osp12", "sl21"] {
        let ga = catalog(name).unwrap().graded().unwrap();
        let w = SusyReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
        let h = BrstComplex::new(&ga, Scalar::k()).unwrap().cohomology(&Scalar::i()).unwrap();
        let rep = check_equivalence(&w, &h).unwrap();
        println!("{}: {} generators, agree = {}", name, w.rank(), rep.passed());
        for j in 0..w.rank() {
            println!("  {} = {}", w.generator_name(j), w.render_generator(j));
            println!("  {} = {}", h.generator_name(j), h.render_generator(j));
        }
    }
}

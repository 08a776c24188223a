//! Generators and λ-brackets of the W-algebras of sl3 for the principal and
//! minimal nilpotents.

use superw::classical_w::{Method, ReductionContext};
use superw::liesuper::catalog;
use superw::scalar::Scalar;

fn main() {
    for name in ["sl3-principal", "sl3-minimal"] {
        let ga = catalog(name).unwrap().graded().unwrap();
        let w = ReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
        println!("== {} ({} generators)", name, w.rank());
        for j in 0..w.rank() {
            println!("{} = {}", w.generator_name(j), w.render_generator(j));
        }
        for i in 0..w.rank() {
            for j in 0..w.rank() {
                let b = w.bracket(i, j, Method::Closed).unwrap();
                println!("{{{} λ {}}} = {}", w.generator_name(i), w.generator_name(j), b.render(&w.ctx.names));
            }
        }
    }
}

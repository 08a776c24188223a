//! The W-algebra of sl2 is the Virasoro Poisson vertex algebra.

use superw::classical_w::{Method, ReductionContext};
use superw::liesuper::catalog;
use superw::scalar::Scalar;

fn main() {
    let ga = catalog("sl2").unwrap().graded().unwrap();
    let w = ReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
    let name = w.generator_name(0);
    println!("{} = {}  (weight {})", name, w.render_generator(0), w.gens[0].weight);
    let b = w.bracket(0, 0, Method::Direct).unwrap();
    println!("{{{} λ {}}} = {}", name, name, b.render(&w.ctx.names));

    // the central term at a few numeric levels
    for k in ["1", "-2", "1/2"] {
        let k: Scalar = k.parse().unwrap();
        let c = b.coeff(3).eval_scalars(Some(&k), None).constant_term();
        println!("k = {:>4}: λ^3 coefficient {}", k.to_string(), c);
    }
}

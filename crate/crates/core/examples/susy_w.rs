//! SUSY W-algebras of osp(1|2) and sl(2|1) by reduction.

use superw::classical_w::Method;
use superw::liesuper::catalog;
use superw::scalar::Scalar;
use superw::susy_w::SusyReductionContext;

fn main() {
    for name in ["osp12", "sl21"] {
        let ga = catalog(name).unwrap().graded().unwrap();
        let ctx = SusyReductionContext::new(&ga, Scalar::k()).unwrap();
        let w = ctx.solve_all().unwrap();
        println!("== {}", name);
        for (j, g) in w.gens.iter().enumerate() {
            println!("{} = {}  (weight {})", w.generator_name(j), w.render_generator(j), g.weight);
            println!(
                "   part linear in [e, g] variables, from chains: {}",
                superw::superpoly::render(&ctx.to_original(&ctx.gamma_linear(j)), &ctx.original_names())
            );
        }
        for i in 0..w.rank() {
            for j in 0..w.rank() {
                let b = w.bracket(i, j, Method::Closed).unwrap();
                println!("{{{} χ {}}} = {}", w.generator_name(i), w.generator_name(j), b.render(&ctx.names));
            }
        }
    }
}

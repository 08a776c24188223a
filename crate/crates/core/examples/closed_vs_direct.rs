//! Compares the chain-sum bracket formulas with brute-force reduction on
//! every catalog algebra, timing both.

use std::time::Instant;

use superw::classical_w::{Method, ReductionContext};
use superw::liesuper::{catalog, catalog_names};
use superw::scalar::Scalar;
use superw::susy_w::SusyReductionContext;

fn main() {
    for name in catalog_names() {
        let ga = catalog(name).unwrap().graded().unwrap();
        let w = ReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
        let t0 = Instant::now();
        let direct = w.table(Method::Direct).unwrap();
        let t1 = Instant::now();
        let closed = w.table(Method::Closed).unwrap();
        let t2 = Instant::now();
        let same = direct.gens.iter().all(|a| direct.gens.iter().all(|b| direct.entry(a, b) == closed.entry(a, b)));
        println!("{:<14} λ: agree = {:<5} direct {:?}, closed {:?}", name, same, t1 - t0, t2 - t1);
        if ga.osp.is_some() {
            let sw = SusyReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
            println!("{:<14} χ: mismatched pairs {:?}", name, sw.compare_methods().unwrap());
        }
    }
}

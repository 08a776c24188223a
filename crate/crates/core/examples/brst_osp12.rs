//! The BRST complex of osp(1|2): checks on the differential, then the
//! cohomology generator and its bracket.

use superw::brst::BrstComplex;
use superw::liesuper::catalog;
use superw::scalar::Scalar;

fn main() {
    let ga = catalog("osp12").unwrap().graded().unwrap();
    let cx = BrstComplex::new(&ga, Scalar::k()).unwrap();
    println!("complex generators: {}", cx.generators().len());
    let (dd, bad) = cx.check_d_squared(&Scalar::c());
    println!("{{d_χ d}} = 0 for symbolic c: {}", dd.is_zero());
    println!("d_[0]² = 0 on generators: {}", bad.is_empty());
    println!("d_[0] on generators matches closed forms: {}", cx.check_differential_on_generators(&Scalar::c()).is_empty());

    let h = cx.cohomology(&Scalar::i()).unwrap();
    for j in 0..h.rank() {
        println!("{} = {}", h.generator_name(j), h.render_generator(j));
    }
    let b = h.bracket(0, 0).unwrap();
    let n = h.generator_name(0);
    println!("{{{} χ {}}} = {}", n, n, b.render(&cx.names));
}

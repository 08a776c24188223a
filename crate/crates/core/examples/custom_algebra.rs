//! Loads an algebra from JSON, validates it and computes its W-algebra.

use superw::classical_w::{Method, ReductionContext};
use superw::liesuper::AlgebraFile;
use superw::scalar::Scalar;

// sl2 listed in the order (F, H, E), with (E|F) = 1 and (H|H) = 2. Brackets
// not listed follow by antisymmetry.
const SL2: &str = r#"{
  "name": "sl2-reordered",
  "basis": [
    {"label": "F", "parity": "even"},
    {"label": "H", "parity": "even"},
    {"label": "E", "parity": "even"}
  ],
  "brackets": [
    {"i": "H", "j": "E", "coeffs": [["E", "2"]]},
    {"i": "H", "j": "F", "coeffs": [["F", "-2"]]},
    {"i": "E", "j": "F", "coeffs": [["H", "1"]]}
  ],
  "form": [["0", "0", "1"], ["0", "2", "0"], ["1", "0", "0"]],
  "sl2": {"E": ["0", "0", "1"], "H": ["0", "1", "0"], "F": ["1", "0", "0"]}
}"#;

fn main() {
    let file = AlgebraFile::from_json(SL2).expect("valid JSON");
    let ga = file.graded().expect("valid algebra and triple");
    for (l, g) in ga.g.labels.iter().zip(&ga.grading) {
        println!("{} has grade {}", l, g);
    }
    let w = ReductionContext::new(&ga, Scalar::k()).unwrap().solve_all().unwrap();
    println!("{} = {}", w.generator_name(0), w.render_generator(0));
    let n = w.generator_name(0);
    println!("{{{} λ {}}} = {}", n, n, w.bracket(0, 0, Method::Direct).unwrap().render(&w.ctx.names));

    // A broken Jacobi identity is reported instead of silently accepted.
    let broken = SL2.replace(r#"[["F", "-2"]]"#, r#"[["F", "-3"]]"#);
    match AlgebraFile::from_json(&broken).unwrap().graded() {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {}", e),
    }
}

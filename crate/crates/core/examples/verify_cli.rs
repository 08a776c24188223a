//! Runs the command-line verification suites in-process.

use superw::cli::run;

fn main() {
    for (algebra, suite) in
        [("sl3-minimal", "closed-brackets"), ("osp12", "d-squared"), ("sl21", "brst-equivalence"), ("sl21", "leibniz")]
    {
        let out = run(["superw", "verify", "--algebra", algebra, "--suite", suite, "--seed", "7"]);
        print!("[{} {}] exit {}\n{}", algebra, suite, out.code, out.output);
    }
}

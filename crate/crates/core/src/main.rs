fn main() {
    let out = superw::cli::run(std::env::args_os());
    print!("{}", out.output);
    std::process::exit(out.code);
}

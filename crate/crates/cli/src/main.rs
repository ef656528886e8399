fn main() {
    let mut out = String::new();
    let code = chaincalc::run(std::env::args(), &mut out);
    print!("{out}");
    std::process::exit(code);
}

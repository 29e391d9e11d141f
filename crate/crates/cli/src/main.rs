fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(sobolev_cli::run(&argv));
}

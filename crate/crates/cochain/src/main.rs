fn main() { std::process::exit(cochain::cli::run(std::env::args().collect())); }

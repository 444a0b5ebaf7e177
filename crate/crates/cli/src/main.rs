fn main() { std::process::exit(solitar_cli::run(std::env::args().collect())) }

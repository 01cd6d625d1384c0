fn main() { std::process::exit(frachyp::cli::run(std::env::args().collect())); }

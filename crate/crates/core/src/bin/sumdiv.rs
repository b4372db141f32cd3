fn main() { std::process::exit(sumdiv::cli::main()) }

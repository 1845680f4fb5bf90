fn main() {
    std::process::exit(moea_bench::cli::main());
}

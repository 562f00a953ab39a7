fn main() {
    std::process::exit(eppa_cli::main_with_args(std::env::args().collect()));
}

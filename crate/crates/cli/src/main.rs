fn main() {
    std::process::exit(mvrho_cli::run(std::env::args_os().collect()));
}

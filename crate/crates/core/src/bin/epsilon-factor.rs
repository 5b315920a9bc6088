fn main() {
    std::process::exit(epsilon_factor::cli::run(std::env::args_os()));
}

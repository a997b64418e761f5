fn main() {
    std::process::exit(triquad::cli::run_from_env());
}

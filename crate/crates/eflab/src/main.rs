fn main() {
    std::process::exit(eflab::cli::run());
}

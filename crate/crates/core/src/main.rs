fn main() {
    std::process::exit(pfassoc::cli::run(std::env::args()));
}

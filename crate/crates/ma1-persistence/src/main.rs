fn main() {
    std::process::exit(ma1_persistence::cli::run(std::env::args()));
}

fn main() {
    std::process::exit(qrefless::cli::run());
}

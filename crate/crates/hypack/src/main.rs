fn main() {
    std::process::exit(hypack::cli::run());
}

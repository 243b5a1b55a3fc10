fn main() {
    std::process::exit(readcode::cli::run());
}

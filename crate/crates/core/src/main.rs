fn main() {
    std::process::exit(eigenkit::cli::run());
}

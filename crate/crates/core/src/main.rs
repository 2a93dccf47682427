fn main() {
    std::process::exit(dgla::cli::main());
}

fn main() {
    std::process::exit(progressor::cli::main());
}

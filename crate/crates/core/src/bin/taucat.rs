fn main() {
    std::process::exit(taucat::cli::main());
}

fn main() {
    std::process::exit(bbp_core::cli::main());
}

fn main() {
    std::process::exit(dunkl_pauli::cli::main_with_args(std::env::args_os()));
}

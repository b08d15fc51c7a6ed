fn main() {
    std::process::exit(dft_hermite::cli::main_exit_code());
}

fn main() {
    std::process::exit(fraclap::cli::main_with(std::env::args_os()));
}

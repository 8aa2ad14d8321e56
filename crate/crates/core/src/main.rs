fn main() {
    std::process::exit(qprofile::cli::main_with_args(std::env::args_os()));
}

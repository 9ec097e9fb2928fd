fn main() {
    std::process::exit(twisted_conjugacy::cli::main_with_args(std::env::args_os()));
}

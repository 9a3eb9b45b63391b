fn main() {
    std::process::exit(chevalley::cli::main_with_args(std::env::args_os()));
}

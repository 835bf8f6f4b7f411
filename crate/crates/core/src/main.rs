fn main() {
    std::process::exit(foldcover::cli::main_with_args(std::env::args_os()));
}

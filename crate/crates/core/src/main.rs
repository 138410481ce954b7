fn main() {
    std::process::exit(gpgroup::cli::main_with_args(std::env::args_os()));
}

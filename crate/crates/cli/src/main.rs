fn main() {
    std::process::exit(rgsslab_cli::cli::main_with_args(std::env::args_os()));
}

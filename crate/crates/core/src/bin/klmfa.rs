fn main() {
    std::process::exit(klmfa::app::cli::main_with_args(std::env::args_os()));
}

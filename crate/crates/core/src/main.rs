fn main() {
    std::process::exit(concordance_lab::cli::main_with_args(std::env::args_os()));
}

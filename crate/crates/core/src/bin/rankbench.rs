fn main() {
    std::process::exit(rankbench::cli::main_with_args(std::env::args_os()));
}

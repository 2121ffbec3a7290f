fn main() {
    std::process::exit(splitscore::cli::main_with_args(std::env::args_os()));
}

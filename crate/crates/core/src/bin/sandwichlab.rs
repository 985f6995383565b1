fn main() {
    std::process::exit(sandwichlab::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(ordfix::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(fieldrot::cli::run(std::env::args_os()));
}

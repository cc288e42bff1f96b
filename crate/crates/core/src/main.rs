fn main() {
    std::process::exit(misparse::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(onep::cli::run(std::env::args_os()));
}

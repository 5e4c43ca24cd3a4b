fn main() {
    std::process::exit(eulerchi::cli::run(std::env::args_os()));
}

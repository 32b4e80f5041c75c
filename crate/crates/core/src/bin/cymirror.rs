fn main() {
    std::process::exit(cymirror::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(kacbaker::cli::run(std::env::args_os()));
}

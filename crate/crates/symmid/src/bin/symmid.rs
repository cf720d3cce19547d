fn main() {
    std::process::exit(symmid::cli::run(std::env::args_os()));
}

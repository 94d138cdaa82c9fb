fn main() {
    std::process::exit(knotq::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(atrous::cli::run(std::env::args_os()));
}

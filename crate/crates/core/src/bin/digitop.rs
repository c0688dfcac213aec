fn main() {
    std::process::exit(digitop::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(pisys::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(cscert::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(sscx_core::cli::run(std::env::args_os()));
}

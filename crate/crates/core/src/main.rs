fn main() {
    std::process::exit(ra_crypt::cli::run_from_args(std::env::args_os()));
}

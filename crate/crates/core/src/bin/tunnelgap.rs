fn main() {
    std::process::exit(tunnelgap::cli::run(std::env::args_os()));
}

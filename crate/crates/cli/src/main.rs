fn main() {
    std::process::exit(tube_ncr_cli::run(std::env::args_os()));
}

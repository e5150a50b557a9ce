fn main() {
    std::process::exit(leafspan::cli::run_cli(std::env::args_os()));
}

fn main() {
    std::process::exit(lmo_splice_cli::run(std::env::args_os()));
}

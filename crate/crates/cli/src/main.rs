fn main() {
    std::process::exit(corrwron_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(qcirc_cli::run(std::env::args_os()));
}

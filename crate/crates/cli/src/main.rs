fn main() {
    std::process::exit(argshift_cli::run(std::env::args_os()));
}

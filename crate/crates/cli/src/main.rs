fn main() {
    std::process::exit(hbg_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(ionbound::cli::dispatch(std::env::args_os()));
}

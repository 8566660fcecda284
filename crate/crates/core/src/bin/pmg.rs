fn main() {
    std::process::exit(pmgames::cli::run(std::env::args_os()));
}

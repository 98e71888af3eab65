fn main() {
    std::process::exit(chofisher::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(precog::cli::run(std::env::args_os()));
}

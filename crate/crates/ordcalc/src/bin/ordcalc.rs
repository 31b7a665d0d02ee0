fn main() {
    std::process::exit(ordcalc::cli::run(std::env::args_os()));
}

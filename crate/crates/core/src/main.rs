fn main() {
    std::process::exit(circulant_primality::cli::run(std::env::args_os()));
}

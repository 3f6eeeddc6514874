fn main() {
    std::process::exit(bicomplex::cli::run(std::env::args_os()));
}

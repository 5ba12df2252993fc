fn main() {
    std::process::exit(sectorlab::cli::run(std::env::args_os()));
}

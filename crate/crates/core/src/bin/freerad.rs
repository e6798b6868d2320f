fn main() {
    std::process::exit(freerad::cli::run(std::env::args_os()));
}

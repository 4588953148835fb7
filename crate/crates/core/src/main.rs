fn main() {
    std::process::exit(ricci_forge::cli::run(std::env::args_os()));
}

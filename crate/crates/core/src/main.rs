fn main() {
    std::process::exit(boundary_lab::cli::run(std::env::args_os()));
}

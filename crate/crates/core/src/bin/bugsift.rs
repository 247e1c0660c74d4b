fn main() {
    std::process::exit(bugsift::cli::run(std::env::args_os()));
}

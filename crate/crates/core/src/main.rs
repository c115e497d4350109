fn main() {
    std::process::exit(fsdim::cli::main_with(std::env::args_os()));
}

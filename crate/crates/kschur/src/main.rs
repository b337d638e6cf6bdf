fn main() {
    std::process::exit(kschur::cli::main_entry(std::env::args_os()));
}

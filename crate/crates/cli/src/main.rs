fn main() {
    std::process::exit(rellich_cli::main_with(std::env::args_os()));
}

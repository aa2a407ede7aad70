fn main() {
    std::process::exit(gwloc::cli::main_with_args(std::env::args_os()));
}

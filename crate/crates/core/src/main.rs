fn main() {
    std::process::exit(curvlift::cli::main_with_args(std::env::args()));
}

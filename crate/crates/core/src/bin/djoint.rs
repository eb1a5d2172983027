fn main() {
    std::process::exit(dirichlet_joint::cli::main_with_args(std::env::args_os()));
}

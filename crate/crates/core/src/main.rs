fn main() -> std::process::ExitCode {
    qect_core::cli::main_with_args(std::env::args_os())
}

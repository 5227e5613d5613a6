fn main() -> std::process::ExitCode {
    cipoints::cli::main()
}

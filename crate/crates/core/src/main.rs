fn main() -> std::process::ExitCode {
    divrank::cli::main()
}

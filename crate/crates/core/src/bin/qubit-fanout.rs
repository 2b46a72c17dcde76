fn main() -> std::process::ExitCode {
    qubit_fanout::io::cli::main()
}

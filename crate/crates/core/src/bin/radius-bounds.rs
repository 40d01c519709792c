fn main() -> std::process::ExitCode {
    radius_bounds::cli::main()
}

fn main() {
    let code = iontrap_audit::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}

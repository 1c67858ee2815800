fn main() {
    let stdout = std::io::stdout();
    let code = sphdet::cli::run(std::env::args_os(), &mut stdout.lock());
    std::process::exit(code);
}

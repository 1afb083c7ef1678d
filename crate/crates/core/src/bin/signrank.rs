use std::io::Write;

fn main() {
    let res = signrank::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(res.stdout.as_bytes());
    let _ = std::io::stderr().write_all(res.stderr.as_bytes());
    std::process::exit(res.exit_code);
}

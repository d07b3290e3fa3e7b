use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = vacent::cli::run(std::env::args_os().collect(), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}

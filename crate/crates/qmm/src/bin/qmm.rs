use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout();
    let code = qmm::cli::run(std::env::args(), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code);
}

use std::io::Write;

fn main() {
    let (out, code) = kostant::cli::run(std::env::args_os());
    if code == kostant::cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
        let _ = std::io::stdout().flush();
    }
    std::process::exit(code);
}

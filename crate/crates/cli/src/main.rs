use std::io::Write;

fn main() {
    let out = sl2char_cli::run(std::env::args().skip(1));
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}

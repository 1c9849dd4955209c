use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let out = carlitzlab::cli::run(&argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}

use std::io::Write;

fn main() {
    let rep = posthopf::cli::run(std::env::args_os());
    let code = rep.status.exit_code();
    let text = rep.human;
    if code == 2 {
        eprint!("{text}");
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
        let _ = out.flush();
    }
    std::process::exit(code);
}

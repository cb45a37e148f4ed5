use std::io::Write;

fn main() {
    let exec = repdim_cli::run(std::env::args_os());
    let rendered = exec.rendered.as_bytes();
    if exec.report.is_none() && exec.exit_code != repdim_cli::EXIT_PASS {
        let _ = std::io::stderr().write_all(rendered);
    } else {
        let _ = std::io::stdout().write_all(rendered);
    }
    std::process::exit(exec.exit_code);
}

use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    chirolab_cli::init_threads();
    let result = chirolab_cli::run(std::env::args_os());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(result.code)
}

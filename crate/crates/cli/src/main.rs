use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match chebcert_cli::parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match chebcert_cli::execute(&config) {
        Ok((code, summary)) => {
            print!("{summary}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

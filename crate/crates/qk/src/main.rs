use std::io;

fn main() -> std::process::ExitCode {
    let code = qk::cli::main_with(
        std::env::args_os(),
        std::env::var_os(qk::cli::ENUM_CAP_VAR),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::ExitCode::from(code.code())
}

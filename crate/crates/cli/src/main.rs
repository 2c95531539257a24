use clap::Parser;
use readability_cli::commands::{run, Status};
use readability_cli::{format, Cli};

fn main() {
    let res = run(Cli::parse());
    print!("{}", format::canonical(&res.envelope()));
    if res.status == Status::Error {
        for line in &res.diagnostics {
            eprintln!("error: {line}");
        }
    }
    std::process::exit(res.status.exit_code());
}

use clap::Parser;

use veinott::cli::{run, Cli, EXIT_INPUT};

fn main() {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(report) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &report) {
                    eprintln!("cannot write {}: {e}", path.display());
                    std::process::exit(EXIT_INPUT);
                }
            } else {
                print!("{report}");
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

use std::io::Write;

use clap::Parser;

fn main() {
    let args = ghz_cli::Args::parse();
    match ghz_cli::execute(&args) {
        Ok(r) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", r.render(args.json));
            std::process::exit(r.exit_code);
        }
        Err(e) => {
            eprintln!("ghz: {e}");
            std::process::exit(2);
        }
    }
}

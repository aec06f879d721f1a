use clap::Parser;

use trapent_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = trapent_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

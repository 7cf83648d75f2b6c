use clap::Parser;

use channel_spin::cli_io::{run, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}

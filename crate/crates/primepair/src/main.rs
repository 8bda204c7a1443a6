use clap::Parser;
use primepair::cli;

fn main() {
    let args = cli::Cli::parse();
    std::process::exit(cli::run(args));
}

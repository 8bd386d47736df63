use clap::Parser;

fn main() {
    std::process::exit(levelt_cli::run(levelt_cli::Cli::parse()));
}

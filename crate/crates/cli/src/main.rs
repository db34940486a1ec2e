use clap::Parser;

fn main() {
    let cli = orbitgeo_cli::cli::Cli::parse();
    std::process::exit(orbitgeo_cli::cli::run(cli));
}

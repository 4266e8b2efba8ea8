use clap::Parser;

fn main() {
    std::process::exit(qcluster::cli::main_with(qcluster::cli::Args::parse()));
}

use clap::Parser;

fn main() {
    let cli = qgen_core::cli::Cli::parse();
    std::process::exit(qgen_core::cli::run(&cli));
}

use clap::Parser;

fn main() {
    let cli = psiball_cli::Cli::parse();
    if let Err(err) = psiball_cli::run(&cli) {
        eprintln!("psiball: {err}");
        std::process::exit(err.exit_code());
    }
}

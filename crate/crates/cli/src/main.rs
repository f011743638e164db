use clap::Parser;

fn main() {
    let cli = fdde_cli::Cli::parse();
    if let Err(e) = fdde_cli::run(&cli) {
        eprintln!("fdde: {e}");
        std::process::exit(e.exit_code());
    }
}

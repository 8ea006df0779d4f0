use clap::Parser;
use raman_nc_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = raman_nc_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

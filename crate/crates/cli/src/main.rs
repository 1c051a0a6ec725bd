use clap::Parser;

fn main() {
    let cli = sirsec_cli::cli::Cli::parse();
    match sirsec_cli::execute(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

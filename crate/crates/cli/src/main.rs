use clap::Parser;
use ratconv_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = run(cli, &mut out) {
        eprintln!("ratconv: {e}");
        std::process::exit(e.exit_code());
    }
}

use clap::Parser;

fn main() {
    let cli = hom::Cli::parse();
    if let Err(e) = hom::run(&cli) {
        eprintln!("hom: {e}");
        std::process::exit(e.exit_code());
    }
}

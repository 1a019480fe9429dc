use clap::Parser;
use sphere_lattice::Error;

fn main() {
    let cli = sphere_lattice::cli::Cli::parse();
    match sphere_lattice::cli::run(&cli) {
        Ok(()) => {}
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

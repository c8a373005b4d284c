//! Command-line interface for the plat-closure Jones polynomial engine.

fn main() {
    // Wired up once the library surface is complete.
    eprintln!("not yet implemented");
    std::process::exit(2);
}

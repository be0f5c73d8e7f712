use clap::Parser;

use osp::cli::{exit_code, init_threads, run, write_output, Cli};

fn main() {
    let cli = Cli::parse();
    let res = init_threads(&cli.opts).and_then(|_| run(&cli));
    if let Ok(out) = &res {
        if let Err(e) = write_output(&cli.opts, out) {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
    if let Err(e) = &res {
        eprintln!("error: {e:#}");
    }
    std::process::exit(exit_code(&res));
}

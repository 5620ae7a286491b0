use std::process::exit;

fn main() {
    exit(ou_kit::cli::run(std::env::args_os()));
}

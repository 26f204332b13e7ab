fn main() {
    std::process::exit(specmom::run_cli(std::env::args_os()));
}

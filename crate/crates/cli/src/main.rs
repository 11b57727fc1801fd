fn main() {
    std::process::exit(mgsampler_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(wfs_noise::cli::run(std::env::args_os()));
}

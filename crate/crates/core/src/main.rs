fn main() {
    std::process::exit(cknmt::cli::run(std::env::args_os()));
}

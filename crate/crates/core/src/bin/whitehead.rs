fn main() {
    std::process::exit(whitehead::cli::main());
}

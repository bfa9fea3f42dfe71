fn main() {
    std::process::exit(homnorm_cli::run());
}

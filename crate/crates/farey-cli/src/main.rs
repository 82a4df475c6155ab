fn main() {
    std::process::exit(farey_cli::run());
}

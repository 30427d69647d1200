fn main() {
    std::process::exit(leecodes::cli::run());
}

fn main() {
    std::process::exit(ggf::cli::run());
}

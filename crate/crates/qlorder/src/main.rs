fn main() {
    std::process::exit(qlorder::cli::run());
}

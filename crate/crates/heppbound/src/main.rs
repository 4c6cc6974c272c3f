fn main() {
    std::process::exit(heppbound::run_cli());
}

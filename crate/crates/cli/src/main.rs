fn main() {
    std::process::exit(parthom::run(std::env::args_os()));
}

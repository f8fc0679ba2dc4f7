fn main() {
    std::process::exit(congruence_lab::main_with(std::env::args_os()));
}

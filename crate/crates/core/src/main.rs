fn main() {
    std::process::exit(revuplift::pipeline::main_with_args(std::env::args_os()));
}

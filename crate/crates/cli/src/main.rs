fn main() {
    let (code, out) = hhci_cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}

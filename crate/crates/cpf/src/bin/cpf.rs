fn main() {
    std::process::exit(cpf::cli::run());
}

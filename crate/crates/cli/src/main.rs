fn main() {
    std::process::exit(ris_budget_cli::main_with_std());
}

use std::process;

fn main() {
    process::exit(quatlogic::cli::main_entry());
}

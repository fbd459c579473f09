fn main() {
    std::process::exit(thue_pcp::cli::run(std::env::args_os()));
}

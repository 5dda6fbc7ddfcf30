use steiner_orient::cli;

fn main() {
    std::process::exit(cli::cli_main(std::env::args_os()));
}

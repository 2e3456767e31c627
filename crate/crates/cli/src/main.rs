use cycledecomp_cli::{run, Io};

fn main() {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = run(std::env::args_os(), &mut Io { out: &mut out, err: &mut err });
    std::process::exit(code);
}

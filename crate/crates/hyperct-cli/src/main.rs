use hyperct_cli::{parse_args, run};

fn main() {
    // HYPERCT_THREADS caps worker parallelism (0 or unset = auto)
    if let Ok(v) = std::env::var("HYPERCT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let config = match parse_args(std::env::args()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("{msg}");
            std::process::exit(2);
        }
    };
    std::process::exit(run(&config));
}

use std::sync::mpsc;
use std::time::{Duration, Instant};

const PROGRESS_AFTER: Duration = Duration::from_secs(5);

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (done, finished) = mpsc::channel::<()>();
    let started = Instant::now();
    let ticker = std::thread::spawn(move || {
        while let Err(mpsc::RecvTimeoutError::Timeout) = finished.recv_timeout(PROGRESS_AFTER) {
            eprintln!("kron-stab: still working ({}s elapsed)", started.elapsed().as_secs());
        }
    });
    let outcome = kronstab_cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    let _ = done.send(());
    let _ = ticker.join();
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}

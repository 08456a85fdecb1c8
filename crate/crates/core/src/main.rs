use std::io::{self, Write};
use std::process::ExitCode;
use std::thread;

// Derivations and formulas are recursive structures whose depth is bounded
// by the measure limit, so the work runs on a thread with a large stack.
const WORKER_STACK: usize = 512 * 1024 * 1024;

fn main() -> ExitCode {
    let worker = thread::Builder::new()
        .name("microlog".into())
        .stack_size(WORKER_STACK)
        .spawn(|| {
            let stdin = io::stdin();
            let stdout = io::stdout();
            let stderr = io::stderr();
            let mut out = io::BufWriter::new(stdout.lock());
            let code = microlog::cli::main_with_args(std::env::args_os(), &mut stdin.lock(), &mut out, &mut stderr.lock());
            let _ = out.flush();
            code
        })
        .expect("spawn worker thread");
    let code = worker.join().unwrap_or(101);
    ExitCode::from(code as u8)
}

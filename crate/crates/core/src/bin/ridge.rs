fn main() {
    if let Some(n) = std::env::var("RIDGE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    std::process::exit(ridge_core::cli::main_with_args(std::env::args()));
}

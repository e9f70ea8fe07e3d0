//! Exact circuit tensors and circuit enumerators for qubit circuits, and error-path
//! counting for noisy syndrome extraction on stabilizer codes.

pub mod cli;
pub mod codes;
pub mod enumerator;
pub mod oracle;
pub mod pauli;
pub mod poly;
pub mod tensor;

/// Sizes the global worker pool used by enumeration. Returns false if the pool was
/// already initialized.
pub fn init_threads(n: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .is_ok()
}

//! File formats, table reproduction and the oracle verification suite behind
//! the `psq` command-line tool.

#![deny(unsafe_code)]
#![warn(missing_docs)]

pub mod format;
pub mod report;
pub mod table;
pub mod verify;

/// Sizes the global rayon pool; `0` keeps rayon's default (one thread per core).
pub fn init_threads(threads: usize) -> Result<(), rayon::ThreadPoolBuildError> {
    if threads == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()
}

//! Shared helpers for the criterion benches.

use sck_core::{Width, Word};

/// Deterministic word vector without pulling rand into the lib.
pub fn pattern_input(len: usize, width: Width) -> Vec<Word> {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            Word::new(state as u32, width)
        })
        .collect()
}

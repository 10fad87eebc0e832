//! Complete j-MDP convolutional codes over small finite fields.
//!
//! This crate constructs, verifies, searches for and decodes `(n, k, δ)`
//! convolutional codes given by the coefficient matrices `H_0..H_ν` of a
//! parity-check matrix. The interesting codes are the complete j-MDP ones:
//! every not-trivially-zero full-size minor of the partial parity-check
//! matrix of window index j is nonzero, which makes them optimal for
//! sequential erasure decoding with delay bound T = j and lets a decoder
//! restart after an uncorrectable burst.
//!
//! The main pieces:
//!
//! * [`gf`] — exact GF(p^r) arithmetic (q ≤ 2^16) with log/antilog tables;
//! * [`code`] — codes, sliding/partial/reverse structured matrices,
//!   resultants and left-primeness;
//! * [`minors`] — not-trivially-zero minor enumeration, the property checks
//!   and the exhaustive column-distance oracle;
//! * [`decoder`] — streaming encoder, bounded-delay decoding, sliding-window
//!   decoding and the unlimited-delay oracle decoder;
//! * [`search`] — exhaustive/randomized searches and the closed-form
//!   families over F13 and F16;
//! * [`cli`] — the `convmdp` binary's subcommands.
//!
//! ## Runnable examples
//!
//! One example per major capability, under `examples/`:
//!
//! ```bash
//! cargo run --example field_arithmetic      # GF(p^r) tour
//! cargo run --example check_code            # property checks on known codes
//! cargo run --example column_distances      # distance profiles via the oracle
//! cargo run --example decode_erasures       # sliding-window decoding walkthrough
//! cargo run --example low_delay_decoding    # delay-bounded decoding
//! cargo run --example search_small_fields   # minimum-field-size search counts
//! cargo run --example verify_families       # closed-form families vs search
//! cargo run --example simulate_channel      # random-erasure statistics
//! ```

pub mod cli;
pub mod code;
pub mod decoder;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod minors;
pub mod pattern;
pub mod poly;
pub mod rng;
pub mod search;

pub use code::{CodeParams, ConvCode};
pub use error::{Error, Result};
pub use gf::{Element, Field};
pub use matrix::GfMatrix;

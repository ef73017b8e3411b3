//! Runner, file formats and command line for the Bloch-sphere quantum walk.
//!
//! The numerics live in `blochwalk-core`; this crate adds what needs `std`:
//! parallel grid evaluation (rayon over polar nodes), configuration parsing,
//! CSV/JSON/SVG output and the `blochwalk` binary.

pub mod config;
pub mod csv;
pub mod error;
pub mod run;
pub mod svg;

pub use config::{parse_config, Coin, ConfigLayer, Output, RunConfig};
pub use error::RunError;
pub use run::{run_experiment, simulate, RunManifest, Simulation};

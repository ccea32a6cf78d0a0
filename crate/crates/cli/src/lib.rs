//! Library side of the `segreta` binary: ideal files, the JSON envelope and
//! command dispatch.

pub mod app;
pub mod envelope;
pub mod ideal_file;

pub use app::{run_command, CliError, Outcome, OutputFormat};
pub use envelope::ResultEnvelope;
pub use ideal_file::{parse_ideal, FieldSpec, IdealFile};

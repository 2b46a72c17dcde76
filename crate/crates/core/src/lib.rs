//! Single-qubit distribution through a universal quantum cloning node.
//!
//! Alice wants M receivers to learn one pure qubit state. She can either send
//! every receiver its own copies (direct transmission), or push copies through
//! an optimal symmetric 1 -> M cloner and let each receiver run tomography on
//! its clones. Clones are the message with a shrunken Bloch vector, so the
//! receiver extrapolates the reconstruction back out to the sphere.
//!
//! Modules, bottom up:
//!
//! - [`qstate`]: Bloch vectors, 2x2 density matrices, fidelity, geodesic distance
//! - [`cloning`]: shrinking factor, optimal fidelity, clone emulation and the
//!   symmetric-subspace oracle it is checked against
//! - [`tomography`]: Pauli shot sampling, linear inversion, physicality projection
//! - [`experiments`]: protocol instances, sweeps, convergence in M, breakeven,
//!   error distributions
//! - [`verify`]: emulation-vs-oracle check
//! - [`io`]: run configuration, CSV/JSON/SVG output and the command-line driver
//!
//! ```
//! use qubit_fanout::experiments::{default_message, run_clone_instance};
//! use qubit_fanout::rng::{ExperimentId, StreamFactory};
//!
//! let streams = StreamFactory::new(42, ExperimentId::Custom(0));
//! let err = run_clone_instance(&default_message(), 100, 10_000, &mut streams.stream(0)).unwrap();
//! assert!(err.geodesic < 0.5);
//! ```

pub mod cloning;
pub mod error;
pub mod experiments;
pub mod io;
pub mod qstate;
pub mod rng;
pub mod stats;
pub mod tomography;
pub mod verify;

pub use error::{Error, Result};
pub use qstate::{BlochVector, DensityMatrix2};

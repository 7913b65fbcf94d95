//! Exact-arithmetic construction and classification witnesses for low-degree
//! del Pezzo surfaces over the layers of the 5-power cyclotomic tower.

pub mod binform;
pub mod cyclo;
pub mod error;
pub mod finiteness;
pub mod fq;
pub mod implicit;
pub mod jsonio;
pub mod invariants;
pub mod matrix;
pub mod modres;
pub mod modular;
pub mod mpoly;
pub mod pencil;
pub mod points;
pub mod rat;
pub mod resultant;
pub mod scalar;
pub mod surfaces;
pub mod verify;

pub use error::{Error, Result};
pub use rat::Rat;
pub use scalar::{ExactDiv, Field, Ring};

/// Default RNG seed for all randomized procedures (0xDEADBEEF).
pub const DEFAULT_SEED: u64 = 3735928559;

/// Run a computation inside a bounded thread pool (None: the global default).
pub fn run_with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

// concrete instantiations used throughout
pub type QPoly = mpoly::MPoly<Rat>;
pub type CycPoly = mpoly::MPoly<cyclo::CycElt>;
pub type FqPoly = mpoly::MPoly<fq::FqElt>;
pub type PolyMatrix<F> = Vec<Vec<mpoly::MPoly<F>>>;
pub type QPoint = points::ProjPoint<Rat>;
pub type CycPoint = points::ProjPoint<cyclo::CycElt>;

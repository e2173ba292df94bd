//! Bordered Heegaard Floer structures over the torus algebra and the
//! orbifold Floer rank `HFO` of Seifert-fibered cores.
//!
//! ```
//! use orbifold_hf::{catalog::lens_space_cfa, hfo, OrbifoldOrders};
//!
//! let a = lens_space_cfa(3).unwrap();
//! let orders = OrbifoldOrders::new(vec![2, 3]).unwrap();
//! assert_eq!(hfo(&a, &orders).unwrap(), 18);
//! ```

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod homology;
pub mod io;
pub mod orbifold;
pub mod par;
pub mod structures;
pub mod tensor;

pub use algebra::{AlgebraElement, Basis, Idempotent};
pub use error::{Error, Result};
pub use homology::{edge_reduce, homology_rank, verify_d_squared};
pub use orbifold::{d_n, hfo, hfo_many, orb_extend, OrbifoldOrders};
pub use par::Execution;
pub use structures::{AnyStructure, TypeAStructure, TypeDAStructure, TypeDStructure};
pub use tensor::{box_a_d, box_a_da, box_da_d, ChainComplex};

//! Executable pieces of the hardness argument for properly learning CNOT
//! and Clifford circuits: GF(2) kernels, stabilizer states and tableaux, the
//! 3SAT → NonSingularity → sample-set reduction, consistency search, and
//! the two easy special-case learners.

pub mod circuit;
pub mod consistency;
pub mod dense;
pub mod f2;
pub mod learners;
pub mod pauli;
pub mod reduction;
pub mod sample;
pub mod stabilizer;
pub mod tableau;

pub use circuit::{CircuitError, CnotCircuit, Gate};
pub use f2::{AffineSubspace, BitMatrix, BitVector, F2Error};
pub use pauli::PauliOperator;
pub use sample::{LabeledSample, SampleSet};
pub use stabilizer::{Label, Membership, StabilizerError, StabilizerGroup, StabilizerState};
pub use tableau::{CliffordTableau, Direction};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/gf2.md")]
    mod gf2 {}
    #[doc = include_str!("../../../book/src/stabilizers.md")]
    mod stabilizers {}
    #[doc = include_str!("../../../book/src/tableaux.md")]
    mod tableaux {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/consistency.md")]
    mod consistency {}
    #[doc = include_str!("../../../book/src/learners.md")]
    mod learners {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

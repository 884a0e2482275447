//! Exact spectra and quantum chromatic number bounds for Hadamard graphs and
//! their graph products.
//!
//! The Hadamard graph `H_N` has the `2^N` words of `{+1, -1}^N` as vertices,
//! two words adjacent when orthogonal. Its even-parity component is a Cayley
//! graph of `Z_2^{N-1}`, so every eigenvalue is a character sum and the whole
//! spectrum falls out of one Walsh-Hadamard transform. Combined with the
//! Hoffman bound `1 + lambda_max / |lambda_min|` and the explicit `N`-color
//! entangled strategy, this pins `chi_q(H_N) = N` for `N` divisible by 4.
//!
//! Modules:
//!
//! - [`group`]: bit-word group elements, sign characters, connection sets
//! - [`graph`]: Hadamard and Cayley graph construction, dense adjacency
//! - [`spectra`]: exact and dense spectra, closed forms, Hoffman bound
//! - [`strategy`]: the quantum coloring PVMs and their verification
//! - [`products`]: categorical, Cartesian, strong and lexicographic products
//! - [`cli`]: the `qchrom` command line

pub mod cli;
pub mod error;
pub mod graph;
pub mod group;
pub mod products;
pub mod spectra;
pub mod strategy;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{
    build_cayley, build_hadamard, count_components, hadamard_connection_set, Ambient,
    CayleyGraphSpec, Component, DenseGraph, HadamardParams,
};
pub use group::{
    char_eval, char_inner_product, element_mul, generates, pair_generator, Character,
    ConnectionSet, Convention, GroupElement, Subgroup,
};
pub use products::{
    hadamard_product_chromatic, product_bound, product_connection_set, product_graph,
    product_spectrum, LexParams, ProductBoundReport, ProductKind,
};
pub use spectra::{
    dense_spectrum, hadamard_extremes, hadamard_quantum_chromatic, hoffman_bound,
    lambda_closed_form, spectrum_by_characters, ExactSpectrum, FloatSpectrum, HoffmanReport,
};
pub use strategy::{
    build_color_pvm_blockdiag, build_pvm, correlation, correlation_oracle, verify_strategy,
    QuantumColoring, Sampling, StrategyReport,
};

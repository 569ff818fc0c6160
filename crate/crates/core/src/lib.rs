//! Quantized dual graded graphs over exact integer polynomials in `q`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides [`QPoly`]
//! arithmetic, leveled graphs with up/down operators, the q-reflection
//! construction, four explicit families (Fibonacci words, permutations,
//! standard tableaux, plane binary trees) and symbolic normal ordering for the
//! relation `DU - qUD = r`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod fibonacci;
pub mod graded_graph;
pub mod permutations;
pub mod qpoly;
pub mod qweyl;
pub mod reflection;
pub mod tableaux;
pub mod trees;

pub use error::{Error, Overflow, Result};
pub use graded_graph::{
    pairing, GradedGraph, LinearCombination, PairBuilder, QDGGPair, QWeylReport, Scalar, Side,
    VertexKey, VertexRef,
};
pub use qpoly::{q_factorial, q_falling, q_integer, QPoly, QSeries};
pub use qweyl::{normal_order, NormalForm, Op, OperatorWord};

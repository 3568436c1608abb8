//! Brute-force reference implementations used only by test suites: homology
//! through the full cellular chain complex, extreme-ray enumeration by naive
//! elimination, closed-form Euler characteristics, and a corpus of small
//! fixture triangulations.
//!
//! Nothing here is fast, and nothing here shares algorithmic machinery with
//! the code it cross-checks: classes are recomputed by fixpoint sweeps
//! instead of union-find, Smith forms are reduced with the plainest possible
//! pivoting, and ray enumeration combines every sign pair rather than
//! maintaining adjacency.  When these implementations and the production
//! ones agree, they agree for independent reasons.

mod cells;

pub mod chain;
pub mod corpus;
pub mod dodecahedron;
pub mod euler;
pub mod rays;

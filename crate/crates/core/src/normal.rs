//! Normal surfaces in their two coordinate systems.
//!
//! A surface in normal position meets each tetrahedron in triangles (one type
//! per vertex, cutting that vertex off) and quadrilaterals (one type per pair
//! of opposite edges).  Standard coordinates record all seven counts per
//! tetrahedron, quad coordinates only the three quadrilateral counts.  Quad
//! type `q` is the one separating vertices {0, q+1} from the other two, so
//! the edge {a, b} lies parallel to exactly one quad type, `pair_type(a, b)`.
//!
//! Submodules: [`matching`] builds the linear systems a surface's coordinates
//! must satisfy, [`complex`] reassembles a coordinate vector into discs and
//! arcs, and [`links`] constructs and recognises the surfaces that link a
//! vertex or an edge.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

pub mod complex;
pub mod efficiency;
pub mod links;
pub mod matching;

pub use complex::{build_complex, euler_characteristic, genus, SurfaceComplex};
pub use efficiency::is_zero_efficient;
pub use links::{recognize_link, SurfaceLink};
pub use matching::{matching_system, MatchingSystem};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CoordSystem {
    Standard,
    Quad,
}

impl CoordSystem {
    /// Coordinates per tetrahedron.
    pub fn width(self) -> usize {
        match self {
            CoordSystem::Standard => 7,
            CoordSystem::Quad => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CoordSystem::Standard => "standard",
            CoordSystem::Quad => "quad",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalError {
    #[error("{len} coordinates do not fill {width} slots per tetrahedron")]
    BadLength { len: usize, width: usize },
    #[error("negative count at coordinate {0}")]
    Negative(usize),
    #[error("coordinate systems or tetrahedron counts differ")]
    SystemMismatch,
    #[error("triangulation is not valid")]
    InvalidTriangulation,
    #[error("triangulation is not closed")]
    NotClosed,
    #[error("two quad types are positive in tetrahedron {0}")]
    Inadmissible(usize),
    #[error("arc counts disagree across face {tet}:{face}, arcs cutting off vertex {cut}")]
    MatchingViolation { tet: usize, face: u8, cut: u8 },
    #[error("no triangle completion exists around vertex {vertex}")]
    NoCompletion { vertex: usize },
    #[error("coordinates too large to assemble discs")]
    TooLarge,
    #[error("surface is disconnected")]
    Disconnected,
    #[error("surface is non-orientable")]
    NonOrientable,
    #[error("surface has boundary")]
    Bounded,
}

/// The quad type running parallel to edge {a, b}.
pub fn pair_type(a: u8, b: u8) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    match (a, b) {
        (0, x) | (x, 0) => x as usize - 1,
        (a, b) => 5 - a as usize - b as usize,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalVector {
    pub system: CoordSystem,
    pub entries: Vec<BigInt>,
}

impl NormalVector {
    pub fn new(system: CoordSystem, entries: Vec<BigInt>) -> Result<NormalVector, NormalError> {
        if entries.len() % system.width() != 0 {
            return Err(NormalError::BadLength {
                len: entries.len(),
                width: system.width(),
            });
        }
        if let Some(i) = entries.iter().position(|x| x < &BigInt::zero()) {
            return Err(NormalError::Negative(i));
        }
        Ok(NormalVector { system, entries })
    }

    pub fn zero(system: CoordSystem, tets: usize) -> NormalVector {
        NormalVector {
            system,
            entries: vec![BigInt::zero(); system.width() * tets],
        }
    }

    pub fn from_counts(system: CoordSystem, counts: &[i64]) -> Result<NormalVector, NormalError> {
        NormalVector::new(system, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn tets(&self) -> usize {
        self.entries.len() / self.system.width()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Triangle count at the corner cutting off `vertex`.  Standard only.
    pub fn tri(&self, tet: usize, vertex: u8) -> &BigInt {
        assert_eq!(self.system, CoordSystem::Standard, "quad vectors have no triangles");
        &self.entries[7 * tet + vertex as usize]
    }

    pub fn quad(&self, tet: usize, q: usize) -> &BigInt {
        match self.system {
            CoordSystem::Standard => &self.entries[7 * tet + 4 + q],
            CoordSystem::Quad => &self.entries[3 * tet + q],
        }
    }

    /// The tetrahedron breaking the one-quad-type-per-tetrahedron rule, if
    /// any.
    pub fn inadmissible_tet(&self) -> Option<usize> {
        (0..self.tets()).find(|&t| (0..3).filter(|&q| !self.quad(t, q).is_zero()).count() > 1)
    }

    pub fn is_admissible(&self) -> bool {
        self.inadmissible_tet().is_none()
    }

    pub fn sum(&self, other: &NormalVector) -> Result<NormalVector, NormalError> {
        if self.system != other.system || self.entries.len() != other.entries.len() {
            return Err(NormalError::SystemMismatch);
        }
        Ok(NormalVector {
            system: self.system,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scaled(&self, k: u64) -> NormalVector {
        NormalVector {
            system: self.system,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }
}

/// Whether two surfaces can be realised disjointly: their sum must not stack
/// different quad types in any tetrahedron.
pub fn compatible(a: &NormalVector, b: &NormalVector) -> Result<bool, NormalError> {
    Ok(a.sum(b)?.is_admissible())
}

/// Forget the triangle coordinates.
pub fn quad_projection(v: &NormalVector) -> NormalVector {
    assert_eq!(v.system, CoordSystem::Standard, "projection starts from standard coordinates");
    let mut entries = Vec::with_capacity(3 * v.tets());
    for t in 0..v.tets() {
        for q in 0..3 {
            entries.push(v.quad(t, q).clone());
        }
    }
    NormalVector {
        system: CoordSystem::Quad,
        entries,
    }
}

//! Reassembling a standard coordinate vector into the surface it describes.
//!
//! Parallel copies of each disc type are laid out by a fixed convention:
//! triangle copy 0 sits innermost at its corner, quad copy 0 sits nearest
//! the pair of vertices containing vertex 0.  With that order fixed, the
//! arcs of each type in a face stack from the cut-off corner outwards and
//! glue to the corresponding stack on the far side of the face, so the whole
//! complex is determined by the vector.
//!
//! Orientability comes from two-colouring the discs: each disc kind carries a
//! reference boundary orientation, and two discs sharing an arc can be
//! oriented consistently iff they traverse it in opposite directions once
//! the face gluing is taken into account.

use num_traits::ToPrimitive;

use crate::normal::{pair_type, CoordSystem, NormalError, NormalVector};
use crate::perm::EDGE_VERTS;
use crate::skeleton::{compute_skeleton, ParityUf};
use crate::tri::GluingTable;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiscKind {
    /// Triangle cutting off the given vertex.
    Tri(u8),
    /// Quadrilateral of the given type.
    Quad(u8),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Disc {
    pub tet: usize,
    pub kind: DiscKind,
    pub copy: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Side {
    pub disc: usize,
    pub face: u8,
}

/// One arc of the surface; internal arcs have both sides, boundary arcs one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Arc {
    pub left: Side,
    pub right: Option<Side>,
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    pub discs: Vec<Disc>,
    pub arcs: Vec<Arc>,
    /// Corner count per edge class of the triangulation.
    pub edge_weights: Vec<usize>,
    /// Component id per disc, numbered from 0.
    pub component: Vec<usize>,
    pub components: usize,
    pub orientable: bool,
    pub closed: bool,
    pub euler: i64,
}

impl SurfaceComplex {
    pub fn total_weight(&self) -> usize {
        self.edge_weights.iter().sum()
    }

    /// Genus of a closed connected orientable surface.
    pub fn genus(&self) -> Result<i64, NormalError> {
        if self.components != 1 {
            return Err(NormalError::Disconnected);
        }
        if !self.orientable {
            return Err(NormalError::NonOrientable);
        }
        if !self.closed {
            return Err(NormalError::Bounded);
        }
        debug_assert_eq!(self.euler % 2, 0);
        Ok((2 - self.euler) / 2)
    }

    /// First Betti number (real coefficients) of a closed connected surface;
    /// the genus substitute that still makes sense one-sidedly.
    pub fn betti1(&self) -> Result<i64, NormalError> {
        if self.components != 1 {
            return Err(NormalError::Disconnected);
        }
        if !self.closed {
            return Err(NormalError::Bounded);
        }
        Ok(if self.orientable {
            2 - self.euler
        } else {
            1 - self.euler
        })
    }
}

/// The corners of a disc's boundary walk, each named by the edge it sits on,
/// in a fixed cyclic order.
fn boundary_corners(kind: DiscKind) -> Vec<(u8, u8)> {
    match kind {
        DiscKind::Tri(v) => (0..4u8).filter(|&s| s != v).map(|s| (v, s)).collect(),
        DiscKind::Quad(q) => {
            let u = q + 1;
            let mut xy = (1..4u8).filter(|&s| s != u);
            let (x, y) = (xy.next().unwrap(), xy.next().unwrap());
            vec![(0, x), (0, y), (u, y), (u, x)]
        }
    }
}

/// Reference traversal sense of the disc's side in `face`: +1 if the boundary
/// walk crosses the face from the cut-off vertex's smaller edge to its
/// larger, -1 otherwise.
fn side_sense(kind: DiscKind, face: u8) -> i8 {
    let cyc = boundary_corners(kind);
    for i in 0..cyc.len() {
        let (c1, c2) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        let cut = if c1.0 == c2.0 || c1.0 == c2.1 { c1.0 } else { c1.1 };
        let (e1, e2) = (c1.0 + c1.1 - cut, c2.0 + c2.1 - cut);
        // The side's face is the one holding cut, e1 and e2.
        if 6 - cut - e1 - e2 == face {
            return if e1 < e2 { 1 } else { -1 };
        }
    }
    unreachable!("disc {kind:?} has no side in face {face}");
}

pub fn build_complex(
    table: &GluingTable,
    v: &NormalVector,
) -> Result<SurfaceComplex, NormalError> {
    assert_eq!(v.system, CoordSystem::Standard, "complexes are built from standard coordinates");
    let n = table.tets();
    if v.entries.len() != 7 * n {
        return Err(NormalError::BadLength {
            len: v.entries.len(),
            width: 7,
        });
    }
    if let Some(t) = v.inadmissible_tet() {
        return Err(NormalError::Inadmissible(t));
    }
    let counts: Vec<usize> = v
        .entries
        .iter()
        .map(|x| x.to_usize().ok_or(NormalError::TooLarge))
        .collect::<Result<_, _>>()?;

    let mut discs = Vec::new();
    let mut base = vec![[0usize; 7]; n];
    for (t, row) in base.iter_mut().enumerate() {
        for (k, start) in row.iter_mut().enumerate() {
            *start = discs.len();
            let kind = if k < 4 {
                DiscKind::Tri(k as u8)
            } else {
                DiscKind::Quad(k as u8 - 4)
            };
            for copy in 0..counts[7 * t + k] {
                discs.push(Disc { tet: t, kind, copy });
            }
        }
    }

    // Disc indices drawing arcs of type (tet, face, cut), nearest `cut`
    // first: its triangles, then the parallel quads, whose copy order runs
    // away from the pair containing vertex 0.
    let stack = |t: usize, f: u8, cut: u8| -> Vec<usize> {
        let q = pair_type(cut, f);
        let tris = counts[7 * t + cut as usize];
        let quads = counts[7 * t + 4 + q];
        let mut out: Vec<usize> = (0..tris).map(|c| base[t][cut as usize] + c).collect();
        let qbase = base[t][4 + q];
        if cut == 0 || cut as usize == q + 1 {
            out.extend((0..quads).map(|c| qbase + c));
        } else {
            out.extend((0..quads).rev().map(|c| qbase + c));
        }
        out
    };

    let sk = compute_skeleton(table);
    let mut uf = ParityUf::new(discs.len());
    let mut arcs = Vec::new();
    let mut closed = true;
    for class in &sk.face_classes {
        let (t, f) = class.rep;
        let Some(g) = table.gluing(t, f) else {
            closed = false;
            for cut in (0..4u8).filter(|&c| c != f) {
                for d in stack(t, f, cut) {
                    arcs.push(Arc {
                        left: Side { disc: d, face: f },
                        right: None,
                    });
                }
            }
            continue;
        };
        let f2 = g.perm.image(f);
        for cut in (0..4u8).filter(|&c| c != f) {
            let cut2 = g.perm.image(cut);
            let near = stack(t, f, cut);
            let far = stack(g.tet, f2, cut2);
            if near.len() != far.len() {
                return Err(NormalError::MatchingViolation { tet: t, face: f, cut });
            }
            let mut rim = (0..4u8).filter(|&s| s != f && s != cut);
            let (m, mm) = (rim.next().unwrap(), rim.next().unwrap());
            let flip = if g.perm.image(m) < g.perm.image(mm) { 1 } else { -1 };
            for (&d1, &d2) in near.iter().zip(&far) {
                let s1 = side_sense(discs[d1].kind, f);
                let s2 = side_sense(discs[d2].kind, f2);
                uf.union(d1, d2, u8::from(s1 * s2 * flip != -1));
                arcs.push(Arc {
                    left: Side { disc: d1, face: f },
                    right: Some(Side { disc: d2, face: f2 }),
                });
            }
        }
    }

    let mut component = Vec::with_capacity(discs.len());
    let mut roots: Vec<usize> = Vec::new();
    let mut orientable = true;
    for d in 0..discs.len() {
        let (root, _) = uf.find(d);
        orientable &= !uf.conflicted(root);
        let id = roots.iter().position(|&r| r == root).unwrap_or_else(|| {
            roots.push(root);
            roots.len() - 1
        });
        component.push(id);
    }

    let edge_weights: Vec<usize> = sk
        .edge_classes
        .iter()
        .map(|class| {
            let weight = |&(t, e, _): &(usize, u8, i8)| {
                let (a, b) = EDGE_VERTS[e as usize];
                let quads: usize = (0..3)
                    .filter(|&q| q != pair_type(a, b))
                    .map(|q| counts[7 * t + 4 + q])
                    .sum();
                counts[7 * t + a as usize] + counts[7 * t + b as usize] + quads
            };
            let w = weight(&class.slots[0]);
            debug_assert!(class.slots.iter().all(|s| weight(s) == w));
            w
        })
        .collect();

    let corners: usize = edge_weights.iter().sum();
    let euler = corners as i64 - arcs.len() as i64 + discs.len() as i64;
    Ok(SurfaceComplex {
        components: roots.len(),
        component,
        discs,
        arcs,
        edge_weights,
        orientable,
        closed,
        euler,
    })
}

pub fn euler_characteristic(table: &GluingTable, v: &NormalVector) -> Result<i64, NormalError> {
    Ok(build_complex(table, v)?.euler)
}

pub fn genus(table: &GluingTable, v: &NormalVector) -> Result<i64, NormalError> {
    build_complex(table, v)?.genus()
}

pub fn edge_weight(table: &GluingTable, v: &NormalVector, e: usize) -> Result<usize, NormalError> {
    Ok(build_complex(table, v)?.edge_weights[e])
}

pub fn total_weight(table: &GluingTable, v: &NormalVector) -> Result<usize, NormalError> {
    Ok(build_complex(table, v)?.total_weight())
}

//! Euler characteristic of a normal coordinate vector, computed straight from
//! the definition of the induced cell structure: one 0-cell per point where
//! the discs cross an edge, one 1-cell per arc in a face, one 2-cell per disc.
//! No cell complex is ever assembled.
//!
//! Coordinates are laid out as seven entries per tetrahedron: four triangle
//! counts indexed by the vertex they cut off, then three quadrilateral counts
//! indexed by quad type q, where type q separates vertices {0, q+1} from the
//! other two.

use dodeca::perm::EDGE_VERTS;
use dodeca::skeleton::compute_skeleton;
use dodeca::tri::GluingTable;
use num_bigint::BigInt;

/// The quad type disjoint from edge {a, b}.
fn pair_type(a: u8, b: u8) -> usize {
    match (a, b) {
        (0, x) | (x, 0) => x as usize - 1,
        (a, b) => 5 - a as usize - b as usize,
    }
}

fn tri(v: &[BigInt], tet: usize, vertex: u8) -> &BigInt {
    &v[7 * tet + vertex as usize]
}

fn quad(v: &[BigInt], tet: usize, q: usize) -> &BigInt {
    &v[7 * tet + 4 + q]
}

/// Points where the discs inside `tet` cross edge `e`: both triangles at its
/// endpoints, plus the two quad types that do not run parallel to it.
fn corners(v: &[BigInt], tet: usize, e: usize) -> BigInt {
    let (a, b) = EDGE_VERTS[e];
    let mut total = tri(v, tet, a) + tri(v, tet, b);
    for q in 0..3 {
        if q != pair_type(a, b) {
            total += quad(v, tet, q);
        }
    }
    total
}

/// Arcs in face `f` of `tet` cutting vertex `cut` off from the other two.
fn arcs(v: &[BigInt], tet: usize, f: u8, cut: u8) -> BigInt {
    tri(v, tet, cut) + quad(v, tet, pair_type(cut, f))
}

/// Edge weights of the vector, one per edge class, taken at the class
/// representative.
pub fn edge_weights(table: &GluingTable, v: &[BigInt]) -> Vec<BigInt> {
    let sk = compute_skeleton(table);
    sk.edge_classes
        .iter()
        .map(|class| {
            let (t, e, _) = class.slots[0];
            corners(v, t, e as usize)
        })
        .collect()
}

/// Euler characteristic of the coordinate vector.  Panics if the arc counts
/// on the two sides of an internal face disagree, since the count of 1-cells
/// is meaningless for a vector that fails the matching equations.
pub fn euler(table: &GluingTable, v: &[BigInt]) -> BigInt {
    assert_eq!(v.len(), 7 * table.tets(), "seven coordinates per tetrahedron");
    let sk = compute_skeleton(table);
    let mut chi = BigInt::from(0);
    for class in &sk.edge_classes {
        let (t, e, _) = class.slots[0];
        chi += corners(v, t, e as usize);
    }
    for class in &sk.face_classes {
        let (t, f) = class.rep;
        for cut in (0..4u8).filter(|&c| c != f) {
            let n = arcs(v, t, f, cut);
            if let Some(g) = table.gluing(t, f) {
                let far = arcs(v, g.tet, g.perm.image(f), g.perm.image(cut));
                assert_eq!(n, far, "arc counts disagree across face {t}:{f}");
            }
            chi -= n;
        }
    }
    for x in v {
        chi += x;
    }
    chi
}

//! First homology of the glued complex.
//!
//! Generators are the edge classes that survive contracting a spanning tree
//! of the 1-skeleton; every face class contributes one relator, the signed
//! cycle of its three boundary edges.  The abelianised presentation matrix
//! goes through Smith normal form, giving the free rank and the torsion
//! coefficients directly.  Working with classes (not individual simplices)
//! keeps this correct for semi-simplicial triangulations, where one
//! tetrahedron can meet the same edge class several times.

use crate::linalg::IntMatrix;
use crate::perm::{edge_index, face_vertices, EDGE_VERTS};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::tri::GluingTable;
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub rank: usize,
    /// Torsion coefficients in divisibility order, each > 1.
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn trivial() -> Homology {
        Homology {
            rank: 0,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            terms.push(format!("Z/{d}"));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("triangulation has boundary faces")]
    NotClosed,
    #[error("triangulation is empty or disconnected")]
    Disconnected,
    #[error("triangulation has an edge glued to itself in reverse")]
    Invalid,
}

/// H1 of a closed triangulation.
pub fn homology_h1(table: &GluingTable) -> Result<Homology, HomologyError> {
    if !table.is_closed() {
        return Err(HomologyError::NotClosed);
    }
    cell_complex_h1(table)
}

/// H1 of the underlying cell complex: boundary is allowed, and so are bad
/// vertex links, since cellular homology does not care about them.  For a
/// bounded triangulation this is still the homology of the manifold; the
/// closed-only wrapper above exists because most callers mean to assert
/// closedness.  Only a reversed edge is fatal, as the edge then has no
/// orientation and the chain complex no longer makes sense.
pub fn cell_complex_h1(table: &GluingTable) -> Result<Homology, HomologyError> {
    if table.tets() == 0 {
        return Err(HomologyError::Disconnected);
    }
    let sk = compute_skeleton(table);
    if !sk.connected {
        return Err(HomologyError::Disconnected);
    }
    if !sk.all_edges_valid() {
        return Err(HomologyError::Invalid);
    }
    Ok(h1_from_skeleton(&sk))
}

fn h1_from_skeleton(sk: &Skeleton) -> Homology {
    let m = presentation_matrix(sk);
    let snf = m.smith_normal_form();
    Homology {
        rank: m.cols() - snf.factors.len(),
        torsion: snf.factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Relator matrix of the spanning-tree presentation: one row per face class,
/// one column per non-tree edge class.
fn presentation_matrix(sk: &Skeleton) -> IntMatrix {
    // Spanning tree of the 1-skeleton, taking edge classes lowest index
    // first.  Tree edges die in the presentation; the rest generate.
    let nv = sk.vertex_classes.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let ne = sk.edge_classes.len();
    let mut generator = vec![usize::MAX; ne];
    let mut gens = 0usize;
    for (e, class) in sk.edge_classes.iter().enumerate() {
        let (t, idx, _) = class.slots[0];
        let (a, b) = EDGE_VERTS[idx as usize];
        let va = find(&mut parent, sk.vertex_class[4 * t + a as usize]);
        let vb = find(&mut parent, sk.vertex_class[4 * t + b as usize]);
        if va == vb {
            generator[e] = gens;
            gens += 1;
        } else {
            parent[va] = vb;
        }
    }

    let nf = sk.face_classes.len();
    let mut m = IntMatrix::zero(nf, gens);
    for (r, fc) in sk.face_classes.iter().enumerate() {
        let (t, f) = fc.rep;
        let [a, b, c] = face_vertices(f);
        // Boundary cycle a -> b -> c -> a; dir is +1 when the traversal
        // agrees with the slot's min-to-max orientation.
        for (u, v, dir) in [(a, b, 1i64), (b, c, 1), (a, c, -1)] {
            let slot = 6 * t + edge_index(u, v);
            let e = sk.edge_class[slot];
            let Some(&col) = generator.get(e).filter(|&&g| g != usize::MAX) else {
                continue;
            };
            let coeff = dir * i64::from(sk.edge_sign[slot]);
            let x = m.at(r, col) + BigInt::from(coeff);
            m.set(r, col, x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ws23;
    use crate::perm::Perm4;
    use crate::sig::canonical_form;
    use crate::tri::parse_tri;

    fn torsion(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn weber_seifert_h1_is_z5_cubed() {
        let h = homology_h1(&ws23()).unwrap();
        assert_eq!(h.rank, 0);
        assert_eq!(h.torsion, torsion(&[5, 5, 5]));
        assert_eq!(h.to_string(), "Z/5 + Z/5 + Z/5");
    }

    #[test]
    fn doubled_tetrahedron_is_a_homology_sphere() {
        // Two tetrahedra with each face glued to its twin by the identity:
        // the double of a 3-simplex, a 3-sphere.
        let t = parse_tri("tets 2\n1:123 1:023 1:013 1:012\n0:123 0:023 0:013 0:012").unwrap();
        let h = homology_h1(&t).unwrap();
        assert_eq!(h, Homology::trivial());
        assert_eq!(h.to_string(), "0");
    }

    #[test]
    fn two_tet_fixtures_from_the_closed_census() {
        // One-vertex two-tetrahedron triangulation of S2 x S1, found by
        // exhausting the closed two-tetrahedron gluings; the orientable
        // closed 2-tet manifold with infinite H1.
        let s2xs1 =
            parse_tri("tets 2\n0:230 0:312 1:231 1:230\n0:301 0:201 1:120 1:301").unwrap();
        assert!(crate::skeleton::properties(&s2xs1).orientable);
        let h = homology_h1(&s2xs1).unwrap();
        assert_eq!((h.rank, h.to_string().as_str()), (1, "Z"));

        // A two-tetrahedron lens space with five-torsion.
        let lens =
            parse_tri("tets 2\n0:230 0:312 1:123 1:302\n0:013 0:120 1:201 1:130").unwrap();
        let h = homology_h1(&lens).unwrap();
        assert_eq!((h.rank, h.to_string().as_str()), (0, "Z/5"));
    }

    #[test]
    fn relabelling_preserves_homology() {
        let t = ws23();
        let tet_map: Vec<usize> = (0..23).map(|i| (i * 7 + 3) % 23).collect();
        let vert_map = vec![Perm4::from_images([2, 0, 3, 1]); 23];
        let relabelled = t.relabelled(&tet_map, &vert_map);
        assert_eq!(homology_h1(&relabelled), homology_h1(&t));
        // And the canonical form, which is itself a relabelling.
        assert_eq!(homology_h1(&canonical_form(&t)), homology_h1(&t));
    }

    #[test]
    fn bounded_and_disconnected_inputs_are_refused() {
        let lone = parse_tri("tets 1\nbdry bdry bdry bdry").unwrap();
        assert_eq!(homology_h1(&lone), Err(HomologyError::NotClosed));
        // The complex itself still has trivial H1 (it is a ball).
        assert_eq!(cell_complex_h1(&lone), Ok(Homology::trivial()));

        let two_spheres = parse_tri(
            "tets 4\n\
             1:123 1:023 1:013 1:012\n\
             0:123 0:023 0:013 0:012\n\
             3:123 3:023 3:013 3:012\n\
             2:123 2:023 2:013 2:012",
        )
        .unwrap();
        assert_eq!(homology_h1(&two_spheres), Err(HomologyError::Disconnected));
    }
}

//! The surfaces that link pieces of the 1-skeleton, and how to spot them.
//!
//! A vertex link is one triangle at every corner of the vertex class.  An
//! edge link starts from one quadrilateral parallel to each occurrence of the
//! edge and adds the fewest triangles that satisfy the matching equations --
//! the normalised frontier of a small neighbourhood of the edge.
//!
//! The triangle completion works on corner potentials: across each internal
//! face, the arc equation fixes the difference of the two triangle counts it
//! relates, so triangle counts within a vertex class are determined up to one
//! additive constant, and minimality pins the constant down.  The same
//! completion turns any quad matching solution into its canonical standard
//! representative.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::normal::{pair_type, CoordSystem, NormalError, NormalVector};
use crate::perm::EDGE_VERTS;
use crate::skeleton::compute_skeleton;
use crate::tri::GluingTable;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurfaceLink {
    VertexLink(usize),
    ThinEdgeLink(usize),
    Neither,
}

/// One triangle at every corner of the vertex class.
pub fn vertex_link(table: &GluingTable, class: usize) -> NormalVector {
    let sk = compute_skeleton(table);
    let mut v = NormalVector::zero(CoordSystem::Standard, table.tets());
    for (slot, &c) in sk.vertex_class.iter().enumerate() {
        if c == class {
            v.entries[7 * (slot / 4) + slot % 4] = BigInt::from(1);
        }
    }
    v
}

/// Canonical standard representative of a quad vector: the unique completion
/// with a zero triangle count in every vertex class.
pub fn quad_to_standard(
    table: &GluingTable,
    v: &NormalVector,
) -> Result<NormalVector, NormalError> {
    assert_eq!(v.system, CoordSystem::Quad, "completion starts from quad coordinates");
    let n = table.tets();
    if v.entries.len() != 3 * n {
        return Err(NormalError::BadLength {
            len: v.entries.len(),
            width: 3,
        });
    }
    let sk = compute_skeleton(table);
    let mut pot: Vec<Option<BigInt>> = vec![None; 4 * n];
    for (cidx, class) in sk.vertex_classes.iter().enumerate() {
        let (t0, v0) = class.slots[0];
        pot[4 * t0 + v0 as usize] = Some(BigInt::zero());
        let mut queue = VecDeque::from([(t0, v0)]);
        while let Some((t, cut)) = queue.pop_front() {
            let p = pot[4 * t + cut as usize].clone().expect("queued corners are set");
            for f in (0..4u8).filter(|&f| f != cut) {
                let Some(g) = table.gluing(t, f) else { continue };
                let cut2 = g.perm.image(cut);
                let f2 = g.perm.image(f);
                let want =
                    &p + v.quad(t, pair_type(cut, f)) - v.quad(g.tet, pair_type(cut2, f2));
                let far = 4 * g.tet + cut2 as usize;
                match &pot[far] {
                    Some(existing) if *existing != want => {
                        return Err(NormalError::NoCompletion { vertex: cidx });
                    }
                    Some(_) => {}
                    None => {
                        pot[far] = Some(want);
                        queue.push_back((g.tet, cut2));
                    }
                }
            }
        }
        let level = |&(t, vv): &(usize, u8)| pot[4 * t + vv as usize].clone().expect("class covered");
        let min = class.slots.iter().map(level).min().expect("nonempty class");
        for &(t, vv) in &class.slots {
            let slot = pot[4 * t + vv as usize].as_mut().expect("class covered");
            *slot -= &min;
        }
    }
    let mut entries = Vec::with_capacity(7 * n);
    for t in 0..n {
        for vv in 0..4 {
            entries.push(pot[4 * t + vv].take().expect("all corners assigned"));
        }
        for q in 0..3 {
            entries.push(v.quad(t, q).clone());
        }
    }
    NormalVector::new(CoordSystem::Standard, entries)
}

/// The normalised frontier of a small neighbourhood of edge class `e`, in
/// standard coordinates.  Not every edge has one: if the edge runs through a
/// tetrahedron on two non-opposite slots, the candidate needs two quad types
/// there and no embedded normal representative exists.
pub fn edge_link(table: &GluingTable, e: usize) -> Result<NormalVector, NormalError> {
    let sk = compute_skeleton(table);
    let mut quads = NormalVector::zero(CoordSystem::Quad, table.tets());
    for &(t, idx, _) in &sk.edge_classes[e].slots {
        let (a, b) = EDGE_VERTS[idx as usize];
        quads.entries[3 * t + pair_type(a, b)] += 1;
    }
    if let Some(t) = quads.inadmissible_tet() {
        return Err(NormalError::Inadmissible(t));
    }
    quad_to_standard(table, &quads)
}

/// Exact comparison against every vertex and edge link of the triangulation.
/// Quad vectors are lifted to their canonical standard representative first.
pub fn recognize_link(table: &GluingTable, v: &NormalVector) -> SurfaceLink {
    let standard = match v.system {
        CoordSystem::Standard => v.clone(),
        CoordSystem::Quad => match quad_to_standard(table, v) {
            Ok(lifted) => lifted,
            Err(_) => return SurfaceLink::Neither,
        },
    };
    let sk = compute_skeleton(table);
    for class in 0..sk.vertex_classes.len() {
        if standard == vertex_link(table, class) {
            return SurfaceLink::VertexLink(class);
        }
    }
    for e in 0..sk.edge_classes.len() {
        if edge_link(table, e) == Ok(standard.clone()) {
            return SurfaceLink::ThinEdgeLink(e);
        }
    }
    SurfaceLink::Neither
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ws23;
    use crate::normal::complex::build_complex;
    use crate::normal::matching::matching_system;
    use crate::normal::quad_projection;
    use crate::tri::parse_tri;

    const DOUBLED_TET: &str = "tets 2\n1:123 1:023 1:013 1:012\n0:123 0:023 0:013 0:012";

    #[test]
    fn dodecahedral_edge_links_are_tori_missing_their_own_edge() {
        let t = ws23();
        let ms = matching_system(&t, CoordSystem::Standard).unwrap();
        for e in 0..24 {
            let link = edge_link(&t, e).unwrap();
            assert!(ms.satisfies(&link));
            let c = build_complex(&t, &link).unwrap();
            assert_eq!(c.components, 1, "edge {e}");
            assert!(c.orientable);
            assert_eq!(c.euler, 0, "edge {e}");
            assert_eq!(c.genus(), Ok(1));
            assert_eq!(c.edge_weights[e], 0, "edge {e}");
        }
    }

    #[test]
    fn doubled_tetrahedron_edge_links_are_spheres() {
        // Every edge has two distinct endpoints here, so its neighbourhood is
        // a ball and the frontier a sphere crossing the four adjacent edges.
        let t = parse_tri(DOUBLED_TET).unwrap();
        for e in 0..6 {
            let link = edge_link(&t, e).unwrap();
            let c = build_complex(&t, &link).unwrap();
            assert_eq!((c.components, c.euler), (1, 2), "edge {e}");
            assert_eq!(c.edge_weights[e], 0);
            assert_eq!(c.total_weight(), 4);
        }
    }

    #[test]
    fn links_are_recognized_and_sums_are_not() {
        let t = ws23();
        let vl = vertex_link(&t, 0);
        assert_eq!(recognize_link(&t, &vl), SurfaceLink::VertexLink(0));
        let el = edge_link(&t, 7).unwrap();
        assert_eq!(recognize_link(&t, &el), SurfaceLink::ThinEdgeLink(7));
        let sum = vl.sum(&el).unwrap();
        assert_eq!(recognize_link(&t, &sum), SurfaceLink::Neither);
        assert_eq!(recognize_link(&t, &vl.scaled(2)), SurfaceLink::Neither);
        let small = parse_tri(DOUBLED_TET).unwrap();
        for class in 0..4 {
            assert_eq!(
                recognize_link(&small, &vertex_link(&small, class)),
                SurfaceLink::VertexLink(class)
            );
        }
    }

    #[test]
    fn completion_of_a_projection_strips_exactly_the_vertex_links() {
        let t = ws23();
        let el = edge_link(&t, 3).unwrap();
        let relift = quad_to_standard(&t, &quad_projection(&el)).unwrap();
        assert_eq!(relift, el);
        let fat = el.sum(&vertex_link(&t, 0)).unwrap();
        let stripped = quad_to_standard(&t, &quad_projection(&fat)).unwrap();
        assert_eq!(stripped, el);
    }

    #[test]
    fn inconsistent_quads_have_no_completion() {
        let t = parse_tri(DOUBLED_TET).unwrap();
        let v = NormalVector::from_counts(CoordSystem::Quad, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            quad_to_standard(&t, &v),
            Err(NormalError::NoCompletion { vertex: 0 })
        );
    }
}

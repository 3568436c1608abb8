//! The linear systems cut out by the gluings.
//!
//! Standard coordinates: across every internal face, each of the three arc
//! types must be drawn by the same number of discs on both sides, giving
//! three equations per internal face class.
//!
//! Quad coordinates: summing those arc equations around an edge cancels all
//! triangle terms, leaving one equation per internal edge class.  Walking the
//! ring of tetrahedra around the edge, each visit contributes the quad type
//! cutting the edge's head off the face we leave through, minus the type
//! cutting it off the face we arrive through.  This is the usual angle-sum
//! form of the quad equations; deriving it from the standard system keeps
//! the sign convention honest by construction.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::IntMatrix;
use crate::normal::{pair_type, CoordSystem, NormalError, NormalVector};
use crate::perm::EDGE_VERTS;
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::tri::GluingTable;

#[derive(Clone, Debug)]
pub struct MatchingSystem {
    pub system: CoordSystem,
    pub tets: usize,
    /// One equation per row; a vector lies in the cone iff it is nonnegative
    /// and in the kernel.
    pub matrix: IntMatrix,
    /// Per tetrahedron, the indices of its three quad coordinates; at most
    /// one of each group may be positive in an admissible vector.
    pub quad_groups: Vec<Vec<usize>>,
}

impl MatchingSystem {
    pub fn dim(&self) -> usize {
        self.system.width() * self.tets
    }

    /// Exact membership test: right shape and identically zero residual.
    pub fn satisfies(&self, v: &NormalVector) -> bool {
        v.system == self.system
            && v.entries.len() == self.dim()
            && self.matrix.mul_vec(&v.entries).iter().all(|x| x.is_zero())
    }
}

pub fn matching_system(
    table: &GluingTable,
    system: CoordSystem,
) -> Result<MatchingSystem, NormalError> {
    let sk = compute_skeleton(table);
    if !sk.is_valid() {
        return Err(NormalError::InvalidTriangulation);
    }
    let tets = table.tets();
    let width = system.width();
    let rows = match system {
        CoordSystem::Standard => standard_rows(table, &sk),
        CoordSystem::Quad => quad_rows(table, &sk),
    };
    let matrix = IntMatrix::from_fn(rows.len(), width * tets, |i, j| rows[i][j].clone());
    let quad_groups = (0..tets)
        .map(|t| match system {
            CoordSystem::Standard => vec![7 * t + 4, 7 * t + 5, 7 * t + 6],
            CoordSystem::Quad => vec![3 * t, 3 * t + 1, 3 * t + 2],
        })
        .collect();
    Ok(MatchingSystem {
        system,
        tets,
        matrix,
        quad_groups,
    })
}

/// Three rows per internal face class: for each vertex `cut` of the face,
/// triangle-plus-quad arcs cutting it off on one side minus the same on the
/// other.
fn standard_rows(table: &GluingTable, sk: &Skeleton) -> Vec<Vec<BigInt>> {
    let cols = 7 * table.tets();
    let mut rows = Vec::new();
    for class in &sk.face_classes {
        if class.partner.is_none() {
            continue;
        }
        let (t, f) = class.rep;
        let g = table.gluing(t, f).expect("internal face is glued");
        for cut in (0..4u8).filter(|&c| c != f) {
            let cut2 = g.perm.image(cut);
            let f2 = g.perm.image(f);
            let mut row = vec![BigInt::zero(); cols];
            row[7 * t + cut as usize] += 1;
            row[7 * t + 4 + pair_type(cut, f)] += 1;
            row[7 * g.tet + cut2 as usize] -= 1;
            row[7 * g.tet + 4 + pair_type(cut2, f2)] -= 1;
            rows.push(row);
        }
    }
    rows
}

/// One row per internal edge class, by walking its ring of tetrahedra.
fn quad_rows(table: &GluingTable, sk: &Skeleton) -> Vec<Vec<BigInt>> {
    let cols = 3 * table.tets();
    let mut rows = Vec::new();
    'classes: for class in &sk.edge_classes {
        let (t0, e0, _) = class.slots[0];
        let (a0, b0) = EDGE_VERTS[e0 as usize];
        let mut row = vec![BigInt::zero(); cols];
        let (mut t, mut a, mut b) = (t0, a0, b0);
        // Leave through the face opposite the smaller third vertex first.
        let mut out = (0..4u8).find(|&x| x != a && x != b).expect("third vertex");
        for _ in 0..class.slots.len() {
            row[3 * t + pair_type(b, out)] += 1;
            let Some(g) = table.gluing(t, out) else {
                continue 'classes; // boundary edge: triangles do not cancel
            };
            let arrive = g.perm.image(out);
            (t, a, b) = (g.tet, g.perm.image(a), g.perm.image(b));
            row[3 * t + pair_type(b, arrive)] -= 1;
            out = (0..4u8)
                .find(|&x| x != a && x != b && x != arrive)
                .expect("fourth vertex");
        }
        debug_assert_eq!((t, a, b), (t0, a0, b0), "edge ring closes up");
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ws23;
    use crate::normal::links::vertex_link;
    use crate::normal::quad_projection;
    use crate::perm::Perm4;
    use crate::tri::{parse_tri, Gluing, GluingTable};

    const DOUBLED_TET: &str = "tets 2\n1:123 1:023 1:013 1:012\n0:123 0:023 0:013 0:012";
    const LENS_Z5: &str = "tets 2\n0:230 0:312 1:123 1:302\n0:013 0:120 1:201 1:130";

    #[test]
    fn dodecahedral_space_systems_have_the_documented_shape() {
        let t = ws23();
        let std = matching_system(&t, CoordSystem::Standard).unwrap();
        assert_eq!((std.matrix.rows(), std.matrix.cols()), (138, 161));
        let quad = matching_system(&t, CoordSystem::Quad).unwrap();
        assert_eq!((quad.matrix.rows(), quad.matrix.cols()), (24, 69));
        assert_eq!(std.quad_groups.len(), 23);
        assert_eq!(quad.quad_groups[1], vec![3, 4, 5]);
    }

    #[test]
    fn lone_tetrahedron_has_no_equations() {
        let t = parse_tri("tets 1\nbdry bdry bdry bdry").unwrap();
        for system in [CoordSystem::Standard, CoordSystem::Quad] {
            let ms = matching_system(&t, system).unwrap();
            assert_eq!(ms.matrix.rows(), 0);
            assert_eq!(ms.matrix.cols(), system.width());
        }
    }

    #[test]
    fn invalid_triangulations_are_refused() {
        let mut t = GluingTable::new(1);
        t.glue(
            0,
            0,
            Gluing {
                tet: 0,
                perm: Perm4::from_images([1, 0, 3, 2]),
            },
        )
        .unwrap();
        assert_eq!(
            matching_system(&t, CoordSystem::Quad).err(),
            Some(NormalError::InvalidTriangulation)
        );
    }

    #[test]
    fn vertex_links_satisfy_the_standard_system() {
        for text in [DOUBLED_TET, LENS_Z5] {
            let t = parse_tri(text).unwrap();
            let ms = matching_system(&t, CoordSystem::Standard).unwrap();
            let sk = compute_skeleton(&t);
            for class in 0..sk.vertex_classes.len() {
                assert!(ms.satisfies(&vertex_link(&t, class)));
            }
        }
        let ws = ws23();
        let ms = matching_system(&ws, CoordSystem::Standard).unwrap();
        assert!(ms.satisfies(&vertex_link(&ws, 0)));
    }

    /// The quad system is a linear image of the standard one, so every
    /// standard kernel element must project into the quad kernel.  Kernel
    /// vectors are signed, which the residual check does not mind.
    #[test]
    fn standard_solutions_project_to_quad_solutions() {
        for text in [DOUBLED_TET, LENS_Z5] {
            let t = parse_tri(text).unwrap();
            let std = matching_system(&t, CoordSystem::Standard).unwrap();
            let quad = matching_system(&t, CoordSystem::Quad).unwrap();
            for k in std.matrix.kernel_basis() {
                let v = NormalVector {
                    system: CoordSystem::Standard,
                    entries: k,
                };
                let proj = quad_projection(&v);
                assert!(quad.matrix.mul_vec(&proj.entries).iter().all(|x| x.is_zero()));
            }
        }
    }
}

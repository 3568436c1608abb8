//! Production code against the brute-force references, across the whole
//! fixture corpus.  Everything here computes each quantity twice by
//! genuinely different routes and insists on exact agreement.

use dodeca::normal::links::{edge_link, quad_to_standard, recognize_link, vertex_link, SurfaceLink};
use dodeca::normal::{
    build_complex, matching_system, quad_projection, CoordSystem, NormalVector,
};
use dodeca::skeleton::compute_skeleton;
use num_bigint::BigInt;
use num_traits::Zero;

use dodeca_oracle::corpus;
use dodeca_oracle::euler as closed_form;

#[test]
fn census_vertex_links_match_the_closed_form_counts() {
    for fixture in corpus::CENSUS2 {
        let t = fixture.table();
        let sk = compute_skeleton(&t);
        for class in 0..sk.vertex_classes.len() {
            let link = vertex_link(&t, class);
            let c = build_complex(&t, &link).unwrap();
            assert_eq!(c.euler, 2, "{}", fixture.name);
            assert_eq!(
                BigInt::from(c.euler),
                closed_form::euler(&t, &link.entries),
                "{}",
                fixture.name
            );
            let weights = closed_form::edge_weights(&t, &link.entries);
            assert_eq!(c.edge_weights.len(), weights.len());
            for (mine, theirs) in c.edge_weights.iter().zip(&weights) {
                assert_eq!(BigInt::from(*mine), *theirs, "{}", fixture.name);
            }
        }
    }
}

/// Some census edges revisit a tetrahedron on crossing slots and so have no
/// normal link; those are skipped, but enough must succeed to mean something.
#[test]
fn census_edge_links_match_the_closed_form_counts() {
    let mut built = 0;
    for fixture in corpus::CENSUS2 {
        let t = fixture.table();
        let sk = compute_skeleton(&t);
        for e in 0..sk.edge_classes.len() {
            let Ok(link) = edge_link(&t, e) else { continue };
            built += 1;
            let c = build_complex(&t, &link).unwrap();
            assert_eq!(
                BigInt::from(c.euler),
                closed_form::euler(&t, &link.entries),
                "{} edge {e}",
                fixture.name
            );
            assert_eq!(c.edge_weights[e], 0, "{} edge {e}", fixture.name);
            // Two edges may share one linking surface, so recognition may
            // name an earlier alias of the same vector.
            match recognize_link(&t, &link) {
                SurfaceLink::ThinEdgeLink(found) => {
                    assert_eq!(edge_link(&t, found).unwrap(), link, "{} edge {e}", fixture.name);
                }
                other => panic!("{} edge {e} recognized as {other:?}", fixture.name),
            }
        }
    }
    assert!(built >= 20, "only {built} census edge links were normal");
}

#[test]
fn census_vertex_links_are_recognized() {
    for fixture in corpus::CENSUS2 {
        let t = fixture.table();
        let sk = compute_skeleton(&t);
        for class in 0..sk.vertex_classes.len() {
            assert_eq!(
                recognize_link(&t, &vertex_link(&t, class)),
                SurfaceLink::VertexLink(class),
                "{}",
                fixture.name
            );
        }
    }
}

/// Standard solutions project onto quad solutions, and the canonical lift of
/// the projection differs from the original by vertex links alone: constant
/// triangle counts on every vertex class.
#[test]
fn census_projection_and_completion_are_inverse_up_to_links() {
    for fixture in corpus::CENSUS2 {
        let t = fixture.table();
        let std = matching_system(&t, CoordSystem::Standard).unwrap();
        let quad = matching_system(&t, CoordSystem::Quad).unwrap();
        let sk = compute_skeleton(&t);
        for k in std.matrix.kernel_basis() {
            let v = NormalVector {
                system: CoordSystem::Standard,
                entries: k,
            };
            let proj = quad_projection(&v);
            assert!(
                quad.matrix.mul_vec(&proj.entries).iter().all(|x| x.is_zero()),
                "{}",
                fixture.name
            );
        }
        for e in 0..sk.edge_classes.len() {
            let Ok(link) = edge_link(&t, e) else { continue };
            assert!(std.satisfies(&link), "{} edge {e}", fixture.name);
            let relift = quad_to_standard(&t, &quad_projection(&link)).unwrap();
            assert_eq!(relift, link, "{} edge {e}", fixture.name);
        }
    }
}

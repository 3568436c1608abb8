//! Fixture triangulations shared across test suites: every homology class of
//! the closed two-tetrahedron census, layered solid tori, a deliberately
//! invalid table, and seeded random (pseudo-)triangulations.

use dodeca::homology::cell_complex_h1;
use dodeca::perm::Perm4;
use dodeca::skeleton::properties;
use dodeca::tri::{parse_tri, Gluing, GluingTable};
use rand::seq::SliceRandom;
use rand::Rng;

pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn table(&self) -> GluingTable {
        parse_tri(self.text).expect("fixture parses")
    }
}

/// One representative per (vertex count, orientability, H1) class of the
/// 5376 valid closed connected two-tetrahedron gluings, found by exhausting
/// all of them.  Names follow the standard identifications of the closed
/// census at this size.
pub const CENSUS2: &[Fixture] = &[
    Fixture {
        name: "sphere_one_vertex",
        text: "tets 2\n0:023 0:123 1:123 1:023\n0:013 0:012 1:012 1:013",
    },
    Fixture {
        name: "sphere_two_vertices",
        text: "tets 2\n0:023 0:123 1:123 1:230\n0:013 0:201 1:012 1:013",
    },
    Fixture {
        name: "sphere_three_vertices",
        text: "tets 2\n0:023 0:123 1:231 1:230\n0:301 0:201 1:012 1:013",
    },
    Fixture {
        name: "sphere_doubled_tetrahedron",
        text: "tets 2\n1:123 1:023 1:013 1:012\n0:123 0:023 0:013 0:012",
    },
    Fixture {
        name: "projective_space",
        text: "tets 2\n0:023 0:123 1:123 1:302\n0:013 0:120 1:201 1:130",
    },
    Fixture {
        name: "projective_space_two_vertices",
        text: "tets 2\n1:132 1:032 1:103 1:102\n0:132 0:032 0:103 0:102",
    },
    Fixture {
        name: "quaternionic_space",
        text: "tets 2\n1:231 1:302 1:130 1:201\n0:312 0:230 0:301 0:120",
    },
    Fixture {
        name: "lens_z3",
        text: "tets 2\n0:023 0:123 1:231 1:230\n0:301 0:201 1:120 1:301",
    },
    Fixture {
        name: "lens_z3_two_vertices",
        text: "tets 2\n1:123 1:023 1:013 1:120\n0:123 0:023 0:013 0:201",
    },
    Fixture {
        name: "lens_z5",
        text: "tets 2\n0:230 0:312 1:123 1:302\n0:013 0:120 1:201 1:130",
    },
    Fixture {
        name: "lens_z7",
        text: "tets 2\n0:230 0:312 1:123 1:302\n0:013 0:120 1:120 1:301",
    },
    Fixture {
        name: "lens_z8",
        text: "tets 2\n0:230 0:312 1:213 1:032\n0:103 0:021 1:120 1:301",
    },
    Fixture {
        name: "s2_x_s1",
        text: "tets 2\n0:230 0:312 1:231 1:230\n0:301 0:201 1:120 1:301",
    },
    Fixture {
        name: "twisted_s2_bundle",
        text: "tets 2\n1:132 1:032 1:130 1:201\n0:132 0:032 0:301 0:120",
    },
];

/// The one-tetrahedron solid torus: two faces folded together, one vertex,
/// three edges, torus boundary.
pub fn solid_torus() -> GluingTable {
    parse_tri("tets 1\n0:230 0:312 bdry bdry").expect("solid torus parses")
}

/// A solid torus thickened by `layers` extra tetrahedra, each folded over
/// the previous boundary.  Every intermediate stage is checked to still be a
/// valid orientable complex with torus boundary and H1 = Z.
pub fn layered_solid_torus(layers: usize) -> GluingTable {
    let mut t = solid_torus();
    for _ in 0..layers {
        t = layer_once(&t).expect("some layering of the boundary exists");
    }
    t
}

fn layer_once(t: &GluingTable) -> Option<GluingTable> {
    let n = t.tets();
    let bdry: Vec<(usize, u8)> = (0..n)
        .flat_map(|tet| (0..4u8).map(move |f| (tet, f)))
        .filter(|&(tet, f)| t.is_boundary(tet, f))
        .collect();
    let [(t1, f1), (t2, f2)] = bdry[..] else {
        return None;
    };
    for fa in 0..4u8 {
        for fb in 0..4u8 {
            if fa == fb {
                continue;
            }
            for pa in Perm4::all().filter(|p| p.image(fa) == f1) {
                for pb in Perm4::all().filter(|p| p.image(fb) == f2) {
                    let mut grown = GluingTable::new(n + 1);
                    for tet in 0..n {
                        for f in 0..4u8 {
                            if let Some(g) = t.gluing(tet, f) {
                                grown.glue(tet, f, g).ok();
                            }
                        }
                    }
                    if grown.glue(n, fa, Gluing { tet: t1, perm: pa }).is_err()
                        || grown.glue(n, fb, Gluing { tet: t2, perm: pb }).is_err()
                    {
                        continue;
                    }
                    let p = properties(&grown);
                    if p.valid
                        && p.orientable
                        && p.boundary_faces == 2
                        && p.euler == 0
                        && cell_complex_h1(&grown).map(|h| h.to_string()) == Ok("Z".into())
                    {
                        return Some(grown);
                    }
                }
            }
        }
    }
    None
}

/// A single tetrahedron with an edge glued to itself in reverse -- the
/// canonical invalid input.
pub fn reversed_edge() -> GluingTable {
    let mut t = GluingTable::new(1);
    t.glue(
        0,
        0,
        Gluing {
            tet: 0,
            perm: Perm4::from_images([1, 0, 3, 2]),
        },
    )
    .expect("gluing is installable");
    t
}

/// Random pseudo-triangulation: pair up face slots in a shuffled order,
/// leaving roughly `boundary_ratio` of them unpaired, with uniformly random
/// face-to-face permutations.  Validity is *not* guaranteed; callers filter
/// for whatever they need.
pub fn random_table(rng: &mut impl Rng, tets: usize, boundary_ratio: f64) -> GluingTable {
    let mut table = GluingTable::new(tets);
    let mut slots: Vec<(usize, u8)> = (0..tets)
        .flat_map(|t| (0..4u8).map(move |f| (t, f)))
        .collect();
    slots.shuffle(rng);
    while slots.len() >= 2 {
        let (t1, f1) = slots.pop().expect("nonempty");
        if rng.gen_bool(boundary_ratio) {
            continue;
        }
        // Partner with a random remaining slot; a same-face pick just leaves
        // both slots on the boundary.
        let k = rng.gen_range(0..slots.len());
        let (t2, f2) = slots.swap_remove(k);
        let choices: Vec<Perm4> = Perm4::all().filter(|p| p.image(f1) == f2).collect();
        let perm = choices[rng.gen_range(0..choices.len())];
        let _ = table.glue(t1, f1, Gluing { tet: t2, perm });
    }
    table
}

/// Random closed pseudo-triangulation (every face paired).
pub fn random_closed(rng: &mut impl Rng, tets: usize) -> GluingTable {
    loop {
        let t = random_table(rng, tets, 0.0);
        if t.is_closed() {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_fixtures_are_what_they_claim() {
        for fixture in CENSUS2 {
            let t = fixture.table();
            let p = properties(&t);
            assert!(p.closed && p.connected && p.valid, "{}", fixture.name);
            assert_eq!(
                p.orientable,
                fixture.name != "twisted_s2_bundle",
                "{}",
                fixture.name
            );
        }
    }

    #[test]
    fn layered_torus_grows_one_tetrahedron_per_layer() {
        for layers in 0..4 {
            let t = layered_solid_torus(layers);
            assert_eq!(t.tets(), layers + 1);
            let p = properties(&t);
            assert!(p.valid && p.orientable && p.euler == 0);
            assert_eq!(p.boundary_faces, 2);
        }
    }

    #[test]
    fn invalid_fixture_is_invalid() {
        assert!(!properties(&reversed_edge()).valid);
    }
}

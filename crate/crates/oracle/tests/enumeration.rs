//! Double description enumeration against the brute-force elimination
//! oracle on every triangulation small enough for the latter, plus the two
//! full Weber-Seifert censuses as ignored extended runs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dodeca::data::ws23;
use dodeca::enumerate::{enumerate_rays, is_vertex_ray, vertex_surface, RayList};
use dodeca::normal::links::quad_to_standard;
use dodeca::normal::{
    genus, is_zero_efficient, matching_system, quad_projection, recognize_link, CoordSystem,
    SurfaceLink,
};
use dodeca::skeleton::compute_skeleton;
use dodeca::tri::{parse_tri, GluingTable};
use dodeca_oracle::corpus::{layered_solid_torus, random_closed, solid_torus, CENSUS2};
use dodeca_oracle::rays::{admissible_only, fm_enumerate};

/// The two-tetrahedron census, the simplest bounded examples, and a handful
/// of random valid closed triangulations on three tetrahedra.
fn small_corpus() -> Vec<(String, GluingTable)> {
    let mut out: Vec<(String, GluingTable)> = CENSUS2
        .iter()
        .map(|f| (f.name.to_string(), f.table()))
        .collect();
    out.push(("ball".into(), parse_tri("tets 1\nbdry bdry bdry bdry").unwrap()));
    out.push(("solid_torus".into(), solid_torus()));
    for layers in 1..=3 {
        out.push((format!("layered_{layers}"), layered_solid_torus(layers)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5);
    let mut found = 0;
    for _ in 0..6000 {
        let t = random_closed(&mut rng, 3);
        if compute_skeleton(&t).is_valid() {
            found += 1;
            out.push((format!("random_3tet_{found}"), t));
            if found == 4 {
                break;
            }
        }
    }
    assert!(found >= 2, "random search found only {found} valid closed triangulations");
    assert!(out.len() >= 20);
    out
}

#[test]
fn dd_matches_the_elimination_oracle_on_the_small_corpus() {
    for (name, t) in small_corpus() {
        for system in [CoordSystem::Standard, CoordSystem::Quad] {
            let ms = matching_system(&t, system).unwrap();
            let list = enumerate_rays(&ms);

            let equations: Vec<Vec<BigInt>> = (0..ms.matrix.rows())
                .map(|i| ms.matrix.row(i).to_vec())
                .collect();
            let brute = fm_enumerate(ms.dim(), &equations).unwrap();
            let mut brute = admissible_only(brute, &ms.quad_groups);
            brute.sort();

            let got: Vec<Vec<BigInt>> = list.rays.iter().map(|r| r.entries.clone()).collect();
            assert_eq!(
                got,
                brute,
                "{name} ({}): double description disagrees with elimination",
                system.label()
            );
        }
    }
}

#[test]
fn every_enumerated_ray_passes_the_vertex_test() {
    for (name, t) in small_corpus() {
        for system in [CoordSystem::Standard, CoordSystem::Quad] {
            let ms = matching_system(&t, system).unwrap();
            for ray in &enumerate_rays(&ms).rays {
                assert!(
                    is_vertex_ray(ray, &ms),
                    "{name} ({}): enumerated ray fails its own vertex test",
                    system.label()
                );
            }
        }
    }
}

/// The sphere scan agrees with what is known about small triangulations:
/// the one-vertex 2-tetrahedron sphere and quaternionic space are
/// 0-efficient, projective space and the 3rd lens space never are (their
/// one-sided projective planes double to non-linking spheres), multi-vertex
/// closed triangulations carry edge-linking or separating spheres, and the
/// two sphere bundles are reducible.
#[test]
fn zero_efficiency_verdicts_across_the_census() {
    let want = [
        ("sphere_one_vertex", true),
        ("sphere_two_vertices", false),
        ("sphere_three_vertices", false),
        ("sphere_doubled_tetrahedron", false),
        ("projective_space", false),
        ("projective_space_two_vertices", false),
        ("quaternionic_space", true),
        ("lens_z3", false),
        ("lens_z3_two_vertices", false),
        ("lens_z5", true),
        ("lens_z7", true),
        ("lens_z8", true),
        ("s2_x_s1", false),
        ("twisted_s2_bundle", false),
    ];
    assert_eq!(want.len(), CENSUS2.len());
    for (f, (name, verdict)) in CENSUS2.iter().zip(want) {
        assert_eq!(f.name, name);
        assert_eq!(
            is_zero_efficient(&f.table()),
            Ok(verdict),
            "0-efficiency of {name}"
        );
    }
}

/// Genus of the two-sided connected representative of each ray.
fn genus_histogram(t: &GluingTable, list: &RayList) -> BTreeMap<i64, usize> {
    let mut hist = BTreeMap::new();
    for ray in &list.rays {
        let rep = vertex_surface(t, ray).unwrap();
        let standard = match rep.system {
            CoordSystem::Standard => rep,
            CoordSystem::Quad => quad_to_standard(t, &rep).unwrap(),
        };
        *hist.entry(genus(t, &standard).unwrap()).or_insert(0) += 1;
    }
    hist
}

#[test]
#[ignore = "extended run: the full Weber-Seifert quad census"]
fn weber_seifert_quad_census_has_698_surfaces() {
    let _ = env_logger::try_init();
    let t = ws23();
    let ms = matching_system(&t, CoordSystem::Quad).unwrap();
    let list = enumerate_rays(&ms);
    assert_eq!(list.len(), 698);
    let want: BTreeMap<i64, usize> = [
        (1, 24),
        (2, 43),
        (3, 82),
        (4, 135),
        (5, 30),
        (7, 300),
        (8, 36),
        (9, 36),
        (10, 12),
    ]
    .into();
    assert_eq!(genus_histogram(&t, &list), want);
}

#[test]
#[ignore = "extended run: the full Weber-Seifert standard census"]
fn weber_seifert_standard_census_has_1751_surfaces() {
    let _ = env_logger::try_init();
    let t = ws23();
    let ms = matching_system(&t, CoordSystem::Standard).unwrap();
    let list = enumerate_rays(&ms);
    assert_eq!(list.len(), 1751);
    let want: BTreeMap<i64, usize> = [
        (0, 1),
        (1, 24),
        (2, 187),
        (3, 465),
        (4, 387),
        (5, 115),
        (6, 32),
        (7, 318),
        (8, 54),
        (9, 54),
        (10, 36),
        (11, 30),
        (13, 18),
        (14, 12),
        (15, 12),
        (16, 6),
    ]
    .into();
    assert_eq!(genus_histogram(&t, &list), want);

    let (mut vertex_links, mut edge_links) = (0, 0);
    for ray in &list.rays {
        match recognize_link(&t, ray) {
            SurfaceLink::VertexLink(_) => vertex_links += 1,
            SurfaceLink::ThinEdgeLink(_) => edge_links += 1,
            SurfaceLink::Neither => {}
        }
    }
    assert_eq!((vertex_links, edge_links), (1, 24));
}

#[test]
fn standard_rays_project_into_the_quad_cone() {
    for (name, t) in small_corpus() {
        let standard = matching_system(&t, CoordSystem::Standard).unwrap();
        let quad = matching_system(&t, CoordSystem::Quad).unwrap();
        for ray in &enumerate_rays(&standard).rays {
            let q = quad_projection(ray);
            assert!(
                quad.satisfies(&q) && q.is_admissible(),
                "{name}: projection of a standard ray leaves the quad cone"
            );
        }
    }
}

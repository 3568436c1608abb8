//! Vertex rays of the matching cone.
//!
//! The admissible nonnegative solutions of a matching system are exactly the
//! coordinate vectors of embedded normal surfaces, and every surface a
//! topological search needs sits over an extreme ray of that cone — a
//! *vertex ray*.  This module enumerates them by the double description
//! method: start from the unit rays of the orthant and impose one matching
//! equation at a time, keeping the rays on the hyperplane and replacing each
//! adjacent positive/negative pair by its unique combination on it.
//!
//! Three choices keep the intermediate lists small and the output honest:
//!
//! * Equations are imposed sparsest first, so the early cones stay close to
//!   the orthant, where supports and pair counts are tiny.
//! * A ray whose support shows two quad types in one tetrahedron is dropped
//!   the moment it appears.  Combination only ever grows supports, so such a
//!   ray can never return to admissibility; and no admissible ray is lost,
//!   because a third ray witnessing non-adjacency of two admissible rays has
//!   its support inside the union of theirs, hence is itself admissible and
//!   still on the list.
//! * Adjacency is decided in two stages.  A support-union bound and a scan
//!   for a third ray inside the union reject almost every pair cheaply;
//!   survivors are confirmed algebraically, requiring the imposed equations
//!   restricted to the union's columns to have corank exactly two.  The
//!   combinatorial test does the work, the rank computation guarantees the
//!   answer.
//!
//! Runs can be capped (live rays, wall clock) and hand back a [`Checkpoint`]
//! to resume from.  Within a step the pair work may be split across threads;
//! results are merged in a fixed order and the final list is sorted, so the
//! output never depends on the split.

use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dot, make_primitive, IntMatrix};
use crate::normal::links::quad_to_standard;
use crate::normal::{build_complex, CoordSystem, MatchingSystem, NormalError, NormalVector};
use crate::tri::GluingTable;

/// Support bitmasks cover this many coordinates: 73 tetrahedra in standard
/// coordinates, more than any cone this crate ever enumerates.
const WORDS: usize = 8;

const P: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
struct Bits([u64; WORDS]);

impl Bits {
    fn of(v: &[BigInt]) -> Bits {
        let mut b = Bits::default();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                b.0[i / 64] |= 1 << (i % 64);
            }
        }
        b
    }

    fn test(self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union(self, o: Bits) -> Bits {
        let mut b = self;
        for w in 0..WORDS {
            b.0[w] |= o.0[w];
        }
        b
    }

    fn is_subset(self, o: Bits) -> bool {
        (0..WORDS).all(|w| self.0[w] & o.0[w] == self.0[w])
    }

    fn ones(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    support: Bits,
}

impl Ray {
    fn new(mut coords: Vec<BigInt>) -> Ray {
        make_primitive(&mut coords);
        let support = Bits::of(&coords);
        Ray { coords, support }
    }
}

/// Enumeration output: the primitive admissible vertex rays, sorted by their
/// coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayList {
    pub system: CoordSystem,
    pub rays: Vec<NormalVector>,
}

impl RayList {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Caps for one enumeration run; `None` means unbounded.  Limits are checked
/// between equations, never mid-step, and a resumed run always imposes at
/// least one equation before they apply again.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    /// Stop before any further step once the live list exceeds this size.
    pub max_live_rays: Option<usize>,
    /// Wall-clock budget for this call.
    pub max_millis: Option<u64>,
}

pub const CHECKPOINT_VERSION: u32 = 1;

/// Everything needed to resume an interrupted run: the equation insertion
/// order, how many equations are already imposed, and the live rays (their
/// coordinates as decimal strings, so the file survives any integer width).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub system: String,
    pub dim: usize,
    pub order: Vec<usize>,
    pub step: usize,
    pub rays: Vec<Vec<String>>,
}

impl Checkpoint {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Checkpoint, EnumerateError> {
        serde_json::from_str(text).map_err(|e| EnumerateError::BadCheckpoint(e.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("resource limit hit after {} of {} equations", .0.step, .0.order.len())]
    Interrupted(Box<Checkpoint>),
    #[error("checkpoint cannot resume this run: {0}")]
    BadCheckpoint(String),
}

/// All admissible vertex rays of the cone, unbounded run.
pub fn enumerate_rays(ms: &MatchingSystem) -> RayList {
    match enumerate_with(ms, Limits::default(), None) {
        Ok(list) => list,
        Err(e) => unreachable!("unbounded run cannot stop early: {e}"),
    }
}

pub fn enumerate_with(
    ms: &MatchingSystem,
    limits: Limits,
    resume: Option<Checkpoint>,
) -> Result<RayList, EnumerateError> {
    let dim = ms.dim();
    assert!(
        dim <= 64 * WORDS,
        "support masks cover {} coordinates, got {dim}",
        64 * WORDS
    );
    let order = insertion_order(&ms.matrix);
    let gmasks: Vec<Bits> = ms
        .quad_groups
        .iter()
        .map(|g| {
            let mut b = Bits::default();
            for &i in g {
                b.0[i / 64] |= 1 << (i % 64);
            }
            b
        })
        .collect();

    let (mut rays, start) = match resume {
        Some(cp) => restore(ms, &order, cp)?,
        None => (unit_rays(dim), 0),
    };

    let clock = Instant::now();
    for step in start..order.len() {
        if step > start {
            let over_rays = limits.max_live_rays.is_some_and(|cap| rays.len() > cap);
            let over_time = limits
                .max_millis
                .is_some_and(|budget| clock.elapsed().as_millis() as u64 >= budget);
            if over_rays || over_time {
                return Err(EnumerateError::Interrupted(Box::new(save(
                    ms, &order, step, &rays,
                ))));
            }
        }
        rays = impose(ms, &order, step, rays, &gmasks);
        log::debug!(
            "{} equation {}/{}: {} live rays",
            ms.system.label(),
            step + 1,
            order.len(),
            rays.len()
        );
    }

    let mut out: Vec<NormalVector> = rays
        .into_iter()
        .map(|r| NormalVector {
            system: ms.system,
            entries: r.coords,
        })
        .collect();
    out.sort_by(|a, b| a.entries.cmp(&b.entries));
    debug_assert!(
        out.windows(2).all(|w| w[0].entries < w[1].entries),
        "vertex rays are pairwise distinct"
    );
    Ok(RayList {
        system: ms.system,
        rays: out,
    })
}

/// Equations sorted by increasing support size, ties in row order.
fn insertion_order(m: &IntMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by_key(|&i| (m.row(i).iter().filter(|x| !x.is_zero()).count(), i));
    order
}

fn unit_rays(dim: usize) -> Vec<Ray> {
    (0..dim)
        .map(|i| {
            let mut coords = vec![BigInt::zero(); dim];
            coords[i] = BigInt::from(1);
            Ray {
                support: Bits::of(&coords),
                coords,
            }
        })
        .collect()
}

fn mask_admissible(support: Bits, gmasks: &[Bits]) -> bool {
    gmasks.iter().all(|g| {
        (0..WORDS)
            .map(|w| (support.0[w] & g.0[w]).count_ones())
            .sum::<u32>()
            <= 1
    })
}

/// Whether a partially built ray can still extend to an admissible one: keep
/// it exactly when no quad group has two positive coordinates yet.  Sound to
/// apply mid-enumeration because combination only ever grows supports.
pub fn admissibility_prune(partial: &[BigInt], quad_groups: &[Vec<usize>]) -> bool {
    quad_groups
        .iter()
        .all(|g| g.iter().filter(|&&i| !partial[i].is_zero()).count() <= 1)
}

/// One double description step: impose equation `order[step]` on `rays`.
fn impose(
    ms: &MatchingSystem,
    order: &[usize],
    step: usize,
    rays: Vec<Ray>,
    gmasks: &[Bits],
) -> Vec<Ray> {
    let eq = ms.matrix.row(order[step]);
    let mut zero = Vec::new();
    let mut pos: Vec<(BigInt, Ray)> = Vec::new();
    let mut neg: Vec<(BigInt, Ray)> = Vec::new();
    for r in rays {
        let d = dot(eq, &r.coords);
        match d.sign() {
            Sign::NoSign => zero.push(r),
            Sign::Plus => pos.push((d, r)),
            Sign::Minus => neg.push((d, r)),
        }
    }

    let supports: Vec<Bits> = zero
        .iter()
        .map(|r| r.support)
        .chain(pos.iter().map(|(_, r)| r.support))
        .chain(neg.iter().map(|(_, r)| r.support))
        .collect();
    let imposed = &order[..step];

    let combos: Vec<Vec<Ray>> = pos
        .par_iter()
        .map(|(dp, p)| {
            let mut local = Vec::new();
            for (dn, n) in &neg {
                let u = p.support.union(n.support);
                // Adjacency needs the common zero coordinates plus the imposed
                // equations to cut everything down to a plane.
                if u.ones() > step as u32 + 2 {
                    continue;
                }
                if !mask_admissible(u, gmasks) {
                    continue;
                }
                if supports
                    .iter()
                    .any(|&s| s != p.support && s != n.support && s.is_subset(u))
                {
                    continue;
                }
                if !confirmed_adjacent(ms, imposed, u) {
                    continue;
                }
                local.push(combine(dp, p, dn, n));
            }
            local
        })
        .collect();

    let mut out = zero;
    out.extend(combos.into_iter().flatten());
    #[cfg(debug_assertions)]
    {
        let set: std::collections::HashSet<Bits> = out.iter().map(|r| r.support).collect();
        debug_assert_eq!(set.len(), out.len(), "extreme rays have distinct supports");
    }
    out
}

/// Exact confirmation that the cone face with support `u` is a plane: the
/// imposed equations, restricted to the columns of `u`, have rank two less
/// than the number of columns.  (The unit rows at the common zeros account
/// for every other column, so this is the full tight system's corank.)  Both
/// candidate rays lie in the restricted kernel, so the rank never exceeds
/// the target and a matching modular rank is already conclusive; otherwise
/// fall back to exact elimination.
fn confirmed_adjacent(ms: &MatchingSystem, imposed: &[usize], u: Bits) -> bool {
    let cols: Vec<usize> = (0..ms.dim()).filter(|&i| u.test(i)).collect();
    let want = cols.len() - 2;
    let m = IntMatrix::from_fn(imposed.len(), cols.len(), |i, j| {
        ms.matrix.at(imposed[i], cols[j]).clone()
    });
    if m.rank_mod_p(P) == want {
        return true;
    }
    m.rank() == want
}

/// The unique (up to scale) combination of a positive/negative pair lying on
/// the hyperplane; entries stay nonnegative because both weights are.
fn combine(dp: &BigInt, p: &Ray, dn: &BigInt, n: &Ray) -> Ray {
    let coords: Vec<BigInt> = p
        .coords
        .iter()
        .zip(&n.coords)
        .map(|(pc, nc)| dp * nc - dn * pc)
        .collect();
    let r = Ray::new(coords);
    debug_assert_eq!(r.support, p.support.union(n.support), "no cancellation");
    r
}

fn save(ms: &MatchingSystem, order: &[usize], step: usize, rays: &[Ray]) -> Checkpoint {
    Checkpoint {
        version: CHECKPOINT_VERSION,
        system: ms.system.label().to_string(),
        dim: ms.dim(),
        order: order.to_vec(),
        step,
        rays: rays
            .iter()
            .map(|r| r.coords.iter().map(|x| x.to_string()).collect())
            .collect(),
    }
}

/// A checkpoint is trusted about its own progress but must structurally match
/// the run it claims to continue.
fn restore(
    ms: &MatchingSystem,
    order: &[usize],
    cp: Checkpoint,
) -> Result<(Vec<Ray>, usize), EnumerateError> {
    if cp.version != CHECKPOINT_VERSION {
        return Err(EnumerateError::BadCheckpoint(format!(
            "version {} (this build writes {CHECKPOINT_VERSION})",
            cp.version
        )));
    }
    if cp.system != ms.system.label() || cp.dim != ms.dim() || cp.order != order {
        return Err(EnumerateError::BadCheckpoint(
            "recorded system differs from the one being resumed".into(),
        ));
    }
    if cp.step > order.len() {
        return Err(EnumerateError::BadCheckpoint(format!(
            "step {} of {} equations",
            cp.step,
            order.len()
        )));
    }
    let mut rays = Vec::with_capacity(cp.rays.len());
    for coords in &cp.rays {
        if coords.len() != cp.dim {
            return Err(EnumerateError::BadCheckpoint(format!(
                "ray of length {} in dimension {}",
                coords.len(),
                cp.dim
            )));
        }
        let mut v = Vec::with_capacity(coords.len());
        for s in coords {
            v.push(
                BigInt::from_str(s)
                    .map_err(|e| EnumerateError::BadCheckpoint(format!("coordinate {s:?}: {e}")))?,
            );
        }
        rays.push(Ray::new(v));
    }
    Ok((rays, cp.step))
}

/// Whether `v` spans an extreme ray of the cone: nonzero, on it, and pinned
/// down to a line by its own zeros.  The matching rows restricted to the
/// support columns must have corank one there (the unit rows at the zeros
/// account for the rest).  Scale-invariant, since only the support enters.
pub fn is_vertex_ray(v: &NormalVector, ms: &MatchingSystem) -> bool {
    if v.is_zero() || !ms.satisfies(v) {
        return false;
    }
    let support: Vec<usize> = (0..ms.dim()).filter(|&i| !v.entries[i].is_zero()).collect();
    let want = support.len() - 1;
    let m = IntMatrix::from_fn(ms.matrix.rows(), support.len(), |i, j| {
        ms.matrix.at(i, support[j]).clone()
    });
    // v itself is a nonzero kernel vector of the restriction, so the rank
    // never exceeds the target and a matching modular rank is conclusive.
    if m.rank_mod_p(P) == want {
        return true;
    }
    m.rank() == want
}

/// The embedded surface a vertex ray stands for: the primitive vector itself
/// when the reassembled surface is two-sided, its double when one-sided.
/// Quad rays are judged on their canonical triangle completion but returned
/// in their own system.  A disconnected primitive vector means the input was
/// not a vertex ray, and is reported rather than silently accepted.
pub fn vertex_surface(table: &GluingTable, ray: &NormalVector) -> Result<NormalVector, NormalError> {
    let standard = match ray.system {
        CoordSystem::Standard => ray.clone(),
        CoordSystem::Quad => quad_to_standard(table, ray)?,
    };
    let complex = build_complex(table, &standard)?;
    if complex.components != 1 {
        return Err(NormalError::Disconnected);
    }
    Ok(if complex.orientable {
        ray.clone()
    } else {
        ray.scaled(2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ws23;
    use crate::normal::links::vertex_link;
    use crate::normal::matching_system;
    use crate::tri::parse_tri;

    const LONE_TET: &str = "tets 1\nbdry bdry bdry bdry";

    const DOUBLED_TET: &str = "tets 2\n\
        1:123 1:023 1:013 1:012\n\
        0:123 0:023 0:013 0:012";

    const PROJECTIVE_SPACE: &str = "tets 2\n\
        0:023 0:123 1:123 1:302\n\
        0:013 0:120 1:201 1:130";

    const LENS_Z5: &str = "tets 2\n\
        0:230 0:312 1:123 1:302\n\
        0:013 0:120 1:201 1:130";

    fn sorted(mut v: Vec<NormalVector>) -> Vec<NormalVector> {
        v.sort_by(|a, b| a.entries.cmp(&b.entries));
        v
    }

    #[test]
    fn a_lone_tetrahedron_enumerates_to_its_unit_rays() {
        let t = parse_tri(LONE_TET).unwrap();
        for system in [CoordSystem::Standard, CoordSystem::Quad] {
            let ms = matching_system(&t, system).unwrap();
            let list = enumerate_rays(&ms);
            let units: Vec<NormalVector> = (0..system.width())
                .map(|i| {
                    let mut c = vec![0i64; system.width()];
                    c[i] = 1;
                    NormalVector::from_counts(system, &c).unwrap()
                })
                .collect();
            assert_eq!(list.rays, sorted(units));
            for r in &list.rays {
                assert!(is_vertex_ray(r, &ms));
            }
        }
    }

    #[test]
    fn the_doubled_tetrahedron_has_three_quad_rays() {
        let t = parse_tri(DOUBLED_TET).unwrap();
        let ms = matching_system(&t, CoordSystem::Quad).unwrap();
        let list = enumerate_rays(&ms);
        let want: Vec<NormalVector> = (0..3)
            .map(|q| {
                let mut c = vec![0i64; 6];
                c[q] = 1;
                c[3 + q] = 1;
                NormalVector::from_counts(CoordSystem::Quad, &c).unwrap()
            })
            .collect();
        assert_eq!(list.rays, sorted(want));
        for r in &list.rays {
            assert!(is_vertex_ray(r, &ms));
            // each is a two-sided sphere around the shared tetrahedron pair
            assert_eq!(vertex_surface(&t, r).unwrap(), *r);
        }
    }

    #[test]
    fn the_vertex_ray_test_sees_scale_but_not_sums() {
        let t = parse_tri(DOUBLED_TET).unwrap();
        let ms = matching_system(&t, CoordSystem::Quad).unwrap();
        let rays = enumerate_rays(&ms).rays;
        let (a, b) = (&rays[0], &rays[1]);
        assert!(is_vertex_ray(a, &ms));
        assert!(is_vertex_ray(&a.scaled(9), &ms));
        assert!(!is_vertex_ray(&a.sum(b).unwrap(), &ms));
        assert!(!is_vertex_ray(&NormalVector::zero(CoordSystem::Quad, 2), &ms));
    }

    #[test]
    fn the_weber_seifert_vertex_link_is_a_vertex_ray() {
        let t = ws23();
        let ms = matching_system(&t, CoordSystem::Standard).unwrap();
        let link = vertex_link(&t, 0);
        assert!(is_vertex_ray(&link, &ms));
        assert_eq!(vertex_surface(&t, &link).unwrap(), link);
    }

    #[test]
    fn one_sided_rays_are_returned_doubled() {
        let t = parse_tri(PROJECTIVE_SPACE).unwrap();
        let ms = matching_system(&t, CoordSystem::Quad).unwrap();
        let mut one_sided = 0;
        for ray in &enumerate_rays(&ms).rays {
            let c = build_complex(&t, &quad_to_standard(&t, ray).unwrap()).unwrap();
            if c.components != 1 {
                continue;
            }
            let rep = vertex_surface(&t, ray).unwrap();
            if c.orientable {
                assert_eq!(rep, *ray);
            } else {
                one_sided += 1;
                assert_eq!(rep, ray.scaled(2));
                // the double bounds a thickening of the one-sided surface, so
                // it is two-sided with twice the characteristic
                let dc = build_complex(&t, &quad_to_standard(&t, &rep).unwrap()).unwrap();
                assert!(dc.orientable);
                assert_eq!(dc.euler, 2 * c.euler);
            }
        }
        assert!(one_sided > 0, "projective space carries a one-sided surface");
    }

    #[test]
    fn enumeration_is_deterministic() {
        let t = parse_tri(LENS_Z5).unwrap();
        for system in [CoordSystem::Standard, CoordSystem::Quad] {
            let ms = matching_system(&t, system).unwrap();
            assert_eq!(enumerate_rays(&ms), enumerate_rays(&ms));
        }
    }

    #[test]
    fn interrupted_runs_resume_to_the_same_list() {
        let t = parse_tri(LENS_Z5).unwrap();
        for system in [CoordSystem::Standard, CoordSystem::Quad] {
            let ms = matching_system(&t, system).unwrap();
            let direct = enumerate_rays(&ms);
            // a zero cap stops before every step, so the run advances exactly
            // one equation per resume and round-trips the checkpoint each time
            let limits = Limits {
                max_live_rays: Some(0),
                max_millis: None,
            };
            let mut cp = None;
            let mut hops = 0;
            loop {
                match enumerate_with(&ms, limits, cp.take()) {
                    Ok(list) => {
                        assert_eq!(list, direct);
                        break;
                    }
                    Err(EnumerateError::Interrupted(c)) => {
                        hops += 1;
                        assert!(hops <= ms.matrix.rows(), "resume makes progress");
                        cp = Some(Checkpoint::from_json(&c.to_json()).unwrap());
                    }
                    Err(e) => panic!("{e}"),
                }
            }
            assert_eq!(hops, ms.matrix.rows().saturating_sub(1));
        }
    }

    #[test]
    fn mismatched_checkpoints_are_refused() {
        let t = parse_tri(LENS_Z5).unwrap();
        let quad = matching_system(&t, CoordSystem::Quad).unwrap();
        let standard = matching_system(&t, CoordSystem::Standard).unwrap();
        let limits = Limits {
            max_live_rays: Some(0),
            max_millis: None,
        };
        let Err(EnumerateError::Interrupted(cp)) = enumerate_with(&quad, limits, None) else {
            panic!("zero cap interrupts");
        };

        let stale = Checkpoint {
            version: CHECKPOINT_VERSION + 1,
            ..(*cp).clone()
        };
        assert!(matches!(
            enumerate_with(&quad, Limits::default(), Some(stale)),
            Err(EnumerateError::BadCheckpoint(_))
        ));
        assert!(matches!(
            enumerate_with(&standard, Limits::default(), Some((*cp).clone())),
            Err(EnumerateError::BadCheckpoint(_))
        ));
    }

    #[test]
    fn pruning_is_the_quad_group_test() {
        let t = parse_tri(DOUBLED_TET).unwrap();
        let ms = matching_system(&t, CoordSystem::Quad).unwrap();
        let one_each = NormalVector::from_counts(CoordSystem::Quad, &[1, 0, 0, 0, 1, 0]).unwrap();
        let two_in_one = NormalVector::from_counts(CoordSystem::Quad, &[1, 1, 0, 0, 0, 0]).unwrap();
        assert!(admissibility_prune(&one_each.entries, &ms.quad_groups));
        assert!(!admissibility_prune(&two_in_one.entries, &ms.quad_groups));
    }
}

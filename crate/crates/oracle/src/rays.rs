//! Extreme rays of {x >= 0, Ax = 0} the slow way: impose one equation at a
//! time, combine *every* positive/negative pair of survivors, and afterwards
//! discard any ray whose zero-pattern strictly contains another's.
//!
//! The support filter is what makes the all-pairs shortcut correct.  In a
//! cone cut out by coordinate inequalities, distinct extreme rays have
//! distinct supports and every non-extreme ray strictly contains the support
//! of some extreme ray, so keeping the support-minimal vectors of any set
//! that (a) lies inside the cone and (b) includes every extreme ray leaves
//! exactly the extreme rays.  No adjacency bookkeeping, no graded order --
//! nothing shared with the production enumerator beyond arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Hard cap so a misdirected call cannot silently run for days; 28 covers
/// seven coordinates per tetrahedron up to four tetrahedra.
pub const MAX_DIM: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTooLarge {
    pub dim: usize,
}

impl fmt::Display for DimensionTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} coordinates exceed the brute-force cap of {MAX_DIM}", self.dim)
    }
}

impl std::error::Error for DimensionTooLarge {}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn divide_by_content(v: &mut [BigInt]) {
    let mut g = BigInt::from(0);
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g > BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn support(v: &[BigInt]) -> u32 {
    let mut bits = 0;
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            bits |= 1 << i;
        }
    }
    bits
}

/// Keep only the rays whose support is minimal under strict inclusion,
/// one representative per support.
fn minimal_support(mut rays: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let masks: Vec<u32> = rays.iter().map(|r| support(r)).collect();
    let mut keep = vec![true; rays.len()];
    for i in 0..rays.len() {
        for j in 0..rays.len() {
            if i != j && masks[j] & masks[i] == masks[j] && (masks[j] != masks[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut k = 0;
    rays.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    rays
}

/// All extreme rays of {x >= 0, equations . x = 0}, each primitive, sorted
/// lexicographically.
pub fn fm_enumerate(
    dim: usize,
    equations: &[Vec<BigInt>],
) -> Result<Vec<Vec<BigInt>>, DimensionTooLarge> {
    if dim > MAX_DIM {
        return Err(DimensionTooLarge { dim });
    }
    let mut rays: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::from(0); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    for eq in equations {
        assert_eq!(eq.len(), dim, "equation length matches the coordinate count");
        let mut zero = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in rays {
            let d = dot(eq, &r);
            if d.is_zero() {
                zero.push(r);
            } else if d > BigInt::from(0) {
                pos.push((d, r));
            } else {
                neg.push((d, r));
            }
        }
        for (dp, p) in &pos {
            for (dn, n) in &neg {
                let mut w: Vec<BigInt> = p
                    .iter()
                    .zip(n)
                    .map(|(pc, nc)| dp * nc - dn * pc)
                    .collect();
                divide_by_content(&mut w);
                zero.push(w);
            }
        }
        rays = minimal_support(zero);
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}

/// Restrict to rays with at most one positive coordinate in each group.
pub fn admissible_only(rays: Vec<Vec<BigInt>>, groups: &[Vec<usize>]) -> Vec<Vec<BigInt>> {
    rays.into_iter()
        .filter(|r| {
            groups
                .iter()
                .all(|g| g.iter().filter(|&&i| !r[i].is_zero()).count() <= 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dodeca::linalg::IntMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eq(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn ray(coeffs: &[i64]) -> Vec<BigInt> {
        eq(coeffs)
    }

    #[test]
    fn orthant_rays_are_the_unit_vectors() {
        let rays = fm_enumerate(5, &[]).unwrap();
        assert_eq!(rays.len(), 5);
        for r in &rays {
            assert_eq!(r.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn balanced_pair_equation_has_four_extreme_rays() {
        let rays = fm_enumerate(4, &[eq(&[1, 1, -1, -1])]).unwrap();
        let want = vec![
            ray(&[0, 1, 0, 1]),
            ray(&[0, 1, 1, 0]),
            ray(&[1, 0, 0, 1]),
            ray(&[1, 0, 1, 0]),
        ];
        assert_eq!(rays, want);
    }

    #[test]
    fn chained_equalities_leave_the_diagonal() {
        let rays = fm_enumerate(3, &[eq(&[1, -1, 0]), eq(&[0, 1, -1])]).unwrap();
        assert_eq!(rays, vec![ray(&[1, 1, 1])]);
    }

    #[test]
    fn results_are_primitive() {
        let rays = fm_enumerate(3, &[eq(&[2, -4, 0])]).unwrap();
        assert_eq!(rays, vec![ray(&[0, 0, 1]), ray(&[2, 1, 0])]);
    }

    #[test]
    fn admissibility_filter_drops_doubly_positive_groups() {
        let rays = fm_enumerate(3, &[eq(&[1, -1, 0])]).unwrap();
        assert_eq!(rays.len(), 2);
        let kept = admissible_only(rays, &[vec![0, 1]]);
        assert_eq!(kept, vec![ray(&[0, 0, 1])]);
    }

    #[test]
    fn oversized_systems_are_refused() {
        assert_eq!(
            fm_enumerate(MAX_DIM + 1, &[]),
            Err(DimensionTooLarge { dim: MAX_DIM + 1 })
        );
    }

    /// Every output of a random system must lie in the cone and be extreme:
    /// the active constraints (its zero coordinates plus all equations) must
    /// have rank exactly dim - 1.
    #[test]
    fn random_outputs_satisfy_the_rank_characterisation_of_extremality() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfacade);
        for _ in 0..40 {
            let dim = rng.gen_range(3..7);
            let neqs = rng.gen_range(1..3);
            let equations: Vec<Vec<BigInt>> = (0..neqs)
                .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(-3i64..4))).collect())
                .collect();
            let rays = fm_enumerate(dim, &equations).unwrap();
            for r in &rays {
                assert!(r.iter().all(|x| *x >= BigInt::from(0)));
                for e in &equations {
                    assert!(dot(e, r).is_zero());
                }
                let mut active: Vec<Vec<BigInt>> = equations.clone();
                for (i, x) in r.iter().enumerate() {
                    if x.is_zero() {
                        let mut unit = vec![BigInt::from(0); dim];
                        unit[i] = BigInt::from(1);
                        active.push(unit);
                    }
                }
                let m = IntMatrix::from_fn(active.len(), dim, |i, j| active[i][j].clone());
                assert_eq!(m.rank(), dim - 1, "ray {r:?} is not extreme");
            }
            // Distinct extreme rays must have distinct supports.
            let mut masks: Vec<u32> = rays.iter().map(|r| support(r)).collect();
            masks.sort_unstable();
            masks.dedup();
            assert_eq!(masks.len(), rays.len());
        }
    }
}

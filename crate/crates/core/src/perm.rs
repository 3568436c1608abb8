//! Permutations of {0,1,2,3}, packed into a single byte (two bits per image).
//!
//! Face gluings, canonical relabellings and orientation bookkeeping all reduce
//! to arithmetic in S4, so this type is deliberately tiny and `Copy`.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4(u8);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4(0b11_10_01_00);
    /// The order-reversing permutation 0123 -> 3210.
    pub const REVERSE: Perm4 = Perm4(0b00_01_10_11);

    /// Build from explicit images; panics on a non-permutation.
    pub fn from_images(img: [u8; 4]) -> Perm4 {
        let mut seen = [false; 4];
        let mut bits = 0u8;
        for (i, &v) in img.iter().enumerate() {
            assert!(v < 4 && !seen[v as usize], "not a permutation: {img:?}");
            seen[v as usize] = true;
            bits |= v << (2 * i);
        }
        Perm4(bits)
    }

    pub fn try_from_images(img: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &v in &img {
            if v >= 4 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm4::from_images(img))
    }

    /// The unique permutation sending each `src[i]` to `dst[i]` (three pairs;
    /// the fourth image is forced). `None` if either triple has repeats.
    pub fn from_face_map(src: [u8; 3], dst: [u8; 3]) -> Option<Perm4> {
        let mut img = [4u8; 4];
        for i in 0..3 {
            if src[i] >= 4 || dst[i] >= 4 || img[src[i] as usize] != 4 {
                return None;
            }
            img[src[i] as usize] = dst[i];
        }
        let rest_src = (0..4).find(|&v| img[v] == 4)?;
        let used: u8 = dst.iter().sum();
        img[rest_src] = 6 - used.min(6); // 0+1+2+3 = 6
        Perm4::try_from_images(img)
    }

    #[inline]
    pub fn image(self, i: u8) -> u8 {
        (self.0 >> (2 * i)) & 3
    }

    #[inline]
    pub fn images(self) -> [u8; 4] {
        [self.image(0), self.image(1), self.image(2), self.image(3)]
    }

    /// Composition: apply `self` first, then `g`.
    #[inline]
    pub fn then(self, g: Perm4) -> Perm4 {
        let mut bits = 0u8;
        for i in 0..4 {
            bits |= g.image(self.image(i)) << (2 * i);
        }
        Perm4(bits)
    }

    #[inline]
    pub fn inverse(self) -> Perm4 {
        let mut bits = 0u8;
        for i in 0..4u8 {
            bits |= i << (2 * self.image(i));
        }
        Perm4(bits)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(self) -> i8 {
        let img = self.images();
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if img[i] > img[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Index in the lexicographic enumeration of S4 (0 = identity, 23 = 3210).
    pub fn lex_index(self) -> u8 {
        const FACTOR: [u8; 3] = [6, 2, 1];
        let img = self.images();
        let mut idx = 0u8;
        let mut remaining: Vec<u8> = (0..4).collect();
        for i in 0..3 {
            let pos = remaining.iter().position(|&v| v == img[i]).unwrap();
            idx += pos as u8 * FACTOR[i];
            remaining.remove(pos);
        }
        idx
    }

    pub fn from_lex_index(mut idx: u8) -> Option<Perm4> {
        const FACTOR: [u8; 3] = [6, 2, 1];
        if idx >= 24 {
            return None;
        }
        let mut remaining: Vec<u8> = (0..4).collect();
        let mut img = [0u8; 4];
        for i in 0..3 {
            let pos = (idx / FACTOR[i]) as usize;
            idx %= FACTOR[i];
            img[i] = remaining.remove(pos);
        }
        img[3] = remaining[0];
        Some(Perm4::from_images(img))
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24).map(|i| Perm4::from_lex_index(i).unwrap())
    }

    /// Restriction to the three vertices of a face: the parity of the induced
    /// map between the ascending vertex lists of the two faces.
    pub fn face_sign(self, face: u8) -> i8 {
        let src = face_vertices(face);
        let dst: Vec<u8> = src.iter().map(|&v| self.image(v)).collect();
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if dst[i] > dst[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let img = self.images();
        write!(f, "{}{}{}{}", img[0], img[1], img[2], img[3])
    }
}

/// Vertices of face `f` (the face opposite vertex `f`), in ascending order.
pub fn face_vertices(f: u8) -> [u8; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("face index out of range: {f}"),
    }
}

/// The six edges of a tetrahedron as ascending vertex pairs, in index order.
pub const EDGE_VERTS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Edge index of the pair {a,b}; panics if a == b.
pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("bad edge pair ({a},{b})"),
    }
}

/// The edge disjoint from the given one (opposite edge in the tetrahedron).
pub fn opposite_edge(e: usize) -> usize {
    5 - e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        for p in Perm4::all() {
            assert_eq!(p.then(p.inverse()), Perm4::IDENTITY);
            assert_eq!(p.inverse().then(p), Perm4::IDENTITY);
            for q in Perm4::all() {
                let r = p.then(q);
                for i in 0..4 {
                    assert_eq!(r.image(i), q.image(p.image(i)));
                }
                assert_eq!(r.sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn lex_round_trip() {
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..24 {
            let p = Perm4::from_lex_index(i).unwrap();
            assert_eq!(p.lex_index(), i);
            seen.insert(p);
        }
        assert_eq!(seen.len(), 24);
        assert_eq!(Perm4::from_lex_index(0), Some(Perm4::IDENTITY));
        assert_eq!(Perm4::from_lex_index(23), Some(Perm4::REVERSE));
        assert_eq!(Perm4::REVERSE, Perm4::from_images([3, 2, 1, 0]));
        assert!(Perm4::from_lex_index(24).is_none());
    }

    #[test]
    fn face_map_infers_fourth_image() {
        let p = Perm4::from_face_map([0, 1, 2], [2, 1, 0]).unwrap();
        assert_eq!(p.images(), [2, 1, 0, 3]);
        let q = Perm4::from_face_map([1, 2, 3], [1, 3, 2]).unwrap();
        assert_eq!(q.images(), [0, 1, 3, 2]);
        assert!(Perm4::from_face_map([1, 1, 3], [0, 1, 2]).is_none());
    }

    #[test]
    fn edge_tables_consistent() {
        for (i, &(a, b)) in EDGE_VERTS.iter().enumerate() {
            assert_eq!(edge_index(a, b), i);
            assert_eq!(edge_index(b, a), i);
            let (c, d) = EDGE_VERTS[opposite_edge(i)];
            assert!(a != c && a != d && b != c && b != d);
        }
    }
}

//! Bundled triangulation data for the Weber-Seifert dodecahedral space.
//!
//! `WS23_TABLE` is a 23-tetrahedron one-vertex triangulation of the space,
//! written in a letter notation: tetrahedra A..W, vertices 1..4, one line per
//! tetrahedron with entries for the faces 123, 124, 134, 234 in that order.
//! An entry `X:abc` identifies the column's face vertices, in the order
//! listed, with vertices a, b, c of tetrahedron X.  Every pairing appears
//! from both sides, and `ws23()` checks the two directions against each
//! other, so a transcription slip cannot pass silently.
//!
//! `WS23_DEHYDRATION` and `ALT_DEHYDRATIONS` are dehydration strings for the
//! same manifold: the first rehydrates to exactly the table above (which is
//! labelled in canonical sweep order), the other two are distinct
//! 23-tetrahedron triangulations of the space.

use crate::tri::{build_table, GluingTable, PairingRow, TriError};

pub const WS23_TABLE: &str = "\
A E:123 D:124 C:134 B:234
B H:123 G:124 F:134 A:234
C K:123 J:124 A:134 I:234
D M:123 A:124 H:134 L:234
E A:123 P:124 O:134 N:234
F M:143 Q:124 B:134 I:134
G R:123 B:124 N:314 M:432
H B:123 T:124 D:134 S:234
I O:132 K:134 F:234 C:234
J S:123 C:124 T:134 N:231
K C:123 V:124 I:124 U:234
L U:214 M:142 P:132 D:234
M D:123 L:142 F:132 G:432
N J:423 U:431 G:314 E:234
O I:132 R:234 E:134 Q:314
P L:143 E:124 W:134 S:431
Q U:213 F:124 O:324 V:134
R G:123 T:123 W:423 O:124
S J:123 V:123 P:432 H:234
T R:124 H:124 J:134 W:142
U Q:213 L:213 N:421 K:234
V S:124 K:124 Q:234 W:123
W V:234 T:243 P:134 R:341";

pub const WS23_DEHYDRATION: &str =
    "xppphocgaeaaahimmnkontspmuuqrsvuwtvwwxwjjsvvcxxjjqattdwworrko";

pub const ALT_DEHYDRATIONS: [&str; 2] = [
    "xppphjgbgaaaaginnlsnmupurtqsqurwwvvwvmwfcvuvkekaldmphextbvwfw",
    "xppfpnkalaaaamkionrmtnpoqrsutsqwuvvwwxdwvgtvqkpwxpxalnjcrkfns",
];

const COLUMNS: [[u8; 3]; 4] = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

/// Parse the letter notation above into pairing rows (0-indexed).
pub fn parse_letter_table(text: &str) -> Result<Vec<PairingRow>, TriError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap();
        let tet = letter_index(name, lineno)?;
        for (col, entry) in parts.enumerate() {
            if col >= 4 {
                return Err(TriError::Parse {
                    line: lineno + 1,
                    msg: "too many entries".into(),
                });
            }
            let (pname, imgs) = entry.split_once(':').ok_or_else(|| TriError::Parse {
                line: lineno + 1,
                msg: format!("bad entry `{entry}`"),
            })?;
            let partner = letter_index(pname, lineno)?;
            let digits: Vec<u8> = imgs.bytes().map(|b| b.wrapping_sub(b'1')).collect();
            if digits.len() != 3 || digits.iter().any(|&d| d > 3) {
                return Err(TriError::Parse {
                    line: lineno + 1,
                    msg: format!("bad images `{imgs}`"),
                });
            }
            let face = COLUMNS[col].map(|v| v - 1);
            rows.push(PairingRow {
                tet,
                face,
                partner,
                images: [digits[0], digits[1], digits[2]],
            });
        }
    }
    Ok(rows)
}

fn letter_index(name: &str, lineno: usize) -> Result<usize, TriError> {
    let b = name.as_bytes();
    if b.len() == 1 && b[0].is_ascii_uppercase() {
        Ok((b[0] - b'A') as usize)
    } else {
        Err(TriError::Parse {
            line: lineno + 1,
            msg: format!("bad tetrahedron name `{name}`"),
        })
    }
}

/// The bundled 23-tetrahedron triangulation of the Weber-Seifert space.
pub fn ws23() -> GluingTable {
    let rows = parse_letter_table(WS23_TABLE).expect("bundled table parses");
    build_table(23, &rows).expect("bundled table is a consistent involution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::properties;

    #[test]
    fn ws23_is_the_expected_closed_manifold() {
        let table = ws23();
        table.verify().unwrap();
        let p = properties(&table);
        assert_eq!(p.tets, 23);
        assert_eq!(p.vertices, 1);
        assert_eq!(p.edges, 24);
        assert_eq!(p.faces, 46);
        assert!(p.closed && p.connected && p.orientable && p.valid);
        assert_eq!(p.euler, 0);
    }
}

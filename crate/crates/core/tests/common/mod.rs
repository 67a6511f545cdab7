//! Shared fixtures and independent oracles for the integration tests.

#![allow(dead_code)]

use knot_census::geometry::Configuration;

/// The shipped witness with three figure-8 Hamiltonian cycles (all Type-II);
/// identical to `witnesses/fig8x3.txt`, found by `search` with seed 1,
/// bound 100.
pub const FIG8X3_COORDS: [[i64; 3]; 7] = [
    [10, 31, -46],
    [-5, 33, -28],
    [91, -49, -35],
    [-72, -16, 10],
    [-67, -98, 38],
    [84, -73, 46],
    [-51, -57, 94],
];

/// A configuration whose single figure-8 cycle matches Type-III.
pub const TYPE3_COORDS: [[i64; 3]; 7] = [
    [-18, 37, 0],
    [-78, -73, 64],
    [-7, -59, -70],
    [-1, 9, 26],
    [-95, -97, 80],
    [-51, 38, -79],
    [2, 29, 0],
];

/// A configuration whose single figure-8 cycle ⟨1364527⟩ matches Type-I
/// via labeling 3172546 (s = −1).
pub const TYPE1_COORDS: [[i64; 3]; 7] = [
    [95, -4, -8],
    [33, -10, -61],
    [-78, 87, -53],
    [-19, 25, 22],
    [11, 57, 19],
    [82, -8, 94],
    [-97, 76, 73],
];

pub fn fig8x3_configuration() -> Configuration {
    Configuration::from_integer_points(&FIG8X3_COORDS).unwrap()
}

pub fn type3_configuration() -> Configuration {
    Configuration::from_integer_points(&TYPE3_COORDS).unwrap()
}

pub fn type1_configuration() -> Configuration {
    Configuration::from_integer_points(&TYPE1_COORDS).unwrap()
}

/// Parses a PD-style fixture: lines `X a b c d` with segment labels 1..2k
/// along the curve, `a` the incoming under-segment, `c = a+1` the outgoing
/// under-segment, and `{b, d}` the over-strand pair (consecutive labels).
/// Returns the crossing count and the passage walk expected by
/// `determinant_from_passages`.
pub fn parse_pd(text: &str) -> (usize, Vec<(usize, bool)>) {
    let mut crossings: Vec<[usize; 4]> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(fields[0], "X", "fixture lines look like `X a b c d`");
        assert_eq!(fields.len(), 5);
        let nums: Vec<usize> = fields[1..].iter().map(|f| f.parse().unwrap()).collect();
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    let k = crossings.len();
    let m = 2 * k;
    let next = |s: usize| s % m + 1;

    let mut passages: Vec<Option<(usize, bool)>> = vec![None; m];
    for (ci, &[a, b, c, d]) in crossings.iter().enumerate() {
        assert_eq!(next(a), c, "under strand must run a -> a+1");
        let over_in = if next(b) == d {
            b
        } else if next(d) == b {
            d
        } else {
            panic!("over pair {b},{d} is not consecutive");
        };
        assert!(passages[a - 1].replace((ci, false)).is_none());
        assert!(passages[over_in - 1].replace((ci, true)).is_none());
    }
    let passages: Vec<(usize, bool)> = passages
        .into_iter()
        .map(|p| p.expect("every segment ends at exactly one crossing"))
        .collect();
    (k, passages)
}

pub fn load_pd_fixture(name: &str) -> (usize, Vec<(usize, bool)>) {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    parse_pd(&std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}")))
}

//! Fraction-free integer determinants.

/// Determinant of a square integer matrix by Bareiss elimination with row
/// pivoting. All intermediate values are minors of the input, so no fractions
/// ever appear and i128 gives ample headroom for the small matrices used here
/// (entries in {-2,...,2}, dimension well under 90).
pub(crate) fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

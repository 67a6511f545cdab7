//! The plain-text configuration file format.
//!
//! ```text
//! # comment lines start with '#'; blank lines are ignored
//! knot-census v1
//! n 7
//! 10 31 -46
//! -5 33 -28
//! 91/2 -49 -35/3
//! ...
//! ```
//!
//! A file carries a version tag, a vertex count (6 or 7), and then one line
//! per point with three whitespace-separated coordinates, each an integer or
//! an exact fraction `p/q`. Files written by `search` prepend comments
//! recording the seed and budget that produced them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use knot_census::geometry::{Point3, Scalar};

pub const VERSION_LINE: &str = "knot-census v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses the file into raw points. General-position validation is the
/// caller's concern (it is a geometry failure, not a parse failure).
pub fn parse_points(text: &str) -> Result<Vec<Point3>, ParseError> {
    let mut significant = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = significant
        .next()
        .ok_or_else(|| err(1, "empty file; expected version line"))?;
    if header != VERSION_LINE {
        return Err(err(line, format!("expected `{VERSION_LINE}`, got `{header}`")));
    }

    let (line, n_line) = significant
        .next()
        .ok_or_else(|| err(line + 1, "missing `n <count>` line"))?;
    let n: usize = match n_line.strip_prefix("n ").map(str::trim) {
        Some(v) => v
            .parse()
            .map_err(|_| err(line, format!("invalid vertex count `{v}`")))?,
        None => return Err(err(line, format!("expected `n <count>`, got `{n_line}`"))),
    };

    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, coords) = significant
            .next()
            .ok_or_else(|| err(line, format!("expected {n} coordinate lines")))?;
        let fields: Vec<&str> = coords.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(
                line,
                format!("expected three coordinates, got {}", fields.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(3);
        for f in &fields {
            parsed.push(parse_scalar(f).map_err(|m| err(line, m))?);
        }
        let mut it = parsed.into_iter();
        points.push(Point3::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ));
    }

    if let Some((line, extra)) = significant.next() {
        return Err(err(line, format!("unexpected trailing content `{extra}`")));
    }
    Ok(points)
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid number `{s}`"))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid denominator in `{s}`"))?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(num, den))
}

/// Renders a configuration in the file format, with optional leading
/// comments (written as `# ...` lines).
pub fn render(points: &[Point3], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(VERSION_LINE);
    out.push('\n');
    out.push_str(&format!("n {}\n", points.len()));
    for p in points {
        out.push_str(&format!("{} {} {}\n", p.x, p.y, p.z));
    }
    out
}

//! ε sign tables of labeled heptagons and the Type-I/II/III figure-8 test.
//!
//! Label the vertices of a heptagonal cycle 1..7 along the cycle (a labeling
//! is a choice of base vertex and orientation, so each cycle has 14). The
//! table of a labeling records ε between each triangle of three consecutive
//! vertices and the three cycle edges spanned by the remaining four vertices:
//! row 123 has columns 45, 56, 67; row 234 has 56, 67, 71; and so on. A
//! heptagon is a figure-8 knot exactly when some labeling's table matches one
//! of three sign patterns, where `+`/`-` cells must carry a single coupled
//! sign s/−s throughout the table and `0` cells must vanish.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::Cycle;
use crate::geometry::{Configuration, GeometryError, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TablesError {
    #[error("ε tables are defined for heptagons; got a cycle of length {0}")]
    NotHeptagon(usize),
    #[error("a labeling must assign seven distinct vertices")]
    InvalidLabeling,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An assignment of labels 1..7 to the vertices of a heptagonal cycle:
/// position p holds the configuration vertex carrying label p+1. Consecutive
/// labels are adjacent along the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling([usize; 7]);

impl Labeling {
    pub fn new(vertices: [usize; 7]) -> Result<Labeling, TablesError> {
        for i in 0..7 {
            for j in (i + 1)..7 {
                if vertices[i] == vertices[j] {
                    return Err(TablesError::InvalidLabeling);
                }
            }
        }
        Ok(Labeling(vertices))
    }

    /// Configuration vertex carrying the (0-based) label.
    pub fn vertex(&self, label: usize) -> usize {
        self.0[label]
    }

    pub fn vertices(&self) -> &[usize; 7] {
        &self.0
    }

    /// One-based digit string of the labeled vertex sequence.
    pub fn compact(&self) -> String {
        self.0.iter().map(|v| (v + 1).to_string()).collect()
    }
}

impl std::fmt::Display for Labeling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.compact())
    }
}

/// The 14 labelings of a heptagonal cycle: 7 base-vertex rotations for each
/// of the two orientations. Forward labelings come first, then reversed,
/// each in rotation order.
pub fn labelings(cycle: &Cycle) -> Result<Vec<Labeling>, TablesError> {
    if cycle.len() != 7 {
        return Err(TablesError::NotHeptagon(cycle.len()));
    }
    let v = cycle.vertices();
    let mut out = Vec::with_capacity(14);
    for r in 0..7 {
        let mut fwd = [0usize; 7];
        for (p, slot) in fwd.iter_mut().enumerate() {
            *slot = v[(r + p) % 7];
        }
        out.push(Labeling(fwd));
    }
    for r in 0..7 {
        let mut bwd = [0usize; 7];
        for (p, slot) in bwd.iter_mut().enumerate() {
            *slot = v[(r + 7 - p) % 7];
        }
        out.push(Labeling(bwd));
    }
    Ok(out)
}

/// The 7×3 table of ε values of a labeled heptagon, in canonical row-major
/// order: row r (0-based) is the triple of labels (r, r+1, r+2); its columns
/// are the edges (r+3, r+4), (r+4, r+5), (r+5, r+6), all mod 7.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonTable {
    entries: [[Sign; 3]; 7],
}

impl EpsilonTable {
    pub fn entry(&self, row: usize, col: usize) -> Sign {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[[Sign; 3]; 7] {
        &self.entries
    }

    /// Human-readable dump, one row per line: `123 | 45:+ 56:- 67:0`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..7 {
            let t = format!(
                "{}{}{}",
                label(r, 0),
                label(r, 1),
                label(r, 2)
            );
            out.push_str(&t);
            out.push_str(" |");
            for m in 0..3 {
                let e = format!("{}{}", label(r, 3 + m), label(r, 4 + m));
                let s = match self.entries[r][m] {
                    Sign::Positive => '+',
                    Sign::Negative => '-',
                    Sign::Zero => '0',
                };
                out.push_str(&format!(" {e}:{s}"));
            }
            out.push('\n');
        }
        out
    }
}

fn label(row: usize, offset: usize) -> usize {
    (row + offset) % 7 + 1
}

/// Builds the ε table of one labeling.
pub fn build_table(c: &Configuration, labeling: &Labeling) -> Result<EpsilonTable, TablesError> {
    if c.len() != 7 {
        return Err(TablesError::NotHeptagon(c.len()));
    }
    let grid = EpsilonGrid::new(c)?;
    Ok(table_from_grid(&grid, labeling))
}

fn table_from_grid(grid: &EpsilonGrid, labeling: &Labeling) -> EpsilonTable {
    let l = |i: usize| labeling.vertex(i % 7);
    let mut entries = [[Sign::Zero; 3]; 7];
    for (r, row) in entries.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate() {
            *cell = grid.eps(
                (l(r), l(r + 1), l(r + 2)),
                (l(r + 3 + m), l(r + 4 + m)),
            );
        }
    }
    EpsilonTable { entries }
}

/// The three table types characterizing labeled heptagonal figure-8 knots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TableType {
    I,
    II,
    III,
}

impl std::fmt::Display for TableType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableType::I => write!(f, "I"),
            TableType::II => write!(f, "II"),
            TableType::III => write!(f, "III"),
        }
    }
}

/// One cell of a type pattern: must equal the coupled sign s, its negation,
/// or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Plus,
    Minus,
    Zero,
}

/// A full 7×3 pattern; `Plus` cells must all equal a common s ∈ {+1, −1} and
/// `Minus` cells −s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePattern {
    pub kind: TableType,
    cells: [[Slot; 3]; 7],
}

impl TypePattern {
    pub fn cell(&self, row: usize, col: usize) -> Slot {
        self.cells[row][col]
    }
}

use Slot::{Minus as M, Plus as P, Zero as Z};

const TYPE_I_CELLS: [[Slot; 3]; 7] = [
    [P, M, Z], // 123 | 45 56 67
    [M, Z, Z], // 234 | 56 67 71
    [Z, P, Z], // 345 | 67 71 12
    [P, Z, Z], // 456 | 71 12 23
    [Z, M, Z], // 567 | 12 23 34
    [M, Z, Z], // 671 | 23 34 45
    [Z, P, Z], // 712 | 34 45 56
];

/// The three patterns. Type-II differs from Type-I only in row 671 (the 34
/// column carries the coupled sign instead of vanishing); Type-III differs
/// only in row 234 (the sign moves from column 56 to column 67).
pub fn patterns() -> &'static [TypePattern; 3] {
    static PATTERNS: OnceLock<[TypePattern; 3]> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        let type_i = TypePattern {
            kind: TableType::I,
            cells: TYPE_I_CELLS,
        };
        let mut type_ii = TypePattern {
            kind: TableType::II,
            cells: TYPE_I_CELLS,
        };
        type_ii.cells[5] = [M, P, Z];
        let mut type_iii = TypePattern {
            kind: TableType::III,
            cells: TYPE_I_CELLS,
        };
        type_iii.cells[1] = [Z, M, Z];
        let out = [type_i, type_ii, type_iii];
        // Transcription self-checks: every row of every pattern carries a
        // signed slot, and Type-II and Type-III each differ from Type-I in
        // exactly one row (671 and 234 respectively).
        for p in &out {
            for row in &p.cells {
                assert!(row.iter().any(|&s| s != Z), "{:?} has an all-zero row", p.kind);
            }
        }
        for b in 1..3 {
            let rows: Vec<usize> = (0..7)
                .filter(|&r| out[0].cells[r] != out[b].cells[r])
                .collect();
            assert_eq!(rows.len(), 1, "Type-I vs {:?}", out[b].kind);
        }
        assert_ne!(out[1].cells[5], out[0].cells[5]);
        assert_ne!(out[2].cells[1], out[0].cells[1]);
        out
    })
}

/// Does the table match the pattern? On success returns the coupled sign s.
pub fn matches_pattern(table: &EpsilonTable, pattern: &TypePattern) -> Option<Sign> {
    let mut coupled: Option<Sign> = None;
    for r in 0..7 {
        for m in 0..3 {
            let entry = table.entry(r, m);
            match pattern.cell(r, m) {
                Z => {
                    if !entry.is_zero() {
                        return None;
                    }
                }
                P | M => {
                    if entry.is_zero() {
                        return None;
                    }
                    let implied = if pattern.cell(r, m) == P {
                        entry
                    } else {
                        entry.negate()
                    };
                    match coupled {
                        None => coupled = Some(implied),
                        Some(s) if s == implied => {}
                        Some(_) => return None,
                    }
                }
            }
        }
    }
    // Every pattern has signed slots, so a full match always resolves s.
    Some(coupled.expect("patterns contain signed slots"))
}

/// A labeling whose table matches one of the three types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMatch {
    pub labeling: Labeling,
    pub kind: TableType,
    pub sign: Sign,
    pub table: EpsilonTable,
}

/// All matches among the 14 labelings of the cycle, in labeling order.
/// At most one pattern can match a given labeling (the patterns are pairwise
/// inconsistent), so there are at most 14 entries.
pub fn table_matches(c: &Configuration, cycle: &Cycle) -> Result<Vec<TableMatch>, TablesError> {
    let grid = EpsilonGrid::new(c)?;
    table_matches_on_grid(&grid, cycle)
}

pub(crate) fn table_matches_on_grid(
    grid: &EpsilonGrid,
    cycle: &Cycle,
) -> Result<Vec<TableMatch>, TablesError> {
    let mut out = Vec::new();
    for labeling in labelings(cycle)? {
        let table = table_from_grid(grid, &labeling);
        for pattern in patterns() {
            if let Some(sign) = matches_pattern(&table, pattern) {
                out.push(TableMatch {
                    labeling: labeling.clone(),
                    kind: pattern.kind,
                    sign,
                    table: table.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// The table-based figure-8 decision: the first matching labeling if any.
/// A heptagon is figure-8 exactly when this returns a match.
pub fn is_figure8_by_table(
    c: &Configuration,
    cycle: &Cycle,
) -> Result<Option<TableMatch>, TablesError> {
    Ok(table_matches(c, cycle)?.into_iter().next())
}

// ---------------------------------------------------------------------------
// ε grid: every ε value of a configuration, computed once.
//
// ε is invariant under cyclic rotation of its triple, negated by a triple
// transposition, and negated by swapping the edge endpoints, so one value per
// (sorted triple, sorted edge) pair determines all orderings. A 7-point
// configuration has only 35 × 6 = 210 such pairs; censuses and table sweeps
// share them heavily.

pub(crate) struct EpsilonGrid {
    map: HashMap<([usize; 3], [usize; 2]), Sign>,
}

impl EpsilonGrid {
    pub(crate) fn new(c: &Configuration) -> Result<EpsilonGrid, GeometryError> {
        let n = c.len();
        let mut map = HashMap::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for d in (b + 1)..n {
                    for j in 0..n {
                        if j == a || j == b || j == d {
                            continue;
                        }
                        for k in (j + 1)..n {
                            if k == a || k == b || k == d {
                                continue;
                            }
                            let sign = c.epsilon((a, b, d), (j, k))?;
                            map.insert(([a, b, d], [j, k]), sign);
                        }
                    }
                }
            }
        }
        Ok(EpsilonGrid { map })
    }

    /// ε for an arbitrary ordering of the triple and edge.
    pub(crate) fn eps(&self, triple: (usize, usize, usize), edge: (usize, usize)) -> Sign {
        let (mut t, mut parity) = ([triple.0, triple.1, triple.2], Sign::Positive);
        // Sort the three entries, tracking transposition parity.
        for i in 0..2 {
            for j in 0..2 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    parity = parity.negate();
                }
            }
        }
        let e = if edge.0 < edge.1 {
            [edge.0, edge.1]
        } else {
            parity = parity.negate();
            [edge.1, edge.0]
        };
        let base = *self
            .map
            .get(&(t, e))
            .expect("grid contains every disjoint triple/edge pair");
        base.product(parity)
    }

    /// True when every edge among the remaining vertices misses the triple's
    /// triangle.
    pub(crate) fn is_trivial_triple(&self, triple: [usize; 3], n: usize) -> bool {
        for j in 0..n {
            if triple.contains(&j) {
                continue;
            }
            for k in (j + 1)..n {
                if triple.contains(&k) {
                    continue;
                }
                if !self.eps((triple[0], triple[1], triple[2]), (j, k)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

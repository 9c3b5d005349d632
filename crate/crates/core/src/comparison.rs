//! Entrywise comparison of the transcribed tables against the constructive ones,
//! and the catalogue of misprints that explains every disagreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::euler::EulerAngles;
use crate::invariant_forms::closed::{left_coframe_transcribed, right_coframe_transcribed};
use crate::invariant_forms::{left_coframe, right_coframe};
use crate::linalg::{Complex, Matrix8c};
use crate::tangent_frames::closed::{left_field_frame_transcribed, right_field_frame_transcribed};
use crate::tangent_frames::{left_field_frame, right_field_frame};

/// Agreement required between a transcription and the construction.
pub const TABLE_TOLERANCE: f64 = 1e-9;

/// Which version of a transcribed table to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Transcription {
    /// Term by term as published.
    Printed,
    /// With every entry of [`ERRATA`] applied.
    Corrected,
}

/// Which published table a comparison refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Table {
    LeftFields,
    RightFields,
    LeftForms,
    RightForms,
}

impl Table {
    pub const ALL: [Table; 4] = [
        Table::LeftFields,
        Table::RightFields,
        Table::LeftForms,
        Table::RightForms,
    ];

    pub fn row_name(self, row: usize) -> String {
        match self {
            Table::LeftFields => format!("Λ{}", row + 1),
            Table::RightFields => format!("Λ{}ʳ", row + 1),
            Table::LeftForms => format!("ω{}", row + 1),
            Table::RightForms => format!("ω{}ʳ", row + 1),
        }
    }

    pub fn column_name(self, col: usize) -> &'static str {
        const PARTIALS: [&str; 8] = ["∂α", "∂β", "∂γ", "∂θ", "∂a", "∂b", "∂c", "∂φ"];
        const DIFFERENTIALS: [&str; 8] = ["dα", "dβ", "dγ", "dθ", "da", "db", "dc", "dφ"];
        match self {
            Table::LeftFields | Table::RightFields => PARTIALS[col],
            Table::LeftForms | Table::RightForms => DIFFERENTIALS[col],
        }
    }

    /// Constructive table and transcription at `x`, both as complex matrices.
    pub fn evaluate(self, x: &EulerAngles, version: Transcription) -> Result<(Matrix8c, Matrix8c)> {
        let real = |m: crate::linalg::Matrix8| m.map(|v| Complex::new(v, 0.0));
        Ok(match self {
            Table::LeftFields => (
                left_field_frame(x)?.entries,
                left_field_frame_transcribed(x, version)?.entries,
            ),
            Table::RightFields => (
                right_field_frame(x)?.entries,
                right_field_frame_transcribed(x, version)?.entries,
            ),
            Table::LeftForms => (
                real(left_coframe(x)?.entries),
                real(left_coframe_transcribed(x, version)?.entries),
            ),
            Table::RightForms => (
                real(right_coframe(x)?.entries),
                real(right_coframe_transcribed(x, version)?.entries),
            ),
        })
    }
}

/// One catalogued misprint: a single cause and every cell it affects.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Erratum {
    pub table: Table,
    /// Zero-based rows.
    pub rows: &'static [usize],
    /// Zero-based columns in `(α, β, γ, θ, a, b, c, φ)` order.
    pub columns: &'static [usize],
    pub description: &'static str,
}

impl Erratum {
    pub fn covers(&self, table: Table, row: usize, col: usize) -> bool {
        self.table == table && self.rows.contains(&row) && self.columns.contains(&col)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .flat_map(move |&r| self.columns.iter().map(move |&c| (r, c)))
    }
}

const ALL_ROWS: &[usize] = &[0, 1, 2, 3, 4, 5, 6, 7];

/// Misprints found by comparing every published table against the constructive
/// frames and coframes. Applying all of them makes each table agree entrywise.
pub const ERRATA: [Erratum; 9] = [
    Erratum {
        table: Table::RightFields,
        rows: &[3, 4, 5, 6],
        columns: &[7],
        description: "the trailing Λ₈ʳ multiple has the wrong sign",
    },
    Erratum {
        table: Table::RightFields,
        rows: &[5],
        columns: &[4],
        description: "the ∂a term (2 − sin²θ)/sin2θ · sin b · cos(c − a − 3η) is missing its factor i",
    },
    Erratum {
        table: Table::LeftForms,
        rows: &[2],
        columns: &[7],
        description: "the dφ coefficient carries a spurious factor ½; it is −(√3/2)cos2β sin²θ",
    },
    Erratum {
        table: Table::RightForms,
        rows: ALL_ROWS,
        columns: &[1, 2],
        description: "the dβ and dγ labels are exchanged",
    },
    Erratum {
        table: Table::RightForms,
        rows: &[3, 4, 5, 6],
        columns: &[3, 4],
        description: "the dθ-labelled term repeats the dβ-labelled coefficient and should be absent; \
                      the term printed with da is the dθ coefficient",
    },
    Erratum {
        table: Table::RightForms,
        rows: &[7],
        columns: &[3],
        description: "the dθ-labelled term repeats the dβ-labelled coefficient and should be absent",
    },
    Erratum {
        table: Table::RightForms,
        rows: &[0, 1, 2],
        columns: &[3, 4],
        description: "the dθ-labelled term is the da coefficient, without the factor (1 − ½sin²θ)",
    },
    Erratum {
        table: Table::RightForms,
        rows: &[0, 3, 6],
        columns: &[0],
        description: OVERALL_SIGN,
    },
    Erratum {
        table: Table::RightForms,
        rows: &[5, 6],
        columns: &[1],
        description: "the dγ-labelled term (the dβ coefficient) has the wrong sign relative to the rest of the form",
    },
];

const OVERALL_SIGN: &str = "the whole form is printed with the opposite overall sign";

/// Extra cells affected by the overall-sign misprint that no other entry covers.
const SIGN_ONLY_CELLS: [(Table, usize, usize); 1] = [(Table::RightForms, 0, 5)];

/// Whether a mismatch at `(table, row, col)` is explained by the catalogue.
pub fn explained(table: Table, row: usize, col: usize) -> bool {
    ERRATA.iter().any(|e| e.covers(table, row, col)) || SIGN_ONLY_CELLS.contains(&(table, row, col))
}

/// Largest deviation of each entry over a set of points.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub table: Table,
    pub points: usize,
    /// `max_dev[row][col]`
    pub max_dev: [[f64; 8]; 8],
    /// Smallest deviation seen; with `max_dev` this shows whether a mismatch is
    /// present at every point.
    pub min_dev: [[f64; 8]; 8],
}

impl EntryReport {
    pub fn new(table: Table) -> Self {
        EntryReport {
            table,
            points: 0,
            max_dev: [[0.0; 8]; 8],
            min_dev: [[f64::INFINITY; 8]; 8],
        }
    }

    pub fn record(&mut self, dev: impl Fn(usize, usize) -> f64) {
        self.points += 1;
        for r in 0..8 {
            for c in 0..8 {
                let d = dev(r, c);
                self.max_dev[r][c] = self.max_dev[r][c].max(d);
                self.min_dev[r][c] = self.min_dev[r][c].min(d);
            }
        }
    }

    /// Entries exceeding the tolerance at some point.
    pub fn mismatches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..8 {
            for c in 0..8 {
                if self.max_dev[r][c] > TABLE_TOLERANCE {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Mismatched entries that agree at some of the points.
    pub fn unstable(&self) -> Vec<(usize, usize)> {
        self.mismatches()
            .into_iter()
            .filter(|&(r, c)| self.min_dev[r][c] <= TABLE_TOLERANCE)
            .collect()
    }

    pub fn max_deviation(&self) -> f64 {
        self.max_dev.iter().flatten().copied().fold(0.0, f64::max)
    }
}

/// Interior points well away from the chart singularities, reproducible from a seed.
pub fn interior_points(n: usize, seed: u64) -> Vec<EulerAngles> {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut x = [0.0; 8];
            for (k, v) in x.iter_mut().enumerate() {
                let hi = match k {
                    1 | 3 | 5 => FRAC_PI_2,
                    _ => PI,
                };
                *v = rng.random_range(0.05 * hi..0.95 * hi);
            }
            EulerAngles::from_array(x)
        })
        .collect()
}

/// Comparison of one table, printed and corrected, over a point set.
#[derive(Debug, Clone, Serialize)]
pub struct TableComparison {
    pub table: Table,
    /// Global ±1 that best aligns the printed table with the construction.
    pub sign: f64,
    pub printed: EntryReport,
    pub corrected: EntryReport,
}

/// One line of the misprint report.
#[derive(Debug, Clone, Serialize)]
pub struct TypoLine {
    pub table: Table,
    pub row: usize,
    pub column: usize,
    pub entry: String,
    pub max_deviation: f64,
    pub min_deviation: f64,
    pub stable: bool,
    pub explanation: Option<&'static str>,
}

impl TableComparison {
    pub fn typo_lines(&self) -> Vec<TypoLine> {
        self.printed
            .mismatches()
            .into_iter()
            .map(|(r, c)| TypoLine {
                table: self.table,
                row: r,
                column: c,
                entry: format!("{} {}", self.table.row_name(r), self.table.column_name(c)),
                max_deviation: self.printed.max_dev[r][c],
                min_deviation: self.printed.min_dev[r][c],
                stable: self.printed.min_dev[r][c] > TABLE_TOLERANCE,
                explanation: ERRATA
                    .iter()
                    .find(|e| e.covers(self.table, r, c))
                    .map(|e| e.description)
                    .or_else(|| SIGN_ONLY_CELLS.contains(&(self.table, r, c)).then_some(OVERALL_SIGN)),
            })
            .collect()
    }

    /// Catalogued cells that do not actually disagree at every point.
    pub fn overclaimed(&self) -> Vec<(usize, usize)> {
        ERRATA
            .iter()
            .filter(|e| e.table == self.table)
            .flat_map(|e| e.cells())
            .filter(|&(r, c)| self.printed.min_dev[r][c] <= TABLE_TOLERANCE)
            .collect()
    }
}

pub fn compare_table(table: Table, points: &[EulerAngles]) -> Result<TableComparison> {
    let mut printed = EntryReport::new(table);
    let mut corrected = EntryReport::new(table);
    let (mut plus, mut minus) = (0.0f64, 0.0f64);
    for x in points {
        let (exact, p) = table.evaluate(x, Transcription::Printed)?;
        let (_, q) = table.evaluate(x, Transcription::Corrected)?;
        plus = plus.max(crate::linalg::max_abs8c(&(exact - p)));
        minus = minus.max(crate::linalg::max_abs8c(&(exact + p)));
        printed.record(|r, c| (exact[(r, c)] - p[(r, c)]).norm());
        corrected.record(|r, c| (exact[(r, c)] - q[(r, c)]).norm());
    }
    let sign = if minus < plus { -1.0 } else { 1.0 };
    Ok(TableComparison {
        table,
        sign,
        printed,
        corrected,
    })
}

/// All four tables over the same points.
#[derive(Debug, Clone, Serialize)]
pub struct TypoReport {
    pub points: usize,
    pub tables: Vec<TableComparison>,
}

impl TypoReport {
    pub fn lines(&self) -> Vec<TypoLine> {
        self.tables.iter().flat_map(|t| t.typo_lines()).collect()
    }

    /// Mismatches with no catalogue entry.
    pub fn unexplained(&self) -> Vec<TypoLine> {
        self.lines().into_iter().filter(|l| l.explanation.is_none()).collect()
    }

    /// Mismatches that vanish at some point.
    pub fn unstable(&self) -> Vec<TypoLine> {
        self.lines().into_iter().filter(|l| !l.stable).collect()
    }

    /// Largest deviation of any corrected table from the construction.
    pub fn corrected_deviation(&self) -> f64 {
        self.tables
            .iter()
            .map(|t| t.corrected.max_deviation())
            .fold(0.0, f64::max)
    }

    pub fn overclaimed(&self) -> usize {
        self.tables.iter().map(|t| t.overclaimed().len()).sum()
    }

    /// Every disagreement is catalogued, stable across points, and repaired by
    /// the catalogue, and no catalogue entry is spurious.
    pub fn passed(&self) -> bool {
        self.unexplained().is_empty()
            && self.unstable().is_empty()
            && self.overclaimed() == 0
            && self.corrected_deviation() <= TABLE_TOLERANCE
    }
}

pub fn typo_report(points: &[EulerAngles]) -> Result<TypoReport> {
    Ok(TypoReport {
        points: points.len(),
        tables: Table::ALL
            .iter()
            .map(|&t| compare_table(t, points))
            .collect::<Result<_>>()?,
    })
}

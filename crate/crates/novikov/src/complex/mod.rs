//! Filtered 2-dimensional Novikov chain complexes.
//!
//! Columns are generators ordered by Morse index; column order is the
//! finest filtration (`F_p` is spanned by columns `1..=p+1`). Entry `(i, j)`
//! is the coefficient of generator `i` in the boundary of generator `j`.
//! [`validate_differential`] checks the shape every 2-dimensional Novikov
//! differential must have: Δ² = 0 and each index-1 row and column being
//! null, one binomial `t^a − t^b`, two opposite-sign monomials, or one
//! monomial.

mod format;
mod generate;
mod matrix;

use std::fmt;

pub use format::{parse_complex, render_complex, render_grid, render_matrix_entries};
pub use generate::{generate_corpus, generate_example, random_complex, CorpusStrategy, Template};
pub use matrix::{IndexPartition, NovikovMatrix};

use crate::error::{Error, Result};
use crate::ring::{ScalarClass, Sign};
use crate::Scalar;

/// A Novikov matrix together with its filtration and generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    matrix: NovikovMatrix,
    partition: IndexPartition,
    labels: Vec<String>,
}

impl FilteredComplex {
    /// Checks dimensions, strict upper-triangularity and block support.
    pub fn new(matrix: NovikovMatrix, partition: IndexPartition) -> Result<Self> {
        let m = partition.m();
        if m == 0 {
            return Err(Error::Structure("complex has no generators".into()));
        }
        if matrix.m() != m {
            return Err(Error::Structure(format!(
                "matrix is {}×{} but {} indices were given",
                matrix.m(),
                matrix.m(),
                m
            )));
        }
        for ((i, j), _) in matrix.entries() {
            if i >= j {
                return Err(Error::Structure(format!(
                    "entry ({i},{j}) is on or below the diagonal"
                )));
            }
            if partition.index(i) + 1 != partition.index(j) {
                return Err(Error::Structure(format!(
                    "entry ({i},{j}) joins generators of index {} and {}",
                    partition.index(i),
                    partition.index(j)
                )));
            }
        }
        let labels = (1..=m)
            .map(|j| format!("h{j}_{}", partition.index(j)))
            .collect();
        Ok(Self {
            matrix,
            partition,
            labels,
        })
    }

    pub fn matrix(&self) -> &NovikovMatrix {
        &self.matrix
    }

    pub fn partition(&self) -> &IndexPartition {
        &self.partition
    }

    pub fn m(&self) -> usize {
        self.partition.m()
    }

    /// Generator name `h{j}_{k}` of column `j`.
    pub fn label(&self, j: usize) -> &str {
        &self.labels[j - 1]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Why an index-1 row or column matches none of the four admissible shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeViolation {
    /// Two unit monomials with the same sign.
    SignPattern,
    /// An entry that is neither a unit monomial nor a `t^a − t^b` binomial.
    NotMonomialOrBinomial,
    /// Admissible entries in an inadmissible combination (too many, or a
    /// binomial alongside another entry).
    Arrangement,
}

/// Shape of an index-1 row or column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineType {
    /// (1) all entries zero.
    Null,
    /// (2) a single binomial `t^a − t^b`.
    Binomial,
    /// (3) exactly two monomials `t^a` and `−t^b`.
    MonomialPair,
    /// (4) a single monomial.
    Monomial,
    Invalid(ShapeViolation),
}

impl LineType {
    /// Case number 1–4, `None` when invalid.
    pub fn number(&self) -> Option<u8> {
        match self {
            LineType::Null => Some(1),
            LineType::Binomial => Some(2),
            LineType::MonomialPair => Some(3),
            LineType::Monomial => Some(4),
            LineType::Invalid(_) => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.number().is_some()
    }
}

impl fmt::Display for LineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineType::Invalid(v) => write!(f, "invalid ({v:?})"),
            t => write!(f, "type {}", t.number().unwrap_or(0)),
        }
    }
}

/// Classifies the nonzero entries of one row or column.
pub fn classify_line<'a, I: IntoIterator<Item = &'a Scalar>>(entries: I) -> LineType {
    let classes: Vec<ScalarClass> = entries.into_iter().map(Scalar::classify).collect();
    if classes
        .iter()
        .any(|c| !c.is_unit_form() && *c != ScalarClass::Zero)
    {
        return LineType::Invalid(ShapeViolation::NotMonomialOrBinomial);
    }
    let classes: Vec<ScalarClass> = classes
        .into_iter()
        .filter(|c| *c != ScalarClass::Zero)
        .collect();
    match classes.as_slice() {
        [] => LineType::Null,
        [ScalarClass::Binomial { .. }] => LineType::Binomial,
        [ScalarClass::Monomial { .. }] => LineType::Monomial,
        [ScalarClass::Monomial { sign: a, .. }, ScalarClass::Monomial { sign: b, .. }] => {
            if *a != *b {
                LineType::MonomialPair
            } else {
                LineType::Invalid(ShapeViolation::SignPattern)
            }
        }
        _ => LineType::Invalid(ShapeViolation::Arrangement),
    }
}

/// Type of column `j` (any column; the classification is meant for `J₁`).
pub fn classify_column(c: &FilteredComplex, j: usize) -> LineType {
    classify_line(c.matrix.column(j).map(|(_, v)| v))
}

/// Type of row `j`.
pub fn classify_row(c: &FilteredComplex, j: usize) -> LineType {
    classify_line(c.matrix.row(j).map(|(_, v)| v))
}

/// Outcome of [`validate_differential`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub square_zero: bool,
    /// `(j, type)` for each index-1 column.
    pub columns: Vec<(usize, LineType)>,
    /// `(j, type)` for each index-1 row.
    pub rows: Vec<(usize, LineType)>,
}

impl ValidationReport {
    pub fn admissible(&self) -> bool {
        self.square_zero
            && self.columns.iter().all(|(_, t)| t.is_valid())
            && self.rows.iter().all(|(_, t)| t.is_valid())
    }

    /// Human-readable reasons for inadmissibility.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.square_zero {
            out.push("Δ∘Δ ≠ 0".to_string());
        }
        for (what, lines) in [("column", &self.columns), ("row", &self.rows)] {
            for (j, t) in lines {
                if let LineType::Invalid(v) = t {
                    let why = match v {
                        ShapeViolation::SignPattern => {
                            "two monomials of the same sign (sign convention violated)"
                        }
                        ShapeViolation::NotMonomialOrBinomial => {
                            "entry is neither a monomial nor a binomial"
                        }
                        ShapeViolation::Arrangement => "more entries than any admissible shape",
                    };
                    out.push(format!("{what} {j}: {why}"));
                }
            }
        }
        out
    }

    /// `Ok(())` when admissible, otherwise [`Error::Inadmissible`].
    pub fn into_result(self) -> Result<()> {
        if self.admissible() {
            Ok(())
        } else {
            Err(Error::Inadmissible(self.problems().join("; ")))
        }
    }
}

/// Checks Δ² = 0 and the shape of every index-1 row and column.
pub fn validate_differential(c: &FilteredComplex) -> ValidationReport {
    validate_matrix(&c.matrix, &c.partition)
}

/// [`validate_differential`] on a bare matrix and partition.
pub fn validate_matrix(a: &NovikovMatrix, p: &IndexPartition) -> ValidationReport {
    let j1 = p.columns_of(1);
    let line = |it: Vec<&Scalar>| classify_line(it);
    ValidationReport {
        square_zero: a.squares_to_zero(),
        columns: j1
            .clone()
            .map(|j| (j, line(a.column(j).map(|(_, v)| v).collect())))
            .collect(),
        rows: j1
            .map(|j| (j, line(a.row(j).map(|(_, v)| v).collect())))
            .collect(),
    }
}

/// Sign of a unit monomial, `None` for anything else.
pub fn monomial_sign(s: &Scalar) -> Option<Sign> {
    match s.classify() {
        ScalarClass::Monomial { sign, .. } => Some(sign),
        _ => None,
    }
}

//! Spectral sequence sweeping: diagonal-by-diagonal pivot markup and change
//! of basis over Z((t)).
//!
//! Step `r` marks diagonal `r` of `Δ^r` (entries `(i, i + r)`, increasing
//! column). An entry with a primary pivot strictly below it in its column is
//! left unmarked; otherwise it is a change-of-basis pivot if its row already
//! holds a primary pivot at some column `u`, and a new primary pivot if not.
//! Each change-of-basis pivot `(i, j)` contributes `−c E_{u,j}` to
//! `T^r = I − Σ c E_{u,j}`, `c = Δ^r_{ij} / Δ^r_{iu}`, and
//! `Δ^{r+1} = (T^r)⁻¹ Δ^r T^r`.
//!
//! Two tracks run in lockstep: the main track above, and a raw track
//! `Δ^r T^r` that skips the premultiplication. With `S^r = T^1 ⋯ T^{r−1}` the
//! matrix of chains `σ^{j,r}` in the original generators, raw is `Δ S^r` and
//! main is `(S^r)⁻¹ Δ S^r`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{classify_line, validate_differential, FilteredComplex, NovikovMatrix};
use crate::error::{Error, Result};
use crate::ring::{ScalarClass, Sign};
use crate::Scalar;

/// Kind of a marked entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PivotKind {
    Primary,
    ChangeOfBasis,
}

impl fmt::Display for PivotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PivotKind::Primary => "primary",
            PivotKind::ChangeOfBasis => "change-of-basis",
        })
    }
}

/// A marked entry of `Δ^diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotMark {
    pub kind: PivotKind,
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
    pub diagonal: usize,
    /// Column of the primary pivot in the same row (change of basis only).
    pub partner: Option<usize>,
}

/// One column operation `σ^{col,step} = σ^{col,step−1} + coefficient · σ^{partner,step−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainUpdate {
    pub step: usize,
    pub col: usize,
    pub partner: usize,
    pub coefficient: Scalar,
}

/// Chains `σ^{j,r}` in the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBasis {
    /// `S^r` for `r = 1..=L`; column `j` holds the coefficients of `σ^{j,r}`.
    cumulative: Vec<NovikovMatrix>,
    updates: Vec<ChainUpdate>,
}

impl ChainBasis {
    /// Coefficient matrix `S^r` (clamped to the last step).
    pub fn matrix(&self, r: usize) -> &NovikovMatrix {
        &self.cumulative[r.clamp(1, self.cumulative.len()) - 1]
    }

    /// Nonzero coefficients `(ℓ, c^{j,r}_ℓ)` of `σ^{j,r}`, increasing `ℓ`.
    pub fn sigma(&self, j: usize, r: usize) -> Vec<(usize, Scalar)> {
        self.matrix(r)
            .column(j)
            .map(|(l, v)| (l, v.clone()))
            .collect()
    }

    /// Column operations in the order they were applied.
    pub fn updates(&self) -> &[ChainUpdate] {
        &self.updates
    }

    /// The update that produced `σ^{j,step}`, if any.
    pub fn update(&self, j: usize, step: usize) -> Option<&ChainUpdate> {
        self.updates.iter().find(|u| u.col == j && u.step == step)
    }
}

/// Complete record of a sweep.
#[derive(Clone, Debug)]
pub struct SweepHistory {
    complex: FilteredComplex,
    /// `Δ^1..Δ^L` (main track).
    matrices: Vec<NovikovMatrix>,
    /// Raw track, same length.
    raw_matrices: Vec<NovikovMatrix>,
    /// `T^1..T^{L−1}`.
    basis_changes: Vec<NovikovMatrix>,
    marks: Vec<PivotMark>,
    chains: ChainBasis,
}

/// Which of the two matrix tracks to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Track {
    Main,
    Raw,
}

impl SweepHistory {
    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    /// `L`: index of the last matrix (one past the last change of basis).
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Δ^r` on the main track; `r > L` gives `Δ^L`.
    pub fn matrix(&self, r: usize) -> &NovikovMatrix {
        &self.matrices[r.clamp(1, self.len()) - 1]
    }

    /// `Δ^r` on the raw track; `r > L` gives the last raw matrix.
    pub fn raw_matrix(&self, r: usize) -> &NovikovMatrix {
        &self.raw_matrices[r.clamp(1, self.len()) - 1]
    }

    pub fn track(&self, t: Track, r: usize) -> &NovikovMatrix {
        match t {
            Track::Main => self.matrix(r),
            Track::Raw => self.raw_matrix(r),
        }
    }

    /// `Δ^L`.
    pub fn final_matrix(&self) -> &NovikovMatrix {
        self.matrices.last().expect("at least one matrix")
    }

    /// `T^r` for `1 ≤ r < L`, identity otherwise.
    pub fn basis_change(&self, r: usize) -> NovikovMatrix {
        match r.checked_sub(1).and_then(|k| self.basis_changes.get(k)) {
            Some(t) => t.clone(),
            None => NovikovMatrix::identity(self.m()),
        }
    }

    pub fn marks(&self) -> &[PivotMark] {
        &self.marks
    }

    pub fn marks_on(&self, diagonal: usize) -> impl Iterator<Item = &PivotMark> + '_ {
        self.marks.iter().filter(move |k| k.diagonal == diagonal)
    }

    pub fn primaries(&self) -> impl Iterator<Item = &PivotMark> + '_ {
        self.marks.iter().filter(|k| k.kind == PivotKind::Primary)
    }

    /// Primary pivot of column `j`.
    pub fn primary_in_column(&self, j: usize) -> Option<&PivotMark> {
        self.primaries().find(|k| k.col == j)
    }

    /// Primary pivot of row `i`.
    pub fn primary_in_row(&self, i: usize) -> Option<&PivotMark> {
        self.primaries().find(|k| k.row == i)
    }

    pub fn chains(&self) -> &ChainBasis {
        &self.chains
    }
}

/// Runs the sweep on an admissible complex.
pub fn run_sssa(c: &FilteredComplex) -> Result<SweepHistory> {
    validate_differential(c).into_result()?;
    sweep_unchecked(c)
}

/// Runs the sweep without the admissibility gate.
pub fn sweep_unchecked(c: &FilteredComplex) -> Result<SweepHistory> {
    let m = c.m();
    let mut main = c.matrix().clone();
    let mut raw = main.clone();
    let mut s = NovikovMatrix::identity(m);
    let mut matrices = vec![main.clone()];
    let mut raw_matrices = vec![raw.clone()];
    let mut cumulative = vec![s.clone()];
    let mut basis_changes = Vec::new();
    let mut updates = Vec::new();
    let mut marks = Vec::new();
    let mut primary_row_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    let mut primary_col_of_row: BTreeMap<usize, usize> = BTreeMap::new();
    let mut last_cob = 0;

    for r in 1..m {
        let mut cobs: Vec<(usize, usize, usize, Scalar)> = Vec::new();
        for i in 1..=m - r {
            let j = i + r;
            let Some(v) = main.get(i, j) else { continue };
            if let Some(&s_row) = primary_row_of_col.get(&j) {
                if s_row > i {
                    continue;
                }
                return Err(Error::InternalInvariantViolation(format!(
                    "entry ({i},{j}) lies below the primary pivot of its column"
                )));
            }
            let form = v.classify();
            if let Some(&u) = primary_col_of_row.get(&i) {
                let pu = main.value(i, u);
                let c = v.checked_div(&pu)?;
                marks.push(PivotMark {
                    kind: PivotKind::ChangeOfBasis,
                    row: i,
                    col: j,
                    value: v.clone(),
                    diagonal: r,
                    partner: Some(u),
                });
                cobs.push((i, j, u, c));
            } else {
                if !form.is_unit_form() && !v.is_unit() {
                    return Err(Error::DivisionByNonUnit(format!(
                        "primary pivot ({i},{j}) = {v}"
                    )));
                }
                marks.push(PivotMark {
                    kind: PivotKind::Primary,
                    row: i,
                    col: j,
                    value: v.clone(),
                    diagonal: r,
                    partner: None,
                });
                primary_row_of_col.insert(j, i);
                primary_col_of_row.insert(i, j);
            }
        }
        if !cobs.is_empty() {
            let cob_cols: BTreeSet<usize> = cobs.iter().map(|x| x.1).collect();
            let partner_cols: BTreeSet<usize> = cobs.iter().map(|x| x.2).collect();
            if !cob_cols.is_disjoint(&partner_cols) || partner_cols.len() != cobs.len() {
                return Err(Error::InternalInvariantViolation(format!(
                    "change-of-basis columns {cob_cols:?} meet partner columns {partner_cols:?} on diagonal {r}"
                )));
            }
            let mut t = NovikovMatrix::identity(m);
            for (_, j, u, c) in &cobs {
                t.set(*u, *j, -c);
                let minus_c = -c;
                main.add_col_multiple(*j, *u, &minus_c);
                raw.add_col_multiple(*j, *u, &minus_c);
                s.add_col_multiple(*j, *u, &minus_c);
                updates.push(ChainUpdate {
                    step: r + 1,
                    col: *j,
                    partner: *u,
                    coefficient: minus_c,
                });
            }
            for (_, j, u, c) in &cobs {
                main.add_row_multiple(*u, *j, c);
            }
            basis_changes.push(t);
            last_cob = r;
        } else {
            basis_changes.push(NovikovMatrix::identity(m));
        }
        matrices.push(main.clone());
        raw_matrices.push(raw.clone());
        cumulative.push(s.clone());
    }

    let len = (last_cob + 1).max(1);
    matrices.truncate(len);
    raw_matrices.truncate(len);
    cumulative.truncate(len);
    basis_changes.truncate(len - 1);
    Ok(SweepHistory {
        complex: c.clone(),
        matrices,
        raw_matrices,
        basis_changes,
        marks,
        chains: ChainBasis {
            cumulative,
            updates,
        },
    })
}

/// Category of a failed sweep invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// A pivot is neither a monomial nor a binomial.
    PivotForm,
    /// Two primary pivots share a row or column index.
    PivotDisjointness,
    /// A primary pivot's value changed after it was marked.
    PrimaryChanged,
    /// `Δ^{r+1} ≠ (T^r)⁻¹ Δ^r T^r`.
    Conjugation,
    /// `Δ^r` is not strictly upper triangular or does not square to zero.
    Differential,
    /// `Δ S^r` differs from the raw track, or `(S^r)⁻¹ Δ S^r` from the main one.
    ChainConsistency,
    /// An index-1 column of `Δ^r` has none of the four admissible shapes.
    FirstBlockColumn,
    /// An index-1 raw row is not of type A, B or C.
    SecondBlockRow,
    /// More than one second-block change-of-basis pivot in a row.
    ItemI,
    /// A second-block change-of-basis pivot that is not a monomial.
    ItemII,
    /// A binomial above a change-of-basis pivot with a nonzero entry above its primary.
    ItemIII,
    /// Primary and change-of-basis pivots of a row not opposite-sign monomials.
    ItemIV,
    /// Monomials above a primary and its change-of-basis pivot with equal signs.
    ItemV,
    /// Final matrix: a nonnull column whose row is not null.
    NullRow,
    /// Final matrix: entry that is not a monomial or binomial polynomial.
    FinalEntry,
    /// Pivots differ from a reference sweep.
    PivotMismatch,
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub step: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] step {}: {}", self.kind, self.step, self.detail)
    }
}

/// Violations found by a checker; empty means every invariant held.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    fn push(&mut self, kind: ViolationKind, step: usize, detail: String) {
        self.violations.push(Violation { kind, step, detail });
    }

    pub fn extend(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
    }
}

fn is_monomial(s: &Scalar) -> Option<Sign> {
    match s.classify() {
        ScalarClass::Monomial { sign, .. } => Some(sign),
        _ => None,
    }
}

fn is_binomial(s: &Scalar) -> bool {
    matches!(s.classify(), ScalarClass::Binomial { .. })
}

/// Second-block row shape on the raw track: `A`, `B`, `C` or `None`.
pub fn second_block_row_type<'a, I>(entries: I) -> Option<char>
where
    I: IntoIterator<Item = (usize, &'a Scalar)>,
{
    let mut any_mono = false;
    let mut any_bino = false;
    let mut first_bino_col = usize::MAX;
    let mut last_mono_col = 0;
    for (j, v) in entries {
        match v.classify() {
            ScalarClass::Monomial { .. } => {
                any_mono = true;
                last_mono_col = last_mono_col.max(j);
            }
            ScalarClass::Binomial { .. } => {
                any_bino = true;
                first_bino_col = first_bino_col.min(j);
            }
            ScalarClass::Zero => {}
            ScalarClass::Other => return None,
        }
    }
    match (any_mono, any_bino) {
        (false, false) => Some('0'),
        (false, true) => Some('A'),
        (true, false) => Some('B'),
        (true, true) if last_mono_col < first_bino_col => Some('C'),
        _ => None,
    }
}

/// Checks every per-step invariant of a sweep.
///
/// Verifies pivot form and disjointness, permanence of primary values, the
/// conjugation identity by explicit multiplication, Δ² = 0 and strict
/// triangularity at every step, the chain bookkeeping of both tracks, the
/// first-block column shapes, the raw second-block row shapes, and the
/// change-of-basis rules (i)–(v) for second-block pivots.
pub fn check_block_invariants(h: &SweepHistory) -> ViolationReport {
    let mut rep = ViolationReport::default();
    let p = h.complex().partition();
    let delta = h.complex().matrix();
    let j1 = p.columns_of(1);
    let j2 = p.columns_of(2);

    for k in h.marks() {
        if !k.value.classify().is_unit_form() {
            rep.push(
                ViolationKind::PivotForm,
                k.diagonal,
                format!("{} pivot ({},{}) = {}", k.kind, k.row, k.col, k.value),
            );
        }
    }
    let prims: Vec<&PivotMark> = h.primaries().collect();
    for (a, x) in prims.iter().enumerate() {
        for y in &prims[a + 1..] {
            let sx = [x.row, x.col];
            if sx.contains(&y.row) || sx.contains(&y.col) {
                rep.push(
                    ViolationKind::PivotDisjointness,
                    y.diagonal,
                    format!("primaries ({},{}) and ({},{})", x.row, x.col, y.row, y.col),
                );
            }
        }
        for r in x.diagonal..=h.len() {
            if h.matrix(r).value(x.row, x.col) != x.value {
                rep.push(
                    ViolationKind::PrimaryChanged,
                    r,
                    format!("primary ({},{}) changed", x.row, x.col),
                );
                break;
            }
        }
    }

    for r in 1..=h.len() {
        let a = h.matrix(r);
        if !a.is_strictly_upper() || !a.squares_to_zero() {
            rep.push(
                ViolationKind::Differential,
                r,
                "Δ^r is not a strictly upper triangular differential".into(),
            );
        }
        if r < h.len() {
            let t = h.basis_change(r);
            match t.unit_upper_inverse() {
                Ok(ti) => {
                    if ti.mul(a).mul(&t) != *h.matrix(r + 1) {
                        rep.push(
                            ViolationKind::Conjugation,
                            r,
                            "Δ^{r+1} ≠ (T^r)⁻¹ Δ^r T^r".into(),
                        );
                    }
                    if h.raw_matrix(r).mul(&t) != *h.raw_matrix(r + 1) {
                        rep.push(
                            ViolationKind::Conjugation,
                            r,
                            "raw Δ^{r+1} ≠ raw Δ^r T^r".into(),
                        );
                    }
                }
                Err(e) => rep.push(ViolationKind::Conjugation, r, e.to_string()),
            }
        }
        let s = h.chains().matrix(r);
        if delta.mul(s) != *h.raw_matrix(r) {
            rep.push(
                ViolationKind::ChainConsistency,
                r,
                "Δ·S^r differs from the raw track".into(),
            );
        }
        match s.unit_upper_inverse() {
            Ok(si) if si.mul(delta).mul(s) == *a => {}
            _ => rep.push(
                ViolationKind::ChainConsistency,
                r,
                "(S^r)⁻¹ Δ S^r differs from the main track".into(),
            ),
        }
        for j in j1.clone() {
            let t = classify_line(a.column(j).map(|(_, v)| v));
            if !t.is_valid() {
                rep.push(
                    ViolationKind::FirstBlockColumn,
                    r,
                    format!("column {j} is {t}"),
                );
            }
        }
        let raw = h.raw_matrix(r);
        for s_row in j1.clone() {
            if second_block_row_type(raw.row(s_row).filter(|(j, _)| j2.contains(j))).is_none() {
                rep.push(
                    ViolationKind::SecondBlockRow,
                    r,
                    format!("raw row {s_row} is not of type A, B or C"),
                );
            }
        }
    }

    let mut cob_rows: BTreeMap<usize, usize> = BTreeMap::new();
    for k in h.marks() {
        if k.kind != PivotKind::ChangeOfBasis || !j2.contains(&k.col) {
            continue;
        }
        let r = k.diagonal;
        let (i, j, u) = (k.row, k.col, k.partner.expect("partner"));
        *cob_rows.entry(i).or_default() += 1;
        if is_monomial(&k.value).is_none() {
            rep.push(
                ViolationKind::ItemII,
                r,
                format!("change-of-basis pivot ({i},{j}) = {}", k.value),
            );
        }
        let pu = h.matrix(r).value(i, u);
        match (is_monomial(&pu), is_monomial(&k.value)) {
            (Some(a), Some(b)) if a != b => {}
            _ => rep.push(
                ViolationKind::ItemIV,
                r,
                format!("row {i}: primary {pu} and change-of-basis {}", k.value),
            ),
        }
        let raw = h.raw_matrix(r);
        for s_row in 1..i {
            let above_j = raw.value(s_row, j);
            let above_u = raw.value(s_row, u);
            if is_binomial(&above_j) && !above_u.is_zero() {
                rep.push(
                    ViolationKind::ItemIII,
                    r,
                    format!("binomial ({s_row},{j}) above ({i},{j}) with ({s_row},{u}) ≠ 0"),
                );
            }
            if let (Some(a), Some(b)) = (is_monomial(&above_j), is_monomial(&above_u)) {
                if a == b {
                    rep.push(
                        ViolationKind::ItemV,
                        r,
                        format!("monomials ({s_row},{u}) and ({s_row},{j}) share a sign"),
                    );
                }
            }
        }
    }
    for (i, n) in cob_rows {
        if n > 1 {
            rep.push(
                ViolationKind::ItemI,
                0,
                format!("row {i} holds {n} second-block change-of-basis pivots"),
            );
        }
    }
    rep
}

/// Properties of `Δ^L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalReport {
    /// Nonnull columns whose row is not null.
    pub null_row_failures: Vec<usize>,
    pub square_zero: bool,
    /// Entries that are not polynomials.
    pub non_polynomial: Vec<(usize, usize)>,
    /// Polynomial entries that are neither monomials nor binomials.
    pub non_unit_form: Vec<(usize, usize)>,
}

impl FinalReport {
    pub fn is_clean(&self) -> bool {
        self.null_row_failures.is_empty()
            && self.square_zero
            && self.non_polynomial.is_empty()
            && self.non_unit_form.is_empty()
    }

    pub fn into_violations(&self, step: usize) -> ViolationReport {
        let mut rep = ViolationReport::default();
        for j in &self.null_row_failures {
            rep.push(
                ViolationKind::NullRow,
                step,
                format!("column {j} is nonnull but row {j} is not null"),
            );
        }
        if !self.square_zero {
            rep.push(ViolationKind::Differential, step, "Δ^L∘Δ^L ≠ 0".into());
        }
        for (i, j) in self.non_polynomial.iter().chain(&self.non_unit_form) {
            rep.push(
                ViolationKind::FinalEntry,
                step,
                format!("entry ({i},{j}) is not a monomial or binomial"),
            );
        }
        rep
    }
}

/// Checks the null-row property and polynomiality of the final matrix.
pub fn check_final_matrix(a: &NovikovMatrix) -> FinalReport {
    let m = a.m();
    let null_row_failures = (1..=m)
        .filter(|&j| !a.column_is_null(j) && !a.row_is_null(j))
        .collect();
    let mut non_polynomial = Vec::new();
    let mut non_unit_form = Vec::new();
    for ((i, j), v) in a.entries() {
        if !v.is_polynomial() {
            non_polynomial.push((i, j));
        } else if !v.classify().is_unit_form() {
            non_unit_form.push((i, j));
        }
    }
    FinalReport {
        null_row_failures,
        square_zero: a.squares_to_zero(),
        non_polynomial,
        non_unit_form,
    }
}

fn mark_key(k: &PivotMark) -> (usize, usize, usize, PivotKind, String) {
    (k.diagonal, k.col, k.row, k.kind, k.value.to_string())
}

/// Sweeps the index-0/1 and index-1/2 blocks separately and compares the
/// union of their marks with the full sweep.
pub fn check_block_isolation(h: &SweepHistory) -> Result<ViolationReport> {
    let c = h.complex();
    let p = c.partition();
    let m = c.m();
    let mut union = Vec::new();
    for (rows, cols) in [
        (p.columns_of(0), p.columns_of(1)),
        (p.columns_of(1), p.columns_of(2)),
    ] {
        let block = c.matrix().restrict(rows, cols);
        let bc = FilteredComplex::new(block, p.clone())?;
        union.extend(sweep_unchecked(&bc)?.marks().iter().map(mark_key));
    }
    let mut full: Vec<_> = h.marks().iter().map(mark_key).collect();
    union.sort();
    full.sort();
    let mut rep = ViolationReport::default();
    if union != full {
        rep.push(
            ViolationKind::PivotMismatch,
            m,
            format!("block sweeps mark {union:?}, full sweep marks {full:?}"),
        );
    }
    Ok(rep)
}

/// Re-sweeps `Δ^L`; a completed sweep admits no further change of basis.
pub fn check_idempotence(h: &SweepHistory) -> Result<ViolationReport> {
    let c = FilteredComplex::new(h.final_matrix().clone(), h.complex().partition().clone())?;
    let again = sweep_unchecked(&c)?;
    let mut rep = ViolationReport::default();
    for k in again.marks() {
        if k.kind == PivotKind::ChangeOfBasis {
            rep.push(
                ViolationKind::PivotMismatch,
                k.diagonal,
                format!("re-sweep marks change of basis at ({},{})", k.row, k.col),
            );
        }
    }
    Ok(rep)
}

/// One record of the sweep trace.
#[derive(Clone, Debug)]
pub struct StepTrace {
    pub diagonal: usize,
    pub marks: Vec<PivotMark>,
    /// Off-diagonal entries of `T^r`.
    pub basis_change: Vec<((usize, usize), Scalar)>,
    /// Columns modified when passing to `Δ^{r+1}`.
    pub changed_columns: Vec<usize>,
}

/// Per-diagonal trace records for `r = 1..m−1`.
pub fn trace(h: &SweepHistory) -> Vec<StepTrace> {
    (1..h.m())
        .map(|r| {
            let t = h.basis_change(r);
            let basis_change: Vec<_> = t
                .entries()
                .filter(|((i, j), _)| i != j)
                .map(|(k, v)| (k, v.clone()))
                .collect();
            let changed_columns = basis_change.iter().map(|((_, j), _)| *j).collect();
            StepTrace {
                diagonal: r,
                marks: h.marks_on(r).cloned().collect(),
                basis_change,
                changed_columns,
            }
        })
        .collect()
}

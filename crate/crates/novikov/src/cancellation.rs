//! Row cancellation: the reordered sweep whose reduced matrices model the
//! family of flows obtained by cancelling critical points one pair at a time.
//!
//! Step `r` conjugates `Δ̃^r = (T̃^{r−1})⁻¹ Δ̃^{r−1} T̃^{r−1}`, marks every
//! nonzero `Δ̃^r_{j−r,j}` in a column without a primary pivot, and builds
//! `T̃^r` from the pivots' elementary factors: the factor of pivot `(p−r, p)`
//! is the identity with `T̃_{p,ℓ} = −Δ̃_{p−r,ℓ} / Δ̃_{p−r,p}` for `ℓ > p`.
//! Factors are multiplied in increasing column order, each reading row `p−r`
//! after the factors to its left; when two pivots of one step meet, this
//! keeps the cancelled rows clean (a single row-by-row assembly from the
//! unmodified `Δ̃^r` would leave cross terms there). The submatrix of
//! `Δ̃^r` on generators not yet cancelled is the Novikov matrix of the flow
//! `f^r`.
//!
//! The incidence updates of each cancellation are recomputed independently
//! from the monomial/binomial case rules (pivots of one step processed in
//! column order) and compared against the conjugation.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{validate_matrix, FilteredComplex, IndexPartition, NovikovMatrix};
use crate::error::{Error, Result};
use crate::ring::ScalarClass;
use crate::spectral::SpectralSequence;
use crate::sssa::{PivotKind, PivotMark, SweepHistory};
use crate::Scalar;

/// Full record of a row-cancellation run.
#[derive(Clone, Debug)]
pub struct RcaHistory {
    complex: FilteredComplex,
    /// `Δ̃^0 ..= Δ̃^m`; the last one comes from the final update step.
    matrices: Vec<NovikovMatrix>,
    /// `T̃^0 .. T̃^{m−1}`.
    transforms: Vec<NovikovMatrix>,
    marks: Vec<PivotMark>,
}

impl RcaHistory {
    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    /// `Δ̃^r`, clamped to the final matrix.
    pub fn matrix(&self, r: usize) -> &NovikovMatrix {
        &self.matrices[r.min(self.matrices.len() - 1)]
    }

    /// Number of stored matrices (`m + 1`).
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `T̃^r`; the identity beyond the last step.
    pub fn transform(&self, r: usize) -> NovikovMatrix {
        self.transforms
            .get(r)
            .cloned()
            .unwrap_or_else(|| NovikovMatrix::identity(self.m()))
    }

    pub fn final_matrix(&self) -> &NovikovMatrix {
        self.matrices.last().expect("history is never empty")
    }

    /// Primary pivots in marking order (diagonal, then column).
    pub fn marks(&self) -> &[PivotMark] {
        &self.marks
    }

    pub fn marks_on(&self, diagonal: usize) -> impl Iterator<Item = &PivotMark> + '_ {
        self.marks.iter().filter(move |k| k.diagonal == diagonal)
    }

    /// Generators not cancelled by any pivot on diagonals `< r`.
    pub fn survivors(&self, r: usize) -> Vec<usize> {
        let dead: BTreeSet<usize> = self
            .marks
            .iter()
            .filter(|k| k.diagonal < r)
            .flat_map(|k| [k.row, k.col])
            .collect();
        (1..=self.m()).filter(|j| !dead.contains(j)).collect()
    }
}

fn conjugate(a: &NovikovMatrix, t: &NovikovMatrix) -> Result<NovikovMatrix> {
    if *t == NovikovMatrix::identity(a.m()) {
        return Ok(a.clone());
    }
    Ok(t.unit_upper_inverse()?.mul(&a.mul(t)))
}

/// Runs row cancellation on an admissible complex.
pub fn run_rca(c: &FilteredComplex) -> Result<RcaHistory> {
    validate_matrix(c.matrix(), c.partition()).into_result()?;
    let m = c.m();
    let mut current = c.matrix().clone();
    let mut t = NovikovMatrix::identity(m);
    let mut matrices = vec![current.clone()];
    let mut transforms = vec![t.clone()];
    let mut marks = Vec::new();
    let mut primary_cols = BTreeSet::new();

    for r in 1..m {
        current = conjugate(&current, &t)?;
        matrices.push(current.clone());
        t = NovikovMatrix::identity(m);
        let mut work = current.clone();
        for p in r + 1..=m {
            let a = p - r;
            let Some(v) = current.get(a, p) else { continue };
            if primary_cols.contains(&p) {
                continue;
            }
            if !v.classify().is_unit_form() && !v.is_unit() {
                return Err(Error::DivisionByNonUnit(format!(
                    "primary pivot ({a},{p}) = {v}"
                )));
            }
            marks.push(PivotMark {
                kind: PivotKind::Primary,
                row: a,
                col: p,
                value: v.clone(),
                diagonal: r,
                partner: None,
            });
            primary_cols.insert(p);
            // Row p of this pivot's factor reads row a after the column
            // operations of the pivots to its left.
            let inv = v.inverse()?;
            let mut e = NovikovMatrix::identity(m);
            for (l, x) in work.row(a) {
                if l > p {
                    e.set(p, l, -(x * &inv));
                }
            }
            work = work.mul(&e);
            t = t.mul(&e);
        }
        transforms.push(t.clone());
    }
    current = conjugate(&current, &t)?;
    matrices.push(current);
    Ok(RcaHistory {
        complex: c.clone(),
        matrices,
        transforms,
        marks,
    })
}

/// Whether both engines mark the same primary pivots (position, value and
/// diagonal).
pub fn pivots_agree(s: &SweepHistory, rc: &RcaHistory) -> bool {
    let key = |k: &PivotMark| (k.diagonal, k.col, k.row, k.value.clone());
    let mut a: Vec<_> = s.primaries().map(key).collect();
    let mut b: Vec<_> = rc.marks().iter().map(key).collect();
    a.sort_by_key(|x| (x.0, x.1, x.2));
    b.sort_by_key(|x| (x.0, x.1, x.2));
    a == b
}

/// One changed incidence coefficient `N(h^col, h^row)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceUpdate {
    pub col: usize,
    pub row: usize,
    pub old: Scalar,
    pub new: Scalar,
}

/// Which case rule governed a cancellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseRule {
    /// Saddle–sink pair with binomial pivot: nothing changes.
    SinkBinomial,
    /// Saddle–sink pair with monomial pivot; `partner` is the other sink.
    SinkMonomial { partner: Option<usize> },
    /// Source–saddle pair with binomial pivot: nothing changes.
    SourceBinomial,
    /// Source–saddle pair with monomial pivot; `partner` is the other source.
    SourceMonomial { partner: Option<usize> },
}

/// Cancellation of generator `col` (index `index`) against `row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationEvent {
    pub step: usize,
    pub col: usize,
    pub row: usize,
    pub index: u8,
    pub pivot: Scalar,
    pub rule: CaseRule,
    pub updates: Vec<IncidenceUpdate>,
    /// Flow lines with an empty limit set in the cover; no matrix data.
    pub annotations: Vec<String>,
}

impl CancellationEvent {
    /// The spectral differential `d^r_p : E^r_p → E^r_{p−r}` this event
    /// realizes, as `(r, p, p − r)`.
    pub fn differential(&self) -> (usize, usize, usize) {
        (self.step, self.col - 1, self.row - 1)
    }
}

/// The flow `f^r`: generators still alive and their Novikov matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowState {
    pub step: usize,
    pub survivors: Vec<usize>,
    pub partition: IndexPartition,
    /// Submatrix of `Δ̃^r` on `survivors`, renumbered.
    pub reduced: NovikovMatrix,
    /// Cancellations performed at this step (pivots on diagonal `step`).
    pub events: Vec<CancellationEvent>,
}

impl FlowState {
    /// `N(h^j, h^i; f^r)` in original numbering, `None` if either generator
    /// has been cancelled.
    pub fn incidence(&self, j: usize, i: usize) -> Option<Scalar> {
        let a = self.survivors.iter().position(|&x| x == i)?;
        let b = self.survivors.iter().position(|&x| x == j)?;
        Some(self.reduced.value(a + 1, b + 1))
    }
}

/// Disagreement between the case-rule recomputation and the conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditNote {
    pub step: usize,
    pub detail: String,
}

impl fmt::Display for AuditNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.detail)
    }
}

/// Flow states `f^1 ..= f^m` and the audit outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowFamily {
    pub states: Vec<FlowState>,
    pub audit: Vec<AuditNote>,
}

impl FlowFamily {
    pub fn events(&self) -> impl Iterator<Item = &CancellationEvent> + '_ {
        self.states.iter().flat_map(|s| s.events.iter())
    }

    pub fn last(&self) -> &FlowState {
        self.states.last().expect("at least one flow state")
    }

    /// `N(h^j, h^i; f^r)`, `None` if either generator is gone by step `r`.
    pub fn incidence(&self, r: usize, j: usize, i: usize) -> Option<Scalar> {
        self.states.get(r.checked_sub(1)?)?.incidence(j, i)
    }
}

fn exponent_gap(pivot: &Scalar, partner: &Scalar) -> Option<i64> {
    match (pivot.classify(), partner.classify()) {
        (
            ScalarClass::Monomial { sign: s, exp: l },
            ScalarClass::Monomial { sign: s2, exp: l2 },
        ) if s2 == s.flip() => Some(l2 - l),
        _ => None,
    }
}

fn t_power(e: i64) -> Scalar {
    Scalar::term(e, 1)
}

struct StepAudit {
    events: Vec<CancellationEvent>,
    notes: Vec<AuditNote>,
}

/// Applies the case rules for the pivots on diagonal `r` of `Δ̃^r`.
fn audit_step(rc: &RcaHistory, r: usize) -> StepAudit {
    let c = rc.complex();
    let mut w = rc.matrix(r).clone();
    let mut alive: BTreeSet<usize> = rc.survivors(r).into_iter().collect();
    let mut events = Vec::new();
    let mut notes = Vec::new();
    let note =
        |notes: &mut Vec<AuditNote>, detail: String| notes.push(AuditNote { step: r, detail });

    for mark in rc.marks_on(r) {
        let (a, p) = (mark.row, mark.col);
        let k = c.partition().index(p);
        let pivot = w.value(a, p);
        if pivot != mark.value {
            note(
                &mut notes,
                format!(
                    "pivot ({a},{p}) is {} after earlier cancellations, marked {}",
                    pivot, mark.value
                ),
            );
        }
        alive.remove(&a);
        alive.remove(&p);
        let binomial = matches!(pivot.classify(), ScalarClass::Binomial { .. });
        let mut updates = Vec::new();
        let mut annotations = Vec::new();
        // Other entries in the pivot column (k = 1) or pivot row (k = 2).
        let others: Vec<(usize, Scalar)> = if k == 1 {
            w.column(p)
                .filter(|(i, _)| alive.contains(i))
                .map(|(i, v)| (i, v.clone()))
                .collect()
        } else {
            w.row(a)
                .filter(|(j, _)| alive.contains(j))
                .map(|(j, v)| (j, v.clone()))
                .collect()
        };
        let rule = match (k, binomial) {
            (1, true) => {
                for (j, _) in w.row(a).filter(|(j, _)| alive.contains(j)) {
                    annotations.push(format!(
                        "flow lines from {} into {} lose their ω-limit set",
                        c.label(j),
                        c.label(a)
                    ));
                }
                CaseRule::SinkBinomial
            }
            (2, true) => {
                for (i, _) in w.column(p).filter(|(i, _)| alive.contains(i)) {
                    annotations.push(format!(
                        "flow lines from {} into {} lose their α-limit set",
                        c.label(p),
                        c.label(i)
                    ));
                }
                CaseRule::SourceBinomial
            }
            (1, false) | (2, false) => {
                let partner = match others.as_slice() {
                    [] => None,
                    [(x, v)] => match exponent_gap(&pivot, v) {
                        Some(gap) => {
                            let shift = t_power(gap);
                            if k == 1 {
                                let i0 = *x;
                                let row: Vec<(usize, Scalar)> = w
                                    .row(a)
                                    .filter(|(j, _)| alive.contains(j))
                                    .map(|(j, v)| (j, v.clone()))
                                    .collect();
                                for (j, daj) in row {
                                    let old = w.value(i0, j);
                                    let new = &old + &daj * &shift;
                                    updates.push(IncidenceUpdate {
                                        col: j,
                                        row: i0,
                                        old,
                                        new: new.clone(),
                                    });
                                    w.set(i0, j, new);
                                }
                            } else {
                                let j0 = *x;
                                let col: Vec<(usize, Scalar)> = w
                                    .column(p)
                                    .filter(|(i, _)| alive.contains(i))
                                    .map(|(i, v)| (i, v.clone()))
                                    .collect();
                                for (i, dip) in col {
                                    let old = w.value(i, j0);
                                    let new = &old + &dip * &shift;
                                    updates.push(IncidenceUpdate {
                                        col: j0,
                                        row: i,
                                        old,
                                        new: new.clone(),
                                    });
                                    w.set(i, j0, new);
                                }
                            }
                            Some(*x)
                        }
                        None => {
                            note(&mut notes, format!(
                                "pivot ({a},{p}) = {pivot} and partner entry {v} are not opposite-sign monomials"
                            ));
                            Some(*x)
                        }
                    },
                    _ => {
                        note(
                            &mut notes,
                            format!(
                                "pivot ({a},{p}) has {} further entries in its {}",
                                others.len(),
                                if k == 1 { "column" } else { "row" }
                            ),
                        );
                        None
                    }
                };
                if k == 1 {
                    CaseRule::SinkMonomial { partner }
                } else {
                    CaseRule::SourceMonomial { partner }
                }
            }
            _ => {
                note(
                    &mut notes,
                    format!("pivot ({a},{p}) sits in a column of index {k}"),
                );
                CaseRule::SinkBinomial
            }
        };
        if binomial && !others.is_empty() {
            note(
                &mut notes,
                format!(
                    "binomial pivot ({a},{p}) shares its {} with other entries",
                    if k == 1 { "column" } else { "row" }
                ),
            );
        }
        updates.retain(|u| u.old != u.new);
        events.push(CancellationEvent {
            step: r,
            col: p,
            row: a,
            index: k,
            pivot,
            rule,
            updates,
            annotations,
        });
    }

    if r < rc.m() {
        let next = rc.matrix(r + 1);
        let keep = rc.survivors(r + 1);
        for &i in &keep {
            for &j in &keep {
                let (x, y) = (w.value(i, j), next.value(i, j));
                if x != y {
                    note(
                        &mut notes,
                        format!(
                            "N({},{}): case rules give {x}, conjugation gives {y}",
                            c.label(j),
                            c.label(i)
                        ),
                    );
                }
            }
        }
    }
    StepAudit { events, notes }
}

/// Builds the flow family `f^1 ..= f^m`, revalidating every reduced matrix.
pub fn flow_family(rc: &RcaHistory) -> Result<FlowFamily> {
    let c = rc.complex();
    let mut states = Vec::new();
    let mut audit = Vec::new();
    for r in 1..=rc.m() {
        let survivors = rc.survivors(r);
        let partition =
            IndexPartition::new(survivors.iter().map(|&j| c.partition().index(j)).collect())?;
        let reduced = rc.matrix(r).submatrix(&survivors);
        let report = validate_matrix(&reduced, &partition);
        if !report.admissible() || !reduced.is_strictly_upper() {
            return Err(Error::ReducedMatrixInvalid(format!(
                "flow f^{r} on {survivors:?}: {}",
                report.problems().join("; ")
            )));
        }
        let step = audit_step(rc, r);
        audit.extend(step.notes);
        states.push(FlowState {
            step: r,
            survivors,
            partition,
            reduced,
            events: step.events,
        });
    }
    Ok(FlowFamily { states, audit })
}

/// Orbit stability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Attractor,
    Repeller,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Attractor => "attractor",
            Stability::Repeller => "repeller",
        })
    }
}

/// A periodic orbit born from a binomial pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicOrbit {
    /// First flow of the family in which the orbit exists.
    pub born_at_step: usize,
    /// Crossings of the regular level.
    pub period: u64,
    pub stability: Stability,
    pub row: usize,
    pub col: usize,
    pub pivot: Scalar,
}

/// One orbit per binomial cancellation.
pub fn detect_orbits(states: &[FlowState], partition: &IndexPartition) -> Vec<PeriodicOrbit> {
    states
        .iter()
        .flat_map(|s| s.events.iter())
        .filter_map(|e| match e.pivot.classify() {
            ScalarClass::Binomial { plus, minus } => Some(PeriodicOrbit {
                born_at_step: e.step + 1,
                period: plus.abs_diff(minus),
                stability: if partition.index(e.row) == 0 {
                    Stability::Attractor
                } else {
                    Stability::Repeller
                },
                row: e.row,
                col: e.col,
                pivot: e.pivot.clone(),
            }),
            _ => None,
        })
        .collect()
}

/// Events as `(r, p, p − r)` triples, sorted.
pub fn event_differentials(f: &FlowFamily) -> Vec<(usize, usize, usize)> {
    let mut v: Vec<_> = f.events().map(CancellationEvent::differential).collect();
    v.sort_unstable();
    v
}

/// Whether the cancellation events are exactly the nonzero differentials of
/// the spectral sequence.
pub fn events_match_differentials(f: &FlowFamily, seq: &SpectralSequence) -> bool {
    let mut d: Vec<_> = seq
        .nonzero_differentials()
        .into_iter()
        .map(|(r, p, q, _)| (r, p, q))
        .collect();
    d.sort_unstable();
    d == event_differentials(f)
}

//! Spectral sequence of the finest filtration, read off a sweep.
//!
//! `E^r_p` is zero or free of rank one on `σ^{p+1,r}`; `d^r_p : E^r_p → E^r_{p−r}`
//! is multiplication by `Δ^r_{p−r+1,p+1}`. Pages run for `r = 1..=m`; a
//! differential has degree `−r` in `p`, so nothing changes after page `m`.

use std::fmt;

use crate::complex::{FilteredComplex, IndexPartition, NovikovMatrix};
use crate::error::{Error, Result};
use crate::sssa::SweepHistory;
use crate::Scalar;

/// One `σ^{j,ζ}` in the generator list of `Z^r_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleGenerator {
    pub col: usize,
    /// Step `ζ` of the chain.
    pub step: usize,
    /// `μ^{j,ζ}`: whether the chain lies in `Z^r_p`.
    pub mu: bool,
    /// Coefficients of `σ^{j,ζ}` in the original generators.
    pub chain: Vec<(usize, Scalar)>,
}

/// Generators of `Z^r_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleModule {
    pub r: usize,
    pub p: usize,
    pub generators: Vec<CycleGenerator>,
}

impl CycleModule {
    /// Generators with `μ = 1`.
    pub fn active(&self) -> impl Iterator<Item = &CycleGenerator> + '_ {
        self.generators.iter().filter(|g| g.mu)
    }
}

/// `μ^{j,·}` at page `r`, position `p`: zero exactly when column `j` has a
/// primary pivot strictly below row `p − r + 1`.
pub fn mu(h: &SweepHistory, r: usize, p: usize, j: usize) -> bool {
    let threshold = p as i64 - r as i64 + 1;
    match h.primary_in_column(j) {
        Some(k) => k.row as i64 <= threshold,
        None => true,
    }
}

/// Generator list `[μ^{p+1,r}σ^{p+1,r}, μ^{p,r−1}σ^{p,r−1}, …]` down to the
/// first column of the same Morse index.
pub fn cycle_generators(h: &SweepHistory, r: usize, p: usize) -> Result<CycleModule> {
    let m = h.m();
    if p + 1 > m || r == 0 {
        return Err(Error::IndexOutOfRange(format!(
            "Z^{r}_{p} on a complex with {m} generators"
        )));
    }
    let kappa = h.complex().partition().kappa(p + 1);
    let generators = (kappa..=p + 1)
        .rev()
        .map(|j| {
            let step = (r as i64 - (p + 1 - j) as i64).max(1) as usize;
            CycleGenerator {
                col: j,
                step,
                mu: mu(h, r, p, j),
                chain: h.chains().sigma(j, step),
            }
        })
        .collect();
    Ok(CycleModule { r, p, generators })
}

/// Status of one module `E^r_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleStatus {
    Zero,
    /// Free of rank one on `σ^{col, step}`.
    FreeRankOne {
        col: usize,
        step: usize,
    },
}

impl ModuleStatus {
    pub fn is_free(&self) -> bool {
        matches!(self, ModuleStatus::FreeRankOne { .. })
    }
}

/// Whether row `p + 1` reaches an active column on a diagonal below `r`:
/// some `j ∈ p+2..=p+r` with `μ = 1` at step `r − 1` and
/// `Δ^{j−p−1}_{p+1,j} ≠ 0`.
fn row_hits_active_column(h: &SweepHistory, r: usize, p: usize) -> bool {
    let m = h.m();
    let i = p + 1;
    (i + 1..=(p + r).min(m)).any(|j| {
        let d = j - i;
        h.matrix(d).is_nonzero(i, j) && mu(h, d, j - 1, j)
    })
}

/// `E^r_p`: free on `σ^{p+1,r}` unless column `p + 1` was cancelled as a
/// source on an earlier page or row `p + 1` was hit as a target.
pub fn page_module(h: &SweepHistory, r: usize, p: usize) -> ModuleStatus {
    let c = p + 1;
    let killed_as_source = h.primary_in_column(c).is_some_and(|k| k.diagonal < r);
    if killed_as_source || row_hits_active_column(h, r, p) {
        ModuleStatus::Zero
    } else {
        ModuleStatus::FreeRankOne { col: c, step: r }
    }
}

/// `d^r_p = Δ^r_{p−r+1,p+1}`; undefined when either module is zero.
pub fn page_differential(h: &SweepHistory, r: usize, p: usize) -> Result<Scalar> {
    let undefined = Error::UndefinedDifferential { r, p };
    if p + 1 > h.m() || p < r {
        return Err(undefined);
    }
    if !page_module(h, r, p).is_free() || !page_module(h, r, p - r).is_free() {
        return Err(undefined);
    }
    Ok(h.matrix(r).value(p - r + 1, p + 1))
}

/// One position of one page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub r: usize,
    pub p: usize,
    /// Morse index of generator `p + 1`.
    pub index: u8,
    pub status: ModuleStatus,
    /// Value of `d^r_p` when defined (zero allowed).
    pub differential: Option<Scalar>,
}

impl PageEntry {
    /// Nonzero outgoing differential, with its target position.
    pub fn nonzero_differential(&self) -> Option<(&Scalar, usize)> {
        self.differential
            .as_ref()
            .filter(|d| !d.is_zero())
            .map(|d| (d, self.p - self.r))
    }
}

/// All pages `E^1..E^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    m: usize,
    partition: IndexPartition,
    /// `pages[r − 1][p]`.
    pages: Vec<Vec<PageEntry>>,
}

impl SpectralSequence {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Page after which nothing changes.
    pub fn stabilization_step(&self) -> usize {
        self.pages.len()
    }

    pub fn page(&self, r: usize) -> &[PageEntry] {
        &self.pages[r.clamp(1, self.pages.len()) - 1]
    }

    pub fn entry(&self, r: usize, p: usize) -> &PageEntry {
        &self.page(r)[p]
    }

    /// `E^∞`.
    pub fn einfty(&self) -> &[PageEntry] {
        self.page(self.pages.len())
    }

    /// Number of free `E^∞_p` of each Morse index.
    pub fn einfty_ranks(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for e in self.einfty() {
            if e.status.is_free() {
                out[e.index as usize] += 1;
            }
        }
        out
    }

    /// Every nonzero differential as `(r, p, target, value)`, by page then `p`.
    pub fn nonzero_differentials(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.pages
            .iter()
            .flatten()
            .filter_map(|e| {
                e.nonzero_differential()
                    .map(|(d, tgt)| (e.r, e.p, tgt, d.clone()))
            })
            .collect()
    }

    pub fn partition(&self) -> &IndexPartition {
        &self.partition
    }
}

/// Builds every page and checks `E^{r+1}_p ≅ ker d^r_p / im d^r_{p+r}`.
pub fn compute_sequence(h: &SweepHistory) -> Result<SpectralSequence> {
    let m = h.m();
    let partition = h.complex().partition().clone();
    let mut pages: Vec<Vec<PageEntry>> = Vec::with_capacity(m);
    for r in 1..=m {
        let page: Vec<PageEntry> = (0..m)
            .map(|p| PageEntry {
                r,
                p,
                index: partition.index(p + 1),
                status: page_module(h, r, p),
                differential: page_differential(h, r, p).ok(),
            })
            .collect();
        pages.push(page);
    }
    for r in 1..m {
        let cur = &pages[r - 1];
        for p in 0..m {
            if let Some((d, _)) = cur[p].nonzero_differential() {
                if !d.classify().is_unit_form() {
                    return Err(Error::PageInconsistency(format!(
                        "d^{r}_{p} = {d} is not an isomorphism"
                    )));
                }
            }
            let outgoing = cur[p].nonzero_differential().is_some();
            let incoming = cur
                .get(p + r)
                .is_some_and(|e| e.nonzero_differential().is_some());
            let expect_free = cur[p].status.is_free() && !outgoing && !incoming;
            if expect_free != pages[r][p].status.is_free() {
                return Err(Error::PageInconsistency(format!(
                    "E^{}_{p} is {:?} but ker/im bookkeeping gives {}",
                    r + 1,
                    pages[r][p].status,
                    if expect_free { "free" } else { "zero" }
                )));
            }
        }
    }
    Ok(SpectralSequence {
        m,
        partition,
        pages,
    })
}

/// Novikov homology as free ranks and torsion summand counts per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDescription {
    pub ranks: [usize; 3],
    pub torsion: [usize; 3],
}

impl HomologyDescription {
    pub fn free(ranks: [usize; 3]) -> Self {
        Self {
            ranks,
            torsion: [0; 3],
        }
    }
}

impl fmt::Display for HomologyDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H_0 rank {}, H_1 rank {}, H_2 rank {}",
            self.ranks[0], self.ranks[1], self.ranks[2]
        )?;
        if self.torsion.iter().any(|&t| t > 0) {
            write!(f, " (torsion {:?})", self.torsion)?;
        }
        Ok(())
    }
}

/// `E^∞` matches the expected homology: same free rank in every degree and
/// no torsion (the pages are always free).
pub fn verify_convergence(seq: &SpectralSequence, expected: &HomologyDescription) -> bool {
    expected.torsion == [0; 3] && seq.einfty_ranks() == expected.ranks
}

/// Rank over the fraction field of the submatrix on the given 1-based rows
/// and columns, by fraction-free elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(a: &NovikovMatrix, rows: &[usize], cols: &[usize]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| a.value(i, j)).collect())
        .collect();
    let mut rank = 0;
    let ncols = cols.len();
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pv = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..ncols {
                m[i][k] = &pv * &m[i][k] - &f * &m[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

/// Novikov homology ranks computed from the ranks of the boundary blocks.
pub fn homology_ranks(c: &FilteredComplex) -> HomologyDescription {
    let p = c.partition();
    let cols = |k: u8| p.columns_of(k).collect::<Vec<_>>();
    let (j0, j1, j2) = (cols(0), cols(1), cols(2));
    let r1 = rank(c.matrix(), &j0, &j1);
    let r2 = rank(c.matrix(), &j1, &j2);
    HomologyDescription::free([j0.len() - r1, j1.len() - r1 - r2, j2.len() - r2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate_example, Template};
    use crate::sssa::run_sssa;

    fn history(t: Template) -> SweepHistory {
        run_sssa(&generate_example(t, &[]).unwrap()).unwrap()
    }

    #[test]
    fn torus_b_generators() {
        let h = history(Template::TorusB);
        let z = cycle_generators(&h, 1, 0).unwrap();
        assert_eq!(z.generators.len(), 1);
        assert!(z.generators[0].mu);
        let z = cycle_generators(&h, 3, 3).unwrap();
        assert_eq!(z.generators[0].col, 4);
        assert!(z.generators[0].mu);
        let z = cycle_generators(&h, 4, 3).unwrap();
        assert!(!z.generators[0].mu);
        assert!(cycle_generators(&h, 1, 8).is_err());
    }

    #[test]
    fn torus_b_pages() {
        let h = history(Template::TorusB);
        for p in 0..8 {
            assert!(page_module(&h, 1, p).is_free());
        }
        assert_eq!(page_module(&h, 2, 2), ModuleStatus::Zero);
        assert_eq!(page_module(&h, 4, 0), ModuleStatus::Zero);
        assert_eq!(
            page_differential(&h, 3, 3).unwrap(),
            "t - 1".parse().unwrap()
        );
        let seq = compute_sequence(&h).unwrap();
        let d: Vec<(usize, usize, usize)> = seq
            .nonzero_differentials()
            .into_iter()
            .map(|(r, p, q, _)| (r, p, q))
            .collect();
        assert_eq!(d, vec![(1, 2, 1), (2, 6, 4), (2, 7, 5), (3, 3, 0)]);
        assert_eq!(seq.einfty_ranks(), [0, 0, 0]);
    }

    #[test]
    fn torus_a_differentials() {
        let h = history(Template::TorusA);
        assert_eq!(
            page_differential(&h, 1, 6).unwrap(),
            "-t^2".parse().unwrap()
        );
        let seq = compute_sequence(&h).unwrap();
        let d: Vec<(usize, usize)> = seq
            .nonzero_differentials()
            .into_iter()
            .map(|(r, p, _, _)| (r, p))
            .collect();
        assert_eq!(d, vec![(1, 2), (1, 6), (3, 3), (3, 7)]);
        assert!(verify_convergence(
            &seq,
            &HomologyDescription::free([0, 0, 0])
        ));
        assert!(!verify_convergence(
            &seq,
            &HomologyDescription::free([0, 1, 0])
        ));
        assert_eq!(
            homology_ranks(h.complex()),
            HomologyDescription::free([0, 0, 0])
        );
    }

    #[test]
    fn zero_matrix_pages_are_constant() {
        let c = FilteredComplex::new(
            NovikovMatrix::zeros(5),
            IndexPartition::new(vec![0, 0, 1, 2, 2]).unwrap(),
        )
        .unwrap();
        let h = run_sssa(&c).unwrap();
        let seq = compute_sequence(&h).unwrap();
        for r in 1..=5 {
            assert!(seq.page(r).iter().all(|e| e.status.is_free()));
        }
        assert_eq!(seq.einfty_ranks(), [2, 1, 2]);
        assert!(verify_convergence(&seq, &homology_ranks(&c)));
        assert!(matches!(
            page_differential(&h, 1, 0),
            Err(Error::UndefinedDifferential { .. })
        ));
        assert_eq!(page_differential(&h, 1, 3).unwrap(), Scalar::zero());
    }

    #[test]
    fn row_condition_matches_row_primaries() {
        for t in [Template::TorusA, Template::TorusB, Template::Chained(2)] {
            let h = history(t);
            for r in 1..=h.m() {
                for p in 0..h.m() {
                    let by_mark = h.primary_in_row(p + 1).is_some_and(|k| k.diagonal < r);
                    assert_eq!(row_hits_active_column(&h, r, p), by_mark, "{t} r={r} p={p}");
                }
            }
        }
    }
}

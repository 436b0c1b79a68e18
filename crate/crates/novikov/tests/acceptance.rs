//! Acceptance criteria 1–7, one PASS/FAIL line each.
//!
//! Field-level oracles work at a generic point: every scalar is evaluated at
//! `t = a` modulo a large prime and ranks are taken over that finite field.
//! Ranks over Z((t)) ⊂ Q((t)) equal ranks over Q(t), which equal ranks at a
//! generic specialization; three points are used and must agree.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use novikov::cancellation::{detect_orbits, flow_family, run_rca, Stability};
use novikov::complex::{
    generate_corpus, generate_example, FilteredComplex, NovikovMatrix, Template,
};
use novikov::spectral::{compute_sequence, cycle_generators};
use novikov::sssa::{
    check_block_invariants, check_block_isolation, check_final_matrix, run_sssa, PivotKind,
    SweepHistory,
};
use novikov::{Poly, Scalar};

// ---------------------------------------------------------------- oracles

const PRIME: u64 = 2_147_483_647;
const POINTS: [u64; 3] = [123_457, 98_765_431, 1_000_003];

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn invm(a: u64) -> u64 {
    powm(a, PRIME - 2)
}

fn eval_poly(p: &Poly, a: u64) -> u64 {
    let ainv = invm(a);
    p.terms().fold(0, |acc, (e, c)| {
        let c = c.mod_floor(&BigInt::from(PRIME)).to_u64().unwrap();
        let x = if e >= 0 {
            powm(a, e as u64)
        } else {
            powm(ainv, e.unsigned_abs())
        };
        (acc + mulm(c, x)) % PRIME
    })
}

fn eval(s: &Scalar, a: u64) -> u64 {
    let d = eval_poly(s.denominator(), a);
    assert_ne!(d, 0, "evaluation point hits a pole");
    mulm(eval_poly(s.numerator(), a), invm(d))
}

#[allow(clippy::needless_range_loop)]
fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = invm(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = mulm(*x, inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for k in 0..ncols {
                    let sub = mulm(f, rows[rank][k]);
                    rows[i][k] = (rows[i][k] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{x : M x = 0}` for an `nrows × ncols` matrix.
#[allow(clippy::needless_range_loop)]
fn nullspace(m: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = invm(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = mulm(*x, inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for k in 0..ncols {
                    let sub = mulm(f, rows[rank][k]);
                    rows[i][k] = (rows[i][k] + PRIME - sub) % PRIME;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (PRIME - rows[r][free]) % PRIME;
            }
            v
        })
        .collect()
}

struct Specialized {
    m: usize,
    d: Vec<Vec<u64>>,
}

impl Specialized {
    fn new(a: &NovikovMatrix, point: u64) -> Self {
        let m = a.m();
        let mut d = vec![vec![0; m]; m];
        for ((i, j), v) in a.entries() {
            d[i - 1][j - 1] = eval(v, point);
        }
        Self { m, d }
    }

    /// `Z^s_q = {c ∈ F_q : ∂c ∈ F_{q−s}}` as vectors of length `m`, where
    /// `F_q` is spanned by generators `1..=q+1`. Chains of all degrees are
    /// included; for the finest filtration the quotient in [`Self::page_dim`]
    /// only sees the degree of generator `q + 1`.
    fn z(&self, q: isize, s: isize) -> Vec<Vec<u64>> {
        self.z_in(q, s, 0)
    }

    /// [`Self::z`] restricted to chains on generators `from + 1..` (0-based
    /// offset `from`), i.e. a single Morse degree when `from = κ − 1`.
    fn z_in(&self, q: isize, s: isize, from: usize) -> Vec<Vec<u64>> {
        if q < 0 {
            return Vec::new();
        }
        let support = (q as usize).min(self.m - 1) + 1;
        if from >= support {
            return Vec::new();
        }
        let width = support - from;
        let first_row = (q - s + 1).max(0) as usize;
        let block: Vec<Vec<u64>> = (first_row..self.m)
            .map(|i| self.d[i][from..support].to_vec())
            .collect();
        let basis = if block.is_empty() {
            (0..width)
                .map(|k| {
                    let mut v = vec![0; width];
                    v[k] = 1;
                    v
                })
                .collect()
        } else {
            nullspace(&block, width)
        };
        basis
            .into_iter()
            .map(|v| {
                let mut full = vec![0; self.m];
                full[from..support].copy_from_slice(&v);
                full
            })
            .collect()
    }

    fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.m)
            .map(|i| (0..self.m).fold(0, |acc, k| (acc + mulm(self.d[i][k], v[k])) % PRIME))
            .collect()
    }

    /// `dim E^r_p = dim Z^r_p − dim(Z^{r−1}_{p−1} + ∂Z^{r−1}_{p+r−1})`.
    fn page_dim(&self, r: usize, p: usize) -> usize {
        let (r, p) = (r as isize, p as isize);
        let z = self.z(p, r).len();
        let mut span = self.z(p - 1, r - 1);
        span.extend(self.z(p + r - 1, r - 1).iter().map(|v| self.apply(v)));
        let b = if span.is_empty() { 0 } else { rank_mod(span) };
        z - b
    }

    fn rank_block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> usize {
        let block: Vec<Vec<u64>> = rows
            .map(|i| self.d[i - 1][cols.start - 1..cols.end - 1].to_vec())
            .collect();
        if block.is_empty() || cols.is_empty() {
            0
        } else {
            rank_mod(block)
        }
    }
}

/// Same value at every evaluation point, or `None`.
fn agreed<T: PartialEq + Copy>(f: impl Fn(u64) -> T) -> Option<T> {
    let v = f(POINTS[0]);
    POINTS[1..].iter().all(|&a| f(a) == v).then_some(v)
}

/// Novikov Betti numbers from ranks of the two nonzero blocks.
fn homology_oracle(c: &FilteredComplex) -> Option<[usize; 3]> {
    let p = c.partition();
    agreed(|a| {
        let s = Specialized::new(c.matrix(), a);
        let r1 = s.rank_block(p.columns_of(0), p.columns_of(1));
        let r2 = s.rank_block(p.columns_of(1), p.columns_of(2));
        [p.count(0) - r1, p.count(1) - r1 - r2, p.count(2) - r2]
    })
}

/// Monomial `±t^a` or binomial `t^a − t^b`, with no denominator.
fn unit_form(s: &Scalar) -> bool {
    if !s.is_polynomial() {
        return false;
    }
    let coeffs: Vec<i64> = s
        .numerator()
        .terms()
        .map(|(_, c)| c.to_i64().unwrap_or(0))
        .collect();
    matches!(coeffs.as_slice(), [1] | [-1] | [1, -1] | [-1, 1])
}

/// Admissible shape of one index-1 line: null, one binomial, one monomial,
/// or two monomials of opposite sign.
fn admissible_line(vals: &[&Scalar]) -> bool {
    let sign = |s: &Scalar| {
        let t: Vec<(i64, BigInt)> = s.numerator().terms().map(|(e, c)| (e, c.clone())).collect();
        (s.is_polynomial() && t.len() == 1).then(|| t[0].1.to_i64().unwrap_or(0))
    };
    match vals {
        [] => true,
        [x] => unit_form(x),
        [x, y] => matches!((sign(x), sign(y)), (Some(a), Some(b)) if a * b == -1),
        _ => false,
    }
}

/// `Δ c` computed exactly.
fn boundary(a: &NovikovMatrix, chain: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    (1..=a.m())
        .filter_map(|i| {
            let s = chain.iter().fold(Scalar::zero(), |acc, (k, c)| {
                acc + a.value(i, *k) * c.clone()
            });
            (!s.is_zero()).then_some((i, s))
        })
        .collect()
}

// ---------------------------------------------------------------- harness

struct Criterion {
    number: u8,
    title: &'static str,
    failures: Vec<String>,
    /// Size of the run, printed under the verdict.
    info: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Criterion {
    fn run(
        number: u8,
        title: &'static str,
        limit: Option<Duration>,
        f: impl FnOnce(&mut Vec<String>, &mut String),
    ) -> Self {
        let start = Instant::now();
        let mut failures = Vec::new();
        let mut info = String::new();
        f(&mut failures, &mut info);
        let elapsed = start.elapsed();
        if let Some(l) = limit {
            if elapsed >= l {
                failures.push(format!("runtime {elapsed:.2?} exceeds {l:?}"));
            }
        }
        let c = Self {
            number,
            title,
            failures,
            info,
            elapsed,
            limit,
        };
        c.print();
        c
    }

    fn print(&self) {
        let verdict = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let limit = self
            .limit
            .map(|l| format!(" / limit {l:?}"))
            .unwrap_or_default();
        println!(
            "{verdict} criterion {}: {} [{:.2?}{limit}]",
            self.number, self.title, self.elapsed
        );
        if !self.info.is_empty() {
            println!("    {}", self.info);
        }
        for f in &self.failures {
            println!("    - {f}");
        }
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn sc(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn div(a: &str, b: &str) -> Scalar {
    sc(a).checked_div(&sc(b)).unwrap()
}

/// Torus example B incidence value the reconstruction cannot reproduce (see
/// the ledger): the printed zero conflicts with the σ^{5,5} caption.
const KNOWN_CONFLICT: &str = "N(h5_1, h1_0; f^2) = 0";

fn corpus() -> Vec<FilteredComplex> {
    generate_corpus(2024, 240, 14).unwrap()
}

fn small_corpus() -> Vec<FilteredComplex> {
    let mut v = generate_corpus(606, 200, 6).unwrap();
    v.extend(corpus().into_iter().filter(|c| c.m() <= 6));
    v
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Criterion {
    Criterion::run(
        1,
        "torus A chain captions",
        Some(Duration::from_secs(1)),
        |f, _| {
            let h = run_sssa(&generate_example(Template::TorusA, &[]).unwrap()).unwrap();
            let ch = h.chains();
            let cases = [
                (
                    "σ^{4,3}",
                    ch.sigma(4, 3),
                    vec![(3, div("1", "t - 1")), (4, sc("1"))],
                ),
                (
                    "σ^{5,4}",
                    ch.sigma(5, 4),
                    vec![(3, div("1", "t - 1")), (5, sc("1"))],
                ),
                (
                    "σ^{8,3}",
                    ch.sigma(8, 3),
                    vec![(7, sc("t^-1")), (8, sc("1"))],
                ),
                (
                    "σ^{6,5}",
                    ch.sigma(6, 5),
                    vec![(3, div("t", "t - 1")), (6, sc("1"))],
                ),
            ];
            for (name, got, want) in cases {
                check(
                    f,
                    got == want,
                    format!("{name} = {got:?}, expected {want:?}"),
                );
            }
            // σ^{5,5} = h5 − t h4 and σ^{6,6} = h6 − h4: the operation recorded at
            // that step, σ^{j,ζ} = σ^{j,ζ−1} + c σ^{u,ζ−1}.
            for (j, step, u, c) in [(5, 5, 4, "-t"), (6, 6, 4, "-1")] {
                let got = ch
                    .update(j, step)
                    .map(|x| (x.partner, x.coefficient.clone()));
                check(
                    f,
                    got == Some((u, sc(c))),
                    format!("σ^{{{j},{step}}}: update {got:?}, expected ({u}, {c})"),
                );
                let at_step = ch
                    .updates()
                    .iter()
                    .filter(|x| x.col == j && x.step == step)
                    .count();
                check(
                    f,
                    at_step == 1,
                    format!("σ^{{{j},{step}}}: {at_step} updates"),
                );
            }
        },
    )
}

fn criterion_2() -> Criterion {
    Criterion::run(
        2,
        "torus A series entry and polynomial final matrix",
        None,
        |f, _| {
            let h = run_sssa(&generate_example(Template::TorusA, &[]).unwrap()).unwrap();
            let x = h.matrix(3).value(3, 7);
            check(
                f,
                !x.is_zero() && !x.denominator().is_one(),
                format!("Δ³_{{3,7}} = {x:?}"),
            );
            // The reduced denominator must not divide the numerator.
            check(
                f,
                x.numerator().div_exact(x.denominator()).is_none(),
                "Δ³_{3,7} reduces to a polynomial",
            );
            for ((i, j), v) in h.final_matrix().entries() {
                check(
                    f,
                    v.denominator().is_one(),
                    format!("final entry ({i},{j}) = {v} is a series"),
                );
            }
        },
    )
}

fn criterion_3() -> Criterion {
    Criterion::run(3, "torus A differentials and E^∞ = 0", None, |f, _| {
        let c = generate_example(Template::TorusA, &[]).unwrap();
        let seq = compute_sequence(&run_sssa(&c).unwrap()).unwrap();
        let got: Vec<(usize, usize)> = seq
            .nonzero_differentials()
            .iter()
            .map(|d| (d.0, d.1))
            .collect();
        check(
            f,
            got == [(1, 2), (1, 6), (3, 3), (3, 7)],
            format!("differentials {got:?}"),
        );
        check(
            f,
            seq.einfty().iter().all(|e| !e.status.is_free()),
            "E^∞ ≠ 0",
        );
        let hom = homology_oracle(&c);
        check(
            f,
            hom == Some([0, 0, 0]),
            format!("homology oracle {hom:?}"),
        );
        check(
            f,
            Some(seq.einfty_ranks()) == hom,
            "E^∞ ranks differ from homology",
        );
    })
}

fn criterion_4() -> Criterion {
    Criterion::run(
        4,
        "torus B pivots, chains, incidences, orbits",
        Some(Duration::from_secs(1)),
        |f, _| {
            let c = generate_example(Template::TorusB, &[]).unwrap();
            let h = run_sssa(&c).unwrap();
            let prim: Vec<(usize, usize, usize)> =
                h.primaries().map(|k| (k.row, k.col, k.diagonal)).collect();
            check(
                f,
                prim == [(2, 3, 1), (5, 7, 2), (6, 8, 2), (1, 4, 3)],
                format!("primaries {prim:?}"),
            );
            check(
                f,
                h.primary_in_column(4).map(|k| k.value.clone()) == Some(sc("t - 1")),
                "Δ³_{1,4} ≠ t − 1",
            );
            let ch = h.chains();
            let cases = [
                ("σ^{5,4}", ch.sigma(5, 4), vec![(3, sc("-1")), (5, sc("1"))]),
                (
                    "σ^{5,5}",
                    ch.sigma(5, 5),
                    vec![(3, sc("-1")), (4, sc("-1")), (5, sc("1"))],
                ),
                ("σ^{6,5}", ch.sigma(6, 5), vec![(3, sc("-t")), (6, sc("1"))]),
                (
                    "σ^{6,6}",
                    ch.sigma(6, 6),
                    vec![(3, sc("-t")), (4, sc("-t - 1")), (6, sc("1"))],
                ),
            ];
            for (name, got, want) in cases {
                check(
                    f,
                    got == want,
                    format!("{name} = {got:?}, expected {want:?}"),
                );
            }
            let rc = run_rca(&c).unwrap();
            let fam = flow_family(&rc).unwrap();
            for (r, j, i, want, name) in [
                (2, 5, 1, "0", KNOWN_CONFLICT),
                (2, 6, 1, "t^2 - 1", "N(h6_1, h1_0; f^2) = t^2 - 1"),
                (3, 4, 1, "t - 1", "N(h4_1, h1_0; f^3) = t - 1"),
            ] {
                let got = fam.incidence(r, j, i);
                check(
                    f,
                    got == Some(sc(want)),
                    format!("{name}: got {}", got.map_or("-".into(), |g| g.to_string())),
                );
            }
            let orbits = detect_orbits(&fam.states, c.partition());
            let table: Vec<(Stability, usize, usize, u64)> = orbits
                .iter()
                .map(|o| (o.stability, o.row, o.col, o.period))
                .collect();
            check(
                f,
                table
                    == [
                        (Stability::Repeller, 6, 8, 1),
                        (Stability::Attractor, 1, 4, 1),
                    ],
                format!("orbits {table:?}"),
            );
            check(
                f,
                fam.last().survivors.is_empty(),
                "final flow has critical points",
            );
        },
    )
}

fn criterion_5(corpus: &[FilteredComplex]) -> Criterion {
    let title = "property suite over the generated corpus";
    Criterion::run(5, title, Some(Duration::from_secs(60)), |f, info| {
        check(
            f,
            corpus.len() >= 200,
            format!("only {} complexes", corpus.len()),
        );
        check(f, corpus.iter().all(|c| c.m() <= 14), "complex with m > 14");
        let mut marks = 0;
        for (n, c) in corpus.iter().enumerate() {
            let h = run_sssa(c).unwrap();
            marks += h.marks().len();
            let tag = |s: &str| format!("complex {n} (m = {}): {s}", c.m());
            // (a) pivot values
            for k in h.marks() {
                check(
                    f,
                    unit_form(&k.value),
                    tag(&format!("{} ({},{}) = {}", k.kind, k.row, k.col, k.value)),
                );
            }
            // (b) T^r Δ^{r+1} = Δ^r T^r
            for r in 1..h.len() {
                let t = h.basis_change(r);
                check(
                    f,
                    t.mul(h.matrix(r + 1)) == h.matrix(r).mul(&t),
                    tag(&format!("conjugation at step {r}")),
                );
            }
            // (c) first-block columns at every step, then the full checker
            let p = c.partition();
            for r in 1..=h.len() {
                let a = h.matrix(r);
                for j in p.columns_of(1) {
                    let vals: Vec<&Scalar> = a.column(j).map(|(_, v)| v).collect();
                    check(
                        f,
                        admissible_line(&vals),
                        tag(&format!("Δ^{r} column {j} shape")),
                    );
                }
            }
            let rep = check_block_invariants(&h);
            for v in &rep.violations {
                f.push(tag(&v.to_string()));
            }
            // (d) final matrix
            let fin = h.final_matrix();
            for j in 1..=c.m() {
                let col_null = fin.column(j).next().is_none();
                let row_null = fin.row(j).next().is_none();
                check(
                    f,
                    col_null || row_null,
                    tag(&format!("Δ^L column {j} and row {j} both nonnull")),
                );
            }
            for ((i, j), v) in fin.entries() {
                check(f, unit_form(v), tag(&format!("Δ^L entry ({i},{j}) = {v}")));
            }
            check(
                f,
                check_final_matrix(fin).is_clean(),
                tag("final-matrix checker"),
            );
            // (e) pivot coincidence
            let rc = run_rca(c).unwrap();
            let key = |k: &novikov::sssa::PivotMark| (k.row, k.col, k.diagonal, k.value.clone());
            let s_set: BTreeSet<_> = h
                .primaries()
                .map(key)
                .map(|(a, b, d, v)| (a, b, d, v.to_string()))
                .collect();
            let r_set: BTreeSet<_> = rc
                .marks()
                .iter()
                .map(key)
                .map(|(a, b, d, v)| (a, b, d, v.to_string()))
                .collect();
            check(
                f,
                s_set == r_set,
                tag(&format!("pivots differ: {s_set:?} vs {r_set:?}")),
            );
            // (f) block isolation
            let iso = check_block_isolation(&h).unwrap();
            check(f, iso.is_clean(), tag("block isolation"));
        }
        *info = format!("{} complexes, {marks} marks", corpus.len());
    })
}

fn criterion_6(small: &[FilteredComplex]) -> Criterion {
    let title = "cycle generators and pages against definition-level oracles (m ≤ 6)";
    Criterion::run(6, title, None, |f, info| {
        let mut modules = 0;
        for (n, c) in small.iter().enumerate() {
            let tag = |s: String| format!("complex {n} (m = {}): {s}", c.m());
            let h: SweepHistory = run_sssa(c).unwrap();
            let seq = compute_sequence(&h).unwrap();
            let m = c.m();
            for r in 1..=m {
                for p in 0..m {
                    modules += 1;
                    let module = cycle_generators(&h, r, p).unwrap();
                    let active: Vec<_> = module.active().collect();
                    for g in &active {
                        let kappa = c.partition().kappa(p + 1);
                        let ok_support = g.chain.iter().all(|(k, _)| (kappa..=p + 1).contains(k));
                        let ok_boundary = boundary(c.matrix(), &g.chain)
                            .iter()
                            .all(|(i, _)| *i as isize <= p as isize - r as isize + 1);
                        check(
                            f,
                            ok_support && ok_boundary,
                            tag(format!("σ^{{{},{}}} ∉ Z^{r}_{p}", g.col, g.step)),
                        );
                    }
                    let dims = agreed(|a| {
                        let s = Specialized::new(c.matrix(), a);
                        let kappa = c.partition().kappa(p + 1);
                        let z = s.z_in(p as isize, r as isize, kappa - 1).len();
                        let vecs: Vec<Vec<u64>> = active
                            .iter()
                            .map(|g| {
                                let mut v = vec![0; m];
                                for (k, x) in &g.chain {
                                    v[k - 1] = eval(x, a);
                                }
                                v
                            })
                            .collect();
                        let gen_rank = if vecs.is_empty() { 0 } else { rank_mod(vecs) };
                        (z, gen_rank, s.page_dim(r, p))
                    });
                    let Some((z, gen_rank, e)) = dims else {
                        f.push(tag(format!("oracle unstable at ({r},{p})")));
                        continue;
                    };
                    check(
                        f,
                        z == gen_rank,
                        tag(format!(
                            "Z^{r}_{p}: oracle rank {z}, generators span {gen_rank}"
                        )),
                    );
                    let free = seq.entry(r, p).status.is_free();
                    check(
                        f,
                        e <= 1 && free == (e == 1),
                        tag(format!("E^{r}_{p}: oracle dim {e}, sweep free = {free}")),
                    );
                }
            }
            let hom = homology_oracle(c);
            check(
                f,
                hom == Some(seq.einfty_ranks()),
                tag(format!("E^∞ {:?} vs homology {hom:?}", seq.einfty_ranks())),
            );
        }
        *info = format!("{} complexes, {modules} modules", small.len());
    })
}

fn criterion_7(all: &[FilteredComplex]) -> Criterion {
    Criterion::run(
        7,
        "cancellation events equal nonzero differentials",
        None,
        |f, info| {
            let mut events = 0;
            for (n, c) in all.iter().enumerate() {
                let tag = |s: String| format!("complex {n} (m = {}): {s}", c.m());
                let h = run_sssa(c).unwrap();
                let seq = compute_sequence(&h).unwrap();
                let rc = run_rca(c).unwrap();
                let fam = flow_family(&rc).unwrap();
                let mut ev: Vec<(usize, usize, usize, String)> = fam
                    .events()
                    .map(|e| (e.step, e.col - 1, e.row - 1, e.pivot.to_string()))
                    .collect();
                let mut d: Vec<(usize, usize, usize, String)> = seq
                    .nonzero_differentials()
                    .into_iter()
                    .map(|(r, p, q, v)| (r, p, q, v.to_string()))
                    .collect();
                ev.sort();
                d.sort();
                events += ev.len();
                check(
                    f,
                    ev == d,
                    tag(format!("events {ev:?} vs differentials {d:?}")),
                );
                let pivots = rc.marks().len();
                let left = fam.last().survivors.len();
                check(
                    f,
                    left == c.m() - 2 * pivots,
                    tag(format!("{left} survivors, {pivots} pivots")),
                );
                check(
                    f,
                    fam.audit.is_empty(),
                    tag(format!("audit {:?}", fam.audit)),
                );
                check(
                    f,
                    h.marks()
                        .iter()
                        .filter(|k| k.kind == PivotKind::Primary)
                        .count()
                        == pivots,
                    tag("pivot count differs".into()),
                );
            }
            *info = format!("{} complexes, {events} events", all.len());
        },
    )
}

fn main() {
    let big = corpus();
    let small = small_corpus();
    let mut everything = big.clone();
    everything.extend(generate_corpus(606, 200, 6).unwrap());
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(&big),
        criterion_6(&small),
        criterion_7(&everything),
    ];
    let unexpected: Vec<String> = results
        .iter()
        .flat_map(|c| {
            c.failures
                .iter()
                .map(move |f| format!("criterion {}: {f}", c.number))
        })
        .filter(|f| !f.contains(KNOWN_CONFLICT))
        .collect();
    let documented = results
        .iter()
        .any(|c| c.failures.iter().any(|f| f.contains(KNOWN_CONFLICT)));
    if documented {
        println!(
            "note: criterion 4 fails only on {KNOWN_CONFLICT} (documented reconstruction conflict)"
        );
    }
    assert!(
        unexpected.is_empty(),
        "unexpected failures: {unexpected:#?}"
    );
}

//! Worked-example templates and a deterministic random corpus of admissible
//! complexes.
//!
//! Every generated complex passes [`validate_differential`]. The random
//! corpus mixes three strategies: direct sums of small admissible atoms,
//! a coupled construction that builds the index-2 boundaries from small
//! kernel vectors of a random index-1 boundary block, and a brute-force
//! search over tiny matrices. Each result is then relabelled by a random
//! permutation inside every index group, random sign flips of index-1
//! generators, and a random diagonal conjugation by powers of `t`, none of
//! which leaves the admissible class.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify_line, validate_differential, FilteredComplex, IndexPartition, NovikovMatrix};
use crate::error::{Error, Result};
use crate::{Poly, Scalar};

/// Named example complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Template {
    /// Torus complex whose sweep produces a genuine series mid-way.
    TorusA,
    /// Torus complex whose cancellations give birth to two periodic orbits.
    TorusB,
    /// `g + 1` linked units, each with a sink, two saddles and a source.
    Chained(usize),
}

impl Template {
    pub fn m(&self) -> usize {
        match self {
            Template::TorusA | Template::TorusB => 8,
            Template::Chained(g) => 4 * (g + 1),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Template::TorusA => write!(f, "torus_a"),
            Template::TorusB => write!(f, "torus_b"),
            Template::Chained(g) => write!(f, "chained({g})"),
        }
    }
}

impl FromStr for Template {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "torus_a" => return Ok(Template::TorusA),
            "torus_b" => return Ok(Template::TorusB),
            _ => {}
        }
        let g = s
            .strip_prefix("chained(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("chained:"))
            .and_then(|g| g.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown template {s:?}")))?;
        Ok(Template::Chained(g))
    }
}

/// `(row, col, [(exponent, coefficient)])` entries of a fixed matrix.
type EntryTable = &'static [(usize, usize, &'static [(i64, i64)])];

const TORUS_A: EntryTable = &[
    (2, 3, &[(0, -1), (1, 1)]),
    (1, 4, &[(0, 1)]),
    (2, 4, &[(0, -1)]),
    (1, 5, &[(1, 1)]),
    (2, 5, &[(0, -1)]),
    (1, 6, &[(0, 1)]),
    (2, 6, &[(1, -1)]),
    (3, 7, &[(2, -1)]),
    (4, 7, &[(2, 1)]),
    (6, 7, &[(2, -1)]),
    (3, 8, &[(0, 1)]),
    (4, 8, &[(2, -1)]),
    (5, 8, &[(0, -1), (1, 1)]),
    (6, 8, &[(1, 1)]),
];

const TORUS_B: EntryTable = &[
    (1, 3, &[(1, -1)]),
    (2, 3, &[(0, 1)]),
    (1, 4, &[(0, -1), (1, 1)]),
    (1, 5, &[(0, -1)]),
    (2, 5, &[(0, 1)]),
    (1, 6, &[(0, -1)]),
    (2, 6, &[(1, 1)]),
    (3, 7, &[(0, 1)]),
    (4, 7, &[(0, 1)]),
    (5, 7, &[(0, -1)]),
    (3, 8, &[(1, -1)]),
    (4, 8, &[(0, -1)]),
    (5, 8, &[(2, 1)]),
    (6, 8, &[(0, 1), (1, -1)]),
];

/// Raw template data: indices and `(row, col, poly)` with 1-based positions.
fn template_data(t: Template) -> (Vec<u8>, Vec<(usize, usize, Poly)>) {
    let table = |rows: EntryTable| {
        rows.iter()
            .map(|&(i, j, p)| (i, j, Poly::from_pairs(p)))
            .collect::<Vec<_>>()
    };
    match t {
        Template::TorusA => (vec![0, 0, 1, 1, 1, 1, 2, 2], table(TORUS_A)),
        Template::TorusB => (vec![0, 0, 1, 1, 1, 1, 2, 2], table(TORUS_B)),
        Template::Chained(g) => {
            let n = g + 1;
            let sink = |i: usize| 1 + i % n;
            let a = |i: usize| n + 1 + 2 * (i % n);
            let b = |i: usize| n + 2 + 2 * (i % n);
            let q = |i: usize| 3 * n + 1 + i % n;
            let mut idx = vec![0u8; n];
            idx.extend(std::iter::repeat_n(1, 2 * n));
            idx.extend(std::iter::repeat_n(2, n));
            let mut e: Vec<(usize, usize, Poly)> = Vec::new();
            let mut add = |i: usize, j: usize, p: Poly| {
                if let Some(slot) = e.iter_mut().find(|(x, y, _)| *x == i && *y == j) {
                    slot.2 = &slot.2 + &p;
                } else {
                    e.push((i, j, p));
                }
            };
            for i in 0..n {
                // ∂a_i = s_i − t s_{i+1}, ∂b_i = s_i, ∂q_i = b_i − a_i − t b_{i+1}
                add(sink(i), a(i), Poly::term(0, 1));
                add(sink(i + 1), a(i), Poly::term(1, -1));
                add(sink(i), b(i), Poly::term(0, 1));
                add(b(i), q(i), Poly::term(0, 1));
                add(a(i), q(i), Poly::term(0, -1));
                add(b(i + 1), q(i), Poly::term(1, -1));
            }
            (idx, e)
        }
    }
}

/// Builds a template complex. `shift_params` is empty (unshifted) or holds
/// one exponent `s_j` per generator; entry `(i, j)` is multiplied by
/// `t^{s_j − s_i}`, which conjugates Δ by a diagonal unit matrix.
pub fn generate_example(template: Template, shift_params: &[i64]) -> Result<FilteredComplex> {
    let (idx, entries) = template_data(template);
    let m = idx.len();
    if !shift_params.is_empty() && shift_params.len() != m {
        return Err(Error::GenerationFailed(format!(
            "{template} takes {m} shift parameters, got {}",
            shift_params.len()
        )));
    }
    let shift = |j: usize| shift_params.get(j - 1).copied().unwrap_or(0);
    let mut a = NovikovMatrix::zeros(m);
    for (i, j, p) in entries {
        if !p.is_zero() {
            a.set(i, j, Scalar::from_poly(p.shift(shift(j) - shift(i))));
        }
    }
    let c = FilteredComplex::new(a, IndexPartition::new(idx)?)?;
    finish(c, &template.to_string())
}

fn finish(c: FilteredComplex, what: &str) -> Result<FilteredComplex> {
    let report = validate_differential(&c);
    if report.admissible() {
        Ok(c)
    } else {
        Err(Error::GenerationFailed(format!(
            "{what}: {}",
            report.problems().join("; ")
        )))
    }
}

/// Random-corpus construction strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorpusStrategy {
    DirectSum,
    Coupled,
    SmallSearch,
}

/// Local block: Morse indices and `(row, col, poly)` with 0-based positions.
#[derive(Clone, Default)]
struct Block {
    idx: Vec<u8>,
    entries: Vec<(usize, usize, Poly)>,
}

impl Block {
    fn append(&mut self, other: Block) {
        let off = self.idx.len();
        self.idx.extend(other.idx);
        self.entries.extend(
            other
                .entries
                .into_iter()
                .map(|(i, j, p)| (i + off, j + off, p)),
        );
    }
}

fn sign<R: Rng>(rng: &mut R) -> i64 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

fn monomial<R: Rng>(rng: &mut R) -> Poly {
    Poly::term(rng.gen_range(-1..=2), sign(rng))
}

/// `±t^a` or `±(t^a − t^b)`.
fn unit_form<R: Rng>(rng: &mut R) -> Poly {
    if rng.gen_bool(0.6) {
        monomial(rng)
    } else {
        let e = rng.gen_range(-1..=1);
        let gap = rng.gen_range(1..=2);
        let s = sign(rng);
        Poly::term(e, s) - Poly::term(e + gap, s)
    }
}

fn atom<R: Rng>(rng: &mut R) -> Block {
    let pick = rng.gen_range(0..9);
    match pick {
        0 => Block {
            idx: vec![rng.gen_range(0..=2)],
            entries: vec![],
        },
        1 | 2 => {
            let k = rng.gen_range(0..=1);
            Block {
                idx: vec![k, k + 1],
                entries: vec![(0, 1, unit_form(rng))],
            }
        }
        3 | 4 => {
            // s; a, b; q with ∂∂q = 0 through two monomial paths
            let (e1, e2, e3) = (sign(rng), sign(rng), sign(rng));
            let (x, y, z) = (
                rng.gen_range(-1..=1),
                rng.gen_range(-1..=1),
                rng.gen_range(-1..=1),
            );
            Block {
                idx: vec![0, 1, 1, 2],
                entries: vec![
                    (0, 1, Poly::term(x, e1)),
                    (0, 2, Poly::term(y, e2)),
                    (1, 3, Poly::term(z, e3)),
                    (2, 3, Poly::term(x + z - y, -e1 * e2 * e3)),
                ],
            }
        }
        5 => {
            let s = sign(rng);
            Block {
                idx: vec![0, 0, 1],
                entries: vec![
                    (0, 2, Poly::term(rng.gen_range(-1..=1), s)),
                    (1, 2, Poly::term(rng.gen_range(-1..=1), -s)),
                ],
            }
        }
        6 => {
            let s = sign(rng);
            Block {
                idx: vec![1, 2, 2],
                entries: vec![
                    (0, 1, Poly::term(rng.gen_range(-1..=1), s)),
                    (0, 2, Poly::term(rng.gen_range(-1..=1), -s)),
                ],
            }
        }
        _ => {
            let t = *[
                Template::TorusA,
                Template::TorusB,
                Template::Chained(0),
                Template::Chained(1),
                Template::Chained(2),
            ]
            .choose(rng)
            .expect("nonempty");
            let (idx, entries) = template_data(t);
            Block {
                idx,
                entries: entries
                    .into_iter()
                    .map(|(i, j, p)| (i - 1, j - 1, p))
                    .collect(),
            }
        }
    }
}

fn direct_sum<R: Rng>(rng: &mut R, max_m: usize) -> Block {
    let target = rng.gen_range(1..=max_m);
    let mut b = Block::default();
    for _ in 0..64 {
        let a = atom(rng);
        if b.idx.len() + a.idx.len() <= target {
            b.append(a);
        }
        if b.idx.len() == target || (b.idx.len() + 1 >= target && rng.gen_bool(0.5)) {
            break;
        }
    }
    if b.idx.is_empty() {
        b.idx.push(rng.gen_range(0..=2));
    }
    b
}

/// Primitive kernel vector of the given columns when it is one-dimensional
/// and supported on every column; `None` otherwise.
fn kernel_vector(cols: &[&Vec<Poly>]) -> Option<Vec<Poly>> {
    let rows = cols.first()?.len();
    let v: Vec<Poly> = match cols.len() {
        1 => {
            if cols[0].iter().all(Poly::is_zero) {
                vec![Poly::one()]
            } else {
                return None;
            }
        }
        2 => {
            let r = (0..rows).find(|&r| !cols[0][r].is_zero())?;
            vec![cols[1][r].clone(), -&cols[0][r]]
        }
        3 => {
            let mut found = None;
            'outer: for r1 in 0..rows {
                for r2 in r1 + 1..rows {
                    let minor = |a: usize, b: usize| {
                        &cols[a][r1] * &cols[b][r2] - &cols[a][r2] * &cols[b][r1]
                    };
                    let v = vec![minor(1, 2), -minor(0, 2), minor(0, 1)];
                    if v.iter().any(|x| !x.is_zero()) {
                        found = Some(v);
                        break 'outer;
                    }
                }
            }
            found?
        }
        _ => return None,
    };
    if v.iter().any(Poly::is_zero) {
        return None;
    }
    for r in 0..rows {
        let s = cols
            .iter()
            .zip(&v)
            .fold(Poly::zero(), |acc, (c, x)| acc + &c[r] * x);
        if !s.is_zero() {
            return None;
        }
    }
    let g = v.iter().fold(Poly::zero(), |acc, x| acc.gcd(x));
    let v: Vec<Poly> = v
        .iter()
        .map(|x| x.div_exact(&g).expect("gcd divides"))
        .collect();
    let lo = v.iter().filter_map(Poly::low_exp).min().unwrap_or(0);
    Some(v.into_iter().map(|x| x.shift(-lo)).collect())
}

fn is_unit_form(p: &Poly) -> bool {
    Scalar::from_poly(p.clone()).classify().is_unit_form()
}

fn line_ok(entries: &[Poly]) -> bool {
    let s: Vec<Scalar> = entries.iter().cloned().map(Scalar::from_poly).collect();
    classify_line(s.iter()).is_valid()
}

fn coupled<R: Rng>(rng: &mut R, max_m: usize) -> Block {
    let max_m = max_m.max(3);
    let n1 = rng.gen_range(1..=(max_m / 2).clamp(1, 6));
    let n0 = rng.gen_range(0..=(max_m - n1).min(4));
    let n2_cap = max_m - n1 - n0;
    // index-0 × index-1 block, column by column
    let mut b1: Vec<Vec<Poly>> = Vec::with_capacity(n1);
    for _ in 0..n1 {
        let mut col = vec![Poly::zero(); n0];
        let kind = if n0 == 0 { 0 } else { rng.gen_range(0..4) };
        match kind {
            1 => col[rng.gen_range(0..n0)] = unit_form(rng),
            2 if n0 >= 2 => {
                let mut rows: Vec<usize> = (0..n0).collect();
                rows.shuffle(rng);
                let s = sign(rng);
                col[rows[0]] = Poly::term(rng.gen_range(-1..=1), s);
                col[rows[1]] = Poly::term(rng.gen_range(-1..=1), -s);
            }
            2 | 3 => col[rng.gen_range(0..n0)] = monomial(rng),
            _ => {}
        }
        if col.iter().any(|p| !p.is_zero() && !is_unit_form(p)) {
            col = vec![Poly::zero(); n0];
        }
        b1.push(col);
    }
    // proposals for index-2 boundaries supported on 1–3 saddles
    let mut proposals: Vec<(Vec<usize>, Vec<Poly>)> = Vec::new();
    for a in 0..n1 {
        let empty: Vec<Poly> = Vec::new();
        let ca = if n0 == 0 { &empty } else { &b1[a] };
        if let Some(v) = kernel_vector(&[ca]) {
            proposals.push((vec![a], v));
        }
        for b in a + 1..n1 {
            if n0 > 0 {
                if let Some(v) = kernel_vector(&[&b1[a], &b1[b]]) {
                    proposals.push((vec![a, b], v));
                }
            }
            for c in b + 1..n1 {
                if n0 > 0 {
                    if let Some(v) = kernel_vector(&[&b1[a], &b1[b], &b1[c]]) {
                        proposals.push((vec![a, b, c], v));
                    }
                }
            }
        }
    }
    proposals.retain(|(_, v)| v.iter().all(is_unit_form));
    proposals.shuffle(rng);
    let mut rows: Vec<Vec<Poly>> = vec![Vec::new(); n1];
    let mut sources: Vec<Vec<(usize, Poly)>> = Vec::new();
    let want = rng.gen_range(0..=n2_cap);
    for _ in 0..3 {
        for (support, v) in &proposals {
            if sources.len() >= want {
                break;
            }
            let k = rng.gen_range(-1..=1);
            let s = sign(rng);
            let v: Vec<Poly> = v.iter().map(|x| x.shift(k).scale(&s.into())).collect();
            let ok = support.iter().zip(&v).all(|(&a, x)| {
                let mut row = rows[a].clone();
                row.push(x.clone());
                line_ok(&row)
            });
            if ok {
                for (&a, x) in support.iter().zip(&v) {
                    rows[a].push(x.clone());
                }
                sources.push(support.iter().copied().zip(v).collect());
            }
        }
    }
    let n2 = sources.len();
    let mut blk = Block {
        idx: IndexPartition::from_counts(n0, n1, n2).as_slice().to_vec(),
        entries: Vec::new(),
    };
    for (a, col) in b1.into_iter().enumerate() {
        for (s, p) in col.into_iter().enumerate() {
            if !p.is_zero() {
                blk.entries.push((s, n0 + a, p));
            }
        }
    }
    for (q, src) in sources.into_iter().enumerate() {
        for (a, p) in src {
            blk.entries.push((n0 + a, n0 + n1 + q, p));
        }
    }
    blk
}

fn small_search<R: Rng>(rng: &mut R, max_m: usize) -> Option<Block> {
    let cap = max_m.clamp(1, 6);
    for _ in 0..400 {
        let m = rng.gen_range(2..=cap.max(2));
        let mut idx: Vec<u8> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
        idx.sort_unstable();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if idx[i] + 1 == idx[j] && rng.gen_bool(0.45) {
                    entries.push((i, j, unit_form(rng)));
                }
            }
        }
        let blk = Block { idx, entries };
        if let Ok(c) = to_complex(&blk, &(0..m).collect::<Vec<_>>(), &vec![1; m], &vec![0; m]) {
            if validate_differential(&c).admissible() {
                return Some(blk);
            }
        }
    }
    None
}

fn to_complex(b: &Block, pos: &[usize], flip: &[i64], shift: &[i64]) -> Result<FilteredComplex> {
    let m = b.idx.len();
    let mut idx = vec![0u8; m];
    for (g, &k) in b.idx.iter().enumerate() {
        idx[pos[g]] = k;
    }
    let mut a = NovikovMatrix::zeros(m);
    for (i, j, p) in &b.entries {
        let v = p
            .shift(shift[*j] - shift[*i])
            .scale(&(flip[*i] * flip[*j]).into());
        let cur = a.value(pos[*i] + 1, pos[*j] + 1);
        a.set(pos[*i] + 1, pos[*j] + 1, cur + Scalar::from_poly(v));
    }
    FilteredComplex::new(a, IndexPartition::new(idx)?)
}

/// Relabels a block randomly and turns it into a complex.
fn scramble<R: Rng>(rng: &mut R, b: &Block) -> Result<FilteredComplex> {
    let m = b.idx.len();
    let mut keys: Vec<(u8, u32, usize)> = (0..m).map(|g| (b.idx[g], rng.gen(), g)).collect();
    keys.sort_unstable();
    let mut pos = vec![0; m];
    for (n, &(_, _, g)) in keys.iter().enumerate() {
        pos[g] = n;
    }
    let flip: Vec<i64> = b
        .idx
        .iter()
        .map(|&k| if k == 1 { sign(rng) } else { 1 })
        .collect();
    let shift: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=1)).collect();
    to_complex(b, &pos, &flip, &shift)
}

/// One random admissible complex with at most `max_m` generators.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    strategy: CorpusStrategy,
    max_m: usize,
) -> Result<FilteredComplex> {
    let max_m = max_m.max(1);
    for _ in 0..32 {
        let blk = match strategy {
            CorpusStrategy::DirectSum => direct_sum(rng, max_m),
            CorpusStrategy::Coupled => coupled(rng, max_m),
            CorpusStrategy::SmallSearch => match small_search(rng, max_m) {
                Some(b) => b,
                None => continue,
            },
        };
        if blk.idx.is_empty() || blk.idx.len() > max_m {
            continue;
        }
        if let Ok(c) = scramble(rng, &blk).and_then(|c| finish(c, "random complex")) {
            return Ok(c);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no admissible {strategy:?} complex with m ≤ {max_m}"
    )))
}

/// `count` admissible complexes with at most `max_m` generators, identical
/// for identical seeds.
pub fn generate_corpus(seed: u64, count: usize, max_m: usize) -> Result<Vec<FilteredComplex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plan = [
        CorpusStrategy::DirectSum,
        CorpusStrategy::Coupled,
        CorpusStrategy::DirectSum,
        CorpusStrategy::Coupled,
        CorpusStrategy::SmallSearch,
    ];
    (0..count)
        .map(|n| random_complex(&mut rng, plan[n % plan.len()], max_m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::LineType;

    #[test]
    fn templates_are_admissible() {
        for t in [
            Template::TorusA,
            Template::TorusB,
            Template::Chained(0),
            Template::Chained(1),
            Template::Chained(3),
        ] {
            let c = generate_example(t, &[]).unwrap();
            assert_eq!(c.m(), t.m());
        }
    }

    #[test]
    fn chained_one_counts() {
        let c = generate_example(Template::Chained(1), &[]).unwrap();
        let p = c.partition();
        assert_eq!((p.count(0), p.count(1), p.count(2)), (2, 4, 2));
    }

    #[test]
    fn chained_zero_uses_binomials() {
        let c = generate_example(Template::Chained(0), &[]).unwrap();
        let r = validate_differential(&c);
        assert!(r.columns.contains(&(2, LineType::Binomial)));
    }

    #[test]
    fn shifts_preserve_admissibility_and_are_checked() {
        let s = [1, -2, 0, 3, 1, 0, -1, 2];
        let c = generate_example(Template::TorusB, &s).unwrap();
        // Δ_23 = 1 becomes t^{s_3 − s_2} = t^2
        assert_eq!(c.matrix().value(2, 3), Scalar::term(2, 1));
        assert!(matches!(
            generate_example(Template::TorusA, &[1, 2]),
            Err(Error::GenerationFailed(_))
        ));
    }

    #[test]
    fn template_names_parse() {
        assert_eq!("torus_a".parse::<Template>().unwrap(), Template::TorusA);
        assert_eq!(
            "chained(2)".parse::<Template>().unwrap(),
            Template::Chained(2)
        );
        assert_eq!(
            "chained:1".parse::<Template>().unwrap(),
            Template::Chained(1)
        );
        assert!("torus_c".parse::<Template>().is_err());
    }

    #[test]
    fn corpus_is_deterministic_and_admissible() {
        let a = generate_corpus(7, 40, 14).unwrap();
        let b = generate_corpus(7, 40, 14).unwrap();
        assert_eq!(a, b);
        for c in &a {
            assert!(c.m() <= 14);
            assert!(validate_differential(c).admissible());
        }
        assert!(a.iter().any(|c| c.m() <= 6));
        assert!(a.iter().any(|c| c.m() >= 8));
    }

    #[test]
    fn kernel_vector_of_chained_columns() {
        // columns of a_0, b_0, b_1 in chained(1): (1, −t), (1, 0), (0, 1)
        let a = vec![Poly::term(0, 1), Poly::term(1, -1)];
        let b = vec![Poly::term(0, 1), Poly::zero()];
        let c = vec![Poly::zero(), Poly::term(0, 1)];
        let v = kernel_vector(&[&a, &b, &c]).unwrap();
        let dot = |r: usize| &a[r] * &v[0] + &b[r] * &v[1] + &c[r] * &v[2];
        assert!(dot(0).is_zero() && dot(1).is_zero());
    }
}

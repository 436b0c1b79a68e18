//! Exact arithmetic in Z[t, t⁻¹] and in the part of Z((t)) reachable by
//! dividing Laurent polynomials by units.
//!
//! A [`LaurentPoly`] is a finite sparse sum of signed powers of `t`.
//! A [`NovikovScalar`] is a reduced fraction `num / den` whose denominator
//! has lowest coefficient `+1`, so it is a unit of Z((t)) and the quotient is
//! a genuine Laurent series with finite negative part. Canonical form makes
//! equality structural. [`NovikovScalar::truncate_series`] expands the series
//! for display.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer coefficient types usable in [`LaurentPoly`].
pub trait Coefficient:
    Integer + Signed + Clone + Debug + Display + FromStr + From<i64> + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Integer + Signed + Clone + Debug + Display + FromStr + From<i64> + Send + Sync + 'static
{
}

/// A finite sum `Σ c_ℓ t^ℓ` with `ℓ ∈ Z`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// `coeff · t^exp`.
    pub fn monomial(exp: i64, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `±t^exp` from an `i64` coefficient.
    pub fn term(exp: i64, coeff: i64) -> Self {
        Self::monomial(exp, C::from(coeff))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in iter {
            let slot = terms.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// Convenience constructor from small integer pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, C::from(c))))
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn low_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the lowest power of `t`.
    pub fn low_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.clone() * k.clone()))
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc.gcd(c))
    }

    /// Units of Z((t)) among Laurent polynomials: lowest coefficient is ±1.
    pub fn is_unit(&self) -> bool {
        self.low_coeff().is_some_and(|c| c.abs().is_one())
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(slot) => {
                    *slot = slot.clone() + c.clone();
                    if slot.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        Self { terms }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let slot = terms.entry(ea + eb).or_insert_with(C::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// Dense ascending coefficients starting at the lowest exponent.
    fn to_dense(&self) -> (i64, Vec<C>) {
        let (Some(lo), Some(hi)) = (self.low_exp(), self.high_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(low: i64, v: &[C]) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (low + i as i64, c.clone())),
        )
    }

    /// Exact quotient `self / d` in Z[t, t⁻¹], or `None` if `d` does not
    /// divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, mut a) = self.to_dense();
        let (lb, b) = d.to_dense();
        if a.len() < b.len() {
            return None;
        }
        let lead = b.last().expect("nonzero divisor").clone();
        let mut q = vec![C::zero(); a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = a[k + b.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            for (i, bi) in b.iter().enumerate() {
                a[k + i] = a[k + i].clone() - qc.clone() * bi.clone();
            }
            q[k] = qc;
        }
        if a.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(la - lb, &q))
    }

    /// Greatest common divisor in Z[t, t⁻¹], normalized to lowest exponent 0
    /// and positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return normalize_gcd(other),
            (false, true) => return normalize_gcd(self),
            _ => {}
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        let c = dense_content(&a).gcd(&dense_content(&b));
        let mut x = dense_primitive(&a);
        let mut y = dense_primitive(&b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        let g = loop {
            if y.len() == 1 {
                break vec![C::one()];
            }
            let r = pseudo_remainder(&x, &y);
            if r.is_empty() {
                break y;
            }
            x = y;
            y = dense_primitive(&r);
        };
        let g: Vec<C> = g.into_iter().map(|v| v * c.clone()).collect();
        normalize_gcd(&Self::from_dense(0, &g))
    }
}

/// Low exponent 0, positive leading coefficient.
fn normalize_gcd<C: Coefficient>(p: &LaurentPoly<C>) -> LaurentPoly<C> {
    let p = p.shift(-p.low_exp().unwrap_or(0));
    match p.terms.values().next_back() {
        Some(c) if c.is_negative() => p.neg_ref(),
        _ => p,
    }
}

fn trim<C: Coefficient>(v: &mut Vec<C>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_content<C: Coefficient>(v: &[C]) -> C {
    v.iter().fold(C::zero(), |acc, c| acc.gcd(c))
}

fn dense_primitive<C: Coefficient>(v: &[C]) -> Vec<C> {
    let c = dense_content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x.clone() / c.clone()).collect()
}

/// Pseudo-remainder of `a` by `b`, kept primitive at every step.
fn pseudo_remainder<C: Coefficient>(a: &[C], b: &[C]) -> Vec<C> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while !r.is_empty() && r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        for x in r.iter_mut() {
            *x = x.clone() * lb.clone();
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + s] = r[i + s].clone() - lr.clone() * bi.clone();
        }
        trim(&mut r);
        r = dense_primitive(&r);
    }
    r
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $m:ident, $imp:ident) => {
        impl<C: Coefficient> $tr<&$ty<C>> for &$ty<C> {
            type Output = $ty<C>;
            fn $m(self, rhs: &$ty<C>) -> $ty<C> {
                $ty::$imp(self, rhs)
            }
        }
        impl<C: Coefficient> $tr<$ty<C>> for $ty<C> {
            type Output = $ty<C>;
            fn $m(self, rhs: $ty<C>) -> $ty<C> {
                $ty::$imp(&self, &rhs)
            }
        }
        impl<C: Coefficient> $tr<&$ty<C>> for $ty<C> {
            type Output = $ty<C>;
            fn $m(self, rhs: &$ty<C>) -> $ty<C> {
                $ty::$imp(&self, rhs)
            }
        }
        impl<C: Coefficient> $tr<$ty<C>> for &$ty<C> {
            type Output = $ty<C>;
            fn $m(self, rhs: $ty<C>) -> $ty<C> {
                $ty::$imp(self, &rhs)
            }
        }
    };
}

forward_binop!(LaurentPoly, Add, add, add_ref);
forward_binop!(LaurentPoly, Sub, sub, sub_ref);
forward_binop!(LaurentPoly, Mul, mul, mul_ref);

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.neg_ref()
    }
}

impl<C: Coefficient> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        Self::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::one()
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "t"),
        e => write!(f, "t^{e}"),
    }
}

impl<C: Coefficient> Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if *e == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                fmt_var(f, *e)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Cursor over polynomial text.
struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }
}

impl<C: Coefficient> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Accepts the display grammar (`-1 + t^2`, `2t^-3`, `t`) with free
    /// whitespace and an optional `*` between coefficient and `t`.
    fn from_str(text: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("polynomial {text:?}: {msg}"));
        let mut lx = Lexer {
            s: text.as_bytes(),
            pos: 0,
        };
        let mut out: Vec<(i64, C)> = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match lx.peek() {
                None if first => return Err(err("empty")),
                None => break,
                Some(b'+') => lx.pos += 1,
                Some(b'-') => {
                    negative = true;
                    lx.pos += 1;
                }
                Some(_) if first => {}
                Some(_) => return Err(err("expected '+' or '-' between terms")),
            }
            first = false;
            let coeff = match lx.digits() {
                Some(d) => Some(d.parse::<C>().map_err(|_| err("bad coefficient"))?),
                None => None,
            };
            if lx.peek() == Some(b'*') {
                if coeff.is_none() {
                    return Err(err("'*' without coefficient"));
                }
                lx.pos += 1;
                if lx.peek() != Some(b't') {
                    return Err(err("expected 't' after '*'"));
                }
            }
            let exp = if lx.peek() == Some(b't') {
                lx.pos += 1;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    let neg_exp = match lx.peek() {
                        Some(b'-') => {
                            lx.pos += 1;
                            true
                        }
                        Some(b'+') => {
                            lx.pos += 1;
                            false
                        }
                        _ => false,
                    };
                    let d = lx.digits().ok_or_else(|| err("missing exponent"))?;
                    let e: i64 = d.parse().map_err(|_| err("exponent overflow"))?;
                    if neg_exp {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                }
            } else if coeff.is_none() {
                return Err(err("expected a term"));
            } else {
                0
            };
            let c = coeff.unwrap_or_else(C::one);
            out.push((exp, if negative { -c } else { c }));
        }
        Ok(Self::from_terms(out))
    }
}

/// Sign of a unit monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Shape of a scalar as it matters for 2-dimensional Novikov matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarClass {
    Zero,
    /// `sign · t^exp`.
    Monomial {
        sign: Sign,
        exp: i64,
    },
    /// `t^plus − t^minus` with `plus ≠ minus`.
    Binomial {
        plus: i64,
        minus: i64,
    },
    Other,
}

impl ScalarClass {
    pub fn is_unit_form(&self) -> bool {
        matches!(
            self,
            ScalarClass::Monomial { .. } | ScalarClass::Binomial { .. }
        )
    }
}

/// An element of Z((t)) stored as a reduced fraction with unit denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NovikovScalar<C> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Coefficient> NovikovScalar<C> {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `coeff · t^exp` with a small integer coefficient.
    pub fn term(exp: i64, coeff: i64) -> Self {
        Self::from_poly(LaurentPoly::term(exp, coeff))
    }

    /// Reduced form of `num / den`. The denominator must be a unit of Z((t)).
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !den.is_unit() {
            return Err(Error::DivisionByNonUnit(den.to_string()));
        }
        Ok(Self::canonical(num, den))
    }

    /// Reduction for a denominator already known to be a nonzero unit.
    fn canonical(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let k = den.low_exp().expect("nonzero denominator");
        let mut num = num.shift(-k);
        let mut den = den.shift(-k);
        if den.num_terms() > 1 {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
            let k = den.low_exp().expect("nonzero denominator");
            num = num.shift(-k);
            den = den.shift(-k);
        }
        if den.low_coeff().is_some_and(|c| c.is_negative()) {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly<C>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// True iff invertible in Z((t)).
    pub fn is_unit(&self) -> bool {
        self.num.is_unit()
    }

    /// Lowest exponent of the series expansion.
    pub fn low_exp(&self) -> Option<i64> {
        self.num.low_exp()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::canonical(&self.num + &rhs.num, self.den.clone());
        }
        Self::canonical(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        Self {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    /// Exact quotient; the divisor must be a unit of Z((t)).
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !rhs.num.is_unit() {
            return Err(Error::DivisionByNonUnit(rhs.to_string()));
        }
        if self.is_polynomial() && rhs.num.num_terms() == 1 && rhs.is_polynomial() {
            let (e, c) = rhs.num.terms().next().expect("nonzero");
            // ±t^e: exact polynomial result
            return Ok(Self::from_poly(self.num.shift(-e).scale(c)));
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// The Laurent polynomial agreeing with the series expansion on every
    /// exponent `≤ order`; empty when `order` lies below the lowest exponent.
    pub fn truncate_series(&self, order: i64) -> LaurentPoly<C> {
        if self.is_polynomial() {
            return LaurentPoly::from_terms(
                self.num
                    .terms()
                    .filter(|(e, _)| *e <= order)
                    .map(|(e, c)| (e, c.clone())),
            );
        }
        // den has lowest term +1·t^0, so each quotient coefficient is the
        // current lowest remainder coefficient
        let mut rem: BTreeMap<i64, C> = self.num.terms.clone();
        let mut quot: Vec<(i64, C)> = Vec::new();
        while let Some((&e, c)) = rem.iter().next() {
            if e > order {
                break;
            }
            let c = c.clone();
            for (de, dc) in self.den.terms() {
                let x = e + de;
                if x > order {
                    break;
                }
                let slot = rem.entry(x).or_insert_with(C::zero);
                *slot = slot.clone() - c.clone() * dc.clone();
                if slot.is_zero() {
                    rem.remove(&x);
                }
            }
            quot.push((e, c));
        }
        LaurentPoly::from_terms(quot)
    }

    /// Series expansion showing `n` exponents from the lowest one, with an
    /// `O(t^k)` tail when the value is not a polynomial.
    pub fn series_string(&self, n: usize) -> String {
        let Some(lo) = self.low_exp() else {
            return "0".into();
        };
        if self.is_polynomial() {
            return self.num.to_string();
        }
        let order = lo + n.max(1) as i64 - 1;
        let head = self.truncate_series(order);
        let mut tail = String::from("O(");
        struct V(i64);
        impl Display for V {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0 {
                    0 => write!(f, "1"),
                    e => fmt_var(f, e),
                }
            }
        }
        tail.push_str(&V(order + 1).to_string());
        tail.push(')');
        if head.is_zero() {
            tail
        } else {
            format!("{head} + {tail}")
        }
    }

    /// Classification of the exact value.
    pub fn classify(&self) -> ScalarClass {
        if self.is_zero() {
            return ScalarClass::Zero;
        }
        if !self.is_polynomial() {
            return ScalarClass::Other;
        }
        let ts: Vec<(i64, &C)> = self.num.terms().collect();
        match ts.as_slice() {
            [(e, c)] if c.abs().is_one() => ScalarClass::Monomial {
                sign: if c.is_positive() {
                    Sign::Plus
                } else {
                    Sign::Minus
                },
                exp: *e,
            },
            [(e1, c1), (e2, c2)] if c1.abs().is_one() && c2.abs().is_one() => {
                match (c1.is_positive(), c2.is_positive()) {
                    (true, false) => ScalarClass::Binomial {
                        plus: *e1,
                        minus: *e2,
                    },
                    (false, true) => ScalarClass::Binomial {
                        plus: *e2,
                        minus: *e1,
                    },
                    _ => ScalarClass::Other,
                }
            }
            _ => ScalarClass::Other,
        }
    }
}

/// Free-function form of [`NovikovScalar::classify`].
pub fn classify_scalar<C: Coefficient>(s: &NovikovScalar<C>) -> ScalarClass {
    s.classify()
}

/// Free-function form of [`NovikovScalar::truncate_series`].
pub fn truncate_series<C: Coefficient>(s: &NovikovScalar<C>, order: i64) -> LaurentPoly<C> {
    s.truncate_series(order)
}

forward_binop!(NovikovScalar, Add, add, add_ref);
forward_binop!(NovikovScalar, Sub, sub, sub_ref);
forward_binop!(NovikovScalar, Mul, mul, mul_ref);

impl<C: Coefficient> Neg for NovikovScalar<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<C: Coefficient> Neg for &NovikovScalar<C> {
    type Output = NovikovScalar<C>;
    fn neg(self) -> NovikovScalar<C> {
        self.neg_ref()
    }
}

impl<C: Coefficient> Zero for NovikovScalar<C> {
    fn zero() -> Self {
        Self::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Coefficient> One for NovikovScalar<C> {
    fn one() -> Self {
        Self::one()
    }
}

impl<C: Coefficient> From<LaurentPoly<C>> for NovikovScalar<C> {
    fn from(p: LaurentPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Coefficient> Display for NovikovScalar<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<C: Coefficient> Debug for NovikovScalar<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NovikovScalar({self})")
    }
}

impl<C: Coefficient> FromStr for NovikovScalar<C> {
    type Err = Error;

    /// Accepts a polynomial, or `(num)/(den)` with a unit denominator.
    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        if !s.starts_with('(') {
            return Ok(Self::from_poly(s.parse()?));
        }
        let close = s
            .find(')')
            .ok_or_else(|| Error::Parse(format!("scalar {text:?}: unbalanced parenthesis")))?;
        let num: LaurentPoly<C> = s[1..close].parse()?;
        let rest = s[close + 1..].trim_start();
        let Some(rest) = rest.strip_prefix('/') else {
            if rest.is_empty() {
                return Ok(Self::from_poly(num));
            }
            return Err(Error::Parse(format!("scalar {text:?}: expected '/'")));
        };
        let rest = rest.trim();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        let den: LaurentPoly<C> = inner.parse()?;
        Self::new(num, den).map_err(|e| Error::Parse(format!("scalar {text:?}: {e}")))
    }
}

//! Sparse multivariate Laurent polynomials over the integers.
//!
//! Variables are `x`, `y` or `h` symbols named by arc labels. Every value is
//! kept in canonical form: no zero coefficients, no zero exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors raised by polynomial arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative power of {0} bound to a non-monomial")]
    NonInvertibleSubstitution(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The three symbol families used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    X,
    Y,
    H,
}

impl VarKind {
    pub fn letter(self) -> char {
        match self {
            VarKind::X => 'x',
            VarKind::Y => 'y',
            VarKind::H => 'h',
        }
    }

    fn from_letter(c: char) -> Option<VarKind> {
        match c {
            'x' => Some(VarKind::X),
            'y' => Some(VarKind::Y),
            'h' => Some(VarKind::H),
            _ => None,
        }
    }
}

/// Characters allowed in arc labels and variable names.
pub fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '(' | ')' | '.' | '\'' | ',')
}

/// A variable: a kind together with a label.
///
/// Variables are ordered by kind (`x < y < h`) and then by the natural,
/// digit-aware order of their names, so `x2 < x10`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    kind: VarKind,
    key: Arc<[u8]>,
    name: Arc<str>,
}

fn natural_key(name: &str) -> Vec<u8> {
    let bytes = name.as_bytes();
    let mut key = Vec::with_capacity(bytes.len() + 4);
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &bytes[start..i];
            let first = digits.iter().position(|&b| b != b'0').unwrap_or(digits.len());
            let sig = &digits[first..];
            key.push(b'0');
            key.push(sig.len().min(255) as u8);
            key.extend_from_slice(sig);
        } else {
            key.push(bytes[i]);
            i += 1;
        }
    }
    key.push(0);
    key.extend_from_slice(bytes);
    key
}

impl Var {
    pub fn new(kind: VarKind, name: &str) -> Var {
        Var {
            kind,
            key: natural_key(name).into(),
            name: name.into(),
        }
    }

    pub fn x(name: &str) -> Var {
        Var::new(VarKind::X, name)
    }

    pub fn y(name: &str) -> Var {
        Var::new(VarKind::Y, name)
    }

    pub fn h(name: &str) -> Var {
        Var::new(VarKind::H, name)
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same name, different kind.
    pub fn with_kind(&self, kind: VarKind) -> Var {
        Var {
            kind,
            key: self.key.clone(),
            name: self.name.clone(),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() && self.name.bytes().all(|b| b.is_ascii_digit()) {
            write!(f, "{}{}", self.kind.letter(), self.name)
        } else {
            write!(f, "{}_{}", self.kind.letter(), self.name)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Laurent monomial without coefficient: sorted `(variable, exponent)` pairs
/// with nonzero exponents.
///
/// The ordering is lexicographic on exponent vectors under the variable order
/// (a larger exponent of the first differing variable is greater). It is a
/// group order, so it is compatible with multiplication.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i64)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Var, e: i64) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i64)>>(pairs: I) -> Monomial {
        let mut map: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i64)] {
        &self.0
    }

    pub fn exponent(&self, v: &Var) -> i64 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    /// Sum of the exponents of variables of the given kind.
    pub fn kind_degree(&self, kind: VarKind) -> i64 {
        self.0.iter().filter(|(v, _)| v.kind == kind).map(|(_, e)| e).sum()
    }

    /// The factor made of variables of the given kind.
    pub fn restrict(&self, kind: VarKind) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v.kind == kind).cloned().collect())
    }

    /// The factor with variables of the given kind removed.
    pub fn drop_kind(&self, kind: VarKind) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v.kind != kind).cloned().collect())
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(_, e)| *e > 0)
    }

    /// Renders the monomial with y factors first, then x, then h.
    pub fn text(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(self.0.len());
        for kind in [VarKind::Y, VarKind::X, VarKind::H] {
            for (v, e) in self.0.iter().filter(|(v, _)| v.kind == kind) {
                if *e == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("{v}^{e}"));
                }
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, ea)), None) => return ea.cmp(&0),
                (None, Some((_, eb))) => return 0.cmp(eb),
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// A Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(Monomial::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Laurent {
        Laurent::term(Monomial::one(), c.into())
    }

    pub fn var(v: Var) -> Laurent {
        Laurent::monomial(Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Laurent {
        Laurent::term(m, BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Laurent {
        let mut p = Laurent::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The single term when the polynomial is a monomial.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The largest term in monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn scale(&self, c: &BigInt) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact division in the Laurent polynomial ring.
    ///
    /// Monomial divisors with unit coefficient are handled by exponent
    /// subtraction. Other divisors use long division under the lex order,
    /// with quotient exponents confined to the box forced by Newton polytopes,
    /// so non-divisible input is detected in finitely many steps.
    pub fn div_exact(&self, b: &Laurent) -> Result<Laurent, PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Laurent::zero());
        }
        if let Some((m, c)) = b.as_term() {
            let inv = m.inv();
            let mut out = Laurent::zero();
            for (k, a) in &self.terms {
                let (q, r) = a.div_rem(c);
                if !r.is_zero() {
                    return Err(PolyError::NotDivisible);
                }
                out.terms.insert(k.mul(&inv), q);
            }
            return Ok(out);
        }
        let bounds = quotient_box(self, b).ok_or(PolyError::NotDivisible)?;
        let (lt_m, lt_c) = b.leading_term().expect("nonzero divisor");
        let (lt_m, lt_c) = (lt_m.clone(), lt_c.clone());
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let (q, r) = rc.div_rem(&lt_c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let qm = rm.div(&lt_m);
            if !in_box(&qm, &bounds) {
                return Err(PolyError::NotDivisible);
            }
            for (bm, bc) in &b.terms {
                rem.add_term(bm.mul(&qm), -(bc * &q));
            }
            quot.add_term(qm, q);
        }
        Ok(quot)
    }

    /// Simultaneous substitution of variables by Laurent polynomials.
    ///
    /// A variable occurring with a negative exponent must be bound to a
    /// monomial with coefficient ±1.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Laurent>) -> Result<Laurent, PolyError> {
        let mut cache: BTreeMap<(Var, i64), Laurent> = BTreeMap::new();
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Laurent::constant(c.clone());
            for (v, e) in m.factors() {
                match bindings.get(v) {
                    None => kept.push((v.clone(), *e)),
                    Some(p) => {
                        let key = (v.clone(), *e);
                        if !cache.contains_key(&key) {
                            cache.insert(key.clone(), power_of(p, *e, v)?);
                        }
                        acc = &acc * &cache[&key];
                    }
                }
            }
            let kept = Monomial(kept);
            for (k, a) in acc.terms {
                out.add_term(k.mul(&kept), a);
            }
        }
        Ok(out)
    }

    /// Applies a function to every variable (renaming).
    pub fn map_vars<F: Fn(&Var) -> Var>(&self, f: F) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let m2 = Monomial::from_pairs(m.factors().iter().map(|(v, e)| (f(v), *e)));
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Sets every variable of the given kind to 1.
    pub fn set_kind_to_one(&self, kind: VarKind) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            out.add_term(m.drop_kind(kind), c.clone());
        }
        out
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Deterministic rendering: terms by total y-degree ascending, then by
    /// descending monomial order; coefficients shown when different from 1.
    pub fn canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            a.kind_degree(VarKind::Y)
                .cmp(&b.kind_degree(VarKind::Y))
                .then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.text());
            } else {
                out.push_str(&format!("{mag}*{}", m.text()));
            }
        }
        out
    }
}

fn power_of(p: &Laurent, e: i64, v: &Var) -> Result<Laurent, PolyError> {
    if e >= 0 {
        return Ok(p.pow(e as u32));
    }
    match p.as_term() {
        Some((m, c)) if c.abs().is_one() => {
            let sign = if c.is_negative() && e % 2 != 0 {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            Ok(Laurent::term(m.pow(e), sign))
        }
        _ => Err(PolyError::NonInvertibleSubstitution(v.to_string())),
    }
}

type Bounds = BTreeMap<Var, (i64, i64)>;

fn exponent_ranges(p: &Laurent) -> Bounds {
    let vars: std::collections::BTreeSet<Var> = p
        .terms
        .keys()
        .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
        .collect();
    let mut out = Bounds::new();
    for v in vars {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for m in p.terms.keys() {
            let e = m.exponent(&v);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        out.insert(v, (lo, hi));
    }
    out
}

fn quotient_box(a: &Laurent, b: &Laurent) -> Option<Bounds> {
    let ra = exponent_ranges(a);
    let rb = exponent_ranges(b);
    let mut out = Bounds::new();
    for v in ra.keys().chain(rb.keys()) {
        let (alo, ahi) = ra.get(v).copied().unwrap_or((0, 0));
        let (blo, bhi) = rb.get(v).copied().unwrap_or((0, 0));
        let (lo, hi) = (alo - blo, ahi - bhi);
        if lo > hi {
            return None;
        }
        out.insert(v.clone(), (lo, hi));
    }
    Some(out)
}

fn in_box(m: &Monomial, bounds: &Bounds) -> bool {
    for (v, e) in m.factors() {
        match bounds.get(v) {
            Some((lo, hi)) if lo <= e && e <= hi => {}
            _ => return false,
        }
    }
    bounds.iter().all(|(v, (lo, hi))| {
        let e = m.exponent(v);
        *lo <= e && e <= *hi
    })
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl FromStr for Laurent {
    type Err = PolyError;

    /// Parses the canonical text format, e.g. `x_d^-1 + y_d*x_d^-1` or
    /// `x1 - 2*y3^2`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Laurent, PolyError> {
        Parser { src: s.as_bytes(), pos: 0 }.parse_poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_poly(&mut self) -> Result<Laurent, PolyError> {
        let mut out = Laurent::zero();
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match self.peek() {
                None if first => return self.err("empty input"),
                None => break,
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return self.err("expected '+' or '-'"),
            }
            let (m, c) = self.parse_term()?;
            out.add_term(m, c * sign);
            first = false;
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Monomial, BigInt), PolyError> {
        let mut coeff = BigInt::one();
        let mut pairs = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    coeff *= digits.parse::<BigInt>().unwrap();
                }
                Some(c) => {
                    let Some(kind) = VarKind::from_letter(c as char) else {
                        return self.err("expected a variable or an integer");
                    };
                    self.pos += 1;
                    let name = self.parse_name()?;
                    let mut e = 1i64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.parse_exponent()?;
                    }
                    pairs.push((Var::new(kind, &name), e));
                }
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_pairs(pairs), coeff))
    }

    fn parse_name(&mut self) -> Result<String, PolyError> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            let s = self.pos;
            while self.pos < self.src.len() && is_label_char(self.src[self.pos] as char) {
                self.pos += 1;
            }
            if self.pos == s {
                return self.err("empty variable name");
            }
            return Ok(String::from_utf8_lossy(&self.src[s..self.pos]).into_owned());
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a variable name");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn parse_exponent(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .or_else(|_| self.err("bad exponent"))
    }
}

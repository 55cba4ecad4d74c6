use std::collections::BTreeMap;
use std::fmt;

use ramcoh_valuation::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::expr::{LinExpr, Substitution, Symbol};

/// Per-degree annihilator certificate: an entry `k` at degree `i` means
/// `p^k · H^i = 0`. Exponent 0 records vanishing. Degrees not covered by
/// an entry or by the tail are unknown.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TorsionCert {
    entries: BTreeMap<i64, LinExpr>,
    tail: Option<Tail>,
}

/// Uniform exponent on all degrees `i ≥ from` (every degree if `from` is None).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    pub from: Option<i64>,
    pub exponent: LinExpr,
}

/// How many layers a spectral window of cohomological dimension `cd` has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowCount {
    /// `cd` layers.
    Cd,
    /// `cd + 1` layers (columns 0..=cd).
    CdPlusOne,
}

/// Global derivation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Each window uses the count recorded for that step.
    Paper,
    /// Every window counts `cd + 1` layers.
    Conservative,
}

impl Mode {
    pub fn window(self, recorded: WindowCount) -> WindowCount {
        match self {
            Mode::Paper => recorded,
            Mode::Conservative => WindowCount::CdPlusOne,
        }
    }
}

impl TorsionCert {
    /// Nothing known.
    pub fn unknown() -> Self {
        TorsionCert::default()
    }

    /// Exponent 0 in every degree: the certificate of an isomorphism.
    pub fn zero() -> Self {
        TorsionCert::everywhere(LinExpr::zero())
    }

    pub fn everywhere(e: LinExpr) -> Self {
        TorsionCert { entries: BTreeMap::new(), tail: Some(Tail { from: None, exponent: e }) }
    }

    /// `e` on every degree `i ≥ from`.
    pub fn from_degree(from: i64, e: LinExpr) -> Self {
        TorsionCert { entries: BTreeMap::new(), tail: Some(Tail { from: Some(from), exponent: e }) }
    }

    /// Zero below `from` (down to `lo`), `e` from `from` on.
    pub fn connective(lo: i64, from: i64, e: LinExpr) -> Self {
        let mut c = TorsionCert::from_degree(from, e);
        for i in lo..from {
            c.entries.insert(i, LinExpr::zero());
        }
        c.normalize()
    }

    pub fn with(mut self, degree: i64, e: LinExpr) -> Self {
        self.entries.insert(degree, e);
        self.normalize()
    }

    pub fn from_entries(entries: BTreeMap<i64, LinExpr>, tail: Option<Tail>) -> Self {
        TorsionCert { entries, tail }.normalize()
    }

    pub fn entries(&self) -> &BTreeMap<i64, LinExpr> {
        &self.entries
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn get(&self, i: i64) -> Option<LinExpr> {
        if let Some(e) = self.entries.get(&i) {
            return Some(e.clone());
        }
        match &self.tail {
            Some(Tail { from, exponent }) if from.is_none_or(|f| i >= f) => Some(exponent.clone()),
            _ => None,
        }
    }

    /// Finite degrees at which something changes.
    fn breakpoints(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.entries.keys().copied().collect();
        if let Some(Tail { from: Some(f), .. }) = &self.tail {
            out.push(*f);
        }
        out
    }

    /// Lowest degree with a known exponent, if bounded below.
    pub fn lo(&self) -> Option<i64> {
        match &self.tail {
            Some(Tail { from: None, .. }) => None,
            _ => self.breakpoints().into_iter().min(),
        }
    }

    fn normalize(mut self) -> Self {
        if let Some(t) = &mut self.tail {
            let tail_e = t.exponent.clone();
            // canonical form: entries sit strictly below a bounded tail
            if let (Some(f), Some(&top)) = (t.from, self.entries.keys().next_back()) {
                if top >= f {
                    for i in f..top {
                        self.entries.entry(i).or_insert_with(|| tail_e.clone());
                    }
                    t.from = Some(top + 1);
                }
            }
            if t.from.is_none() {
                self.entries.retain(|_, e| *e != tail_e);
            }
            if let Some(f) = &mut t.from {
                while self.entries.get(&(*f - 1)) == Some(&tail_e) {
                    self.entries.remove(&(*f - 1));
                    *f -= 1;
                }
            }
        }
        self
    }

    /// Combine two certificates degreewise with `op`; a degree is defined
    /// only where both are.
    fn zip(&self, other: &TorsionCert, op: impl Fn(&LinExpr, &LinExpr) -> LinExpr) -> TorsionCert {
        let tail = match (&self.tail, &other.tail) {
            (Some(a), Some(b)) => Some(Tail {
                from: match (a.from, b.from) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(x.max(y)),
                },
                exponent: op(&a.exponent, &b.exponent),
            }),
            _ => None,
        };
        let mut points = self.breakpoints();
        points.extend(other.breakpoints());
        let mut entries = BTreeMap::new();
        if let (Some(lo), Some(hi)) = (points.iter().min(), points.iter().max()) {
            for i in *lo..=*hi {
                if let (Some(a), Some(b)) = (self.get(i), other.get(i)) {
                    entries.insert(i, op(&a, &b));
                }
            }
        }
        TorsionCert { entries, tail }.normalize()
    }

    /// Degreewise sum: bound for the cofiber of a composite.
    pub fn compose(&self, other: &TorsionCert) -> TorsionCert {
        self.zip(other, |a, b| a.add(b))
    }

    /// Degreewise coefficientwise maximum.
    pub fn join(&self, other: &TorsionCert) -> TorsionCert {
        self.zip(other, |a, b| a.join(b))
    }

    /// `C[k]`: degree `i` of the result is degree `i + k` of `self`.
    pub fn shift(&self, k: i64) -> TorsionCert {
        TorsionCert {
            entries: self.entries.iter().map(|(i, e)| (i - k, e.clone())).collect(),
            tail: self.tail.as_ref().map(|t| Tail {
                from: t.from.map(|f| f - k),
                exponent: t.exponent.clone(),
            }),
        }
    }

    /// Keep only degrees in `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> TorsionCert {
        let entries = (lo..=hi).filter_map(|i| self.get(i).map(|e| (i, e))).collect();
        TorsionCert { entries, tail: None }.normalize()
    }

    /// Entries of `over` replace those of `self`.
    pub fn overlay(&self, over: &TorsionCert) -> TorsionCert {
        let mut points = self.breakpoints();
        points.extend(over.breakpoints());
        let tail = over.tail.clone().or_else(|| self.tail.clone());
        let mut entries = BTreeMap::new();
        if let (Some(lo), Some(hi)) = (points.iter().min(), points.iter().max()) {
            for i in *lo..=*hi {
                if let Some(e) = over.get(i).or_else(|| self.get(i)) {
                    entries.insert(i, e);
                }
            }
        }
        // a lower tail from `self` below `over`'s tail start survives as entries only
        TorsionCert { entries, tail }.normalize()
    }

    pub fn map(&self, f: impl Fn(&LinExpr) -> LinExpr) -> TorsionCert {
        TorsionCert {
            entries: self.entries.iter().map(|(i, e)| (*i, f(e))).collect(),
            tail: self.tail.as_ref().map(|t| Tail { from: t.from, exponent: f(&t.exponent) }),
        }
        .normalize()
    }

    pub fn substitute(&self, subst: &Substitution) -> TorsionCert {
        self.map(|e| e.substitute(subst))
    }

    /// Same exponent in every known degree, if so.
    pub fn uniform_exponent(&self) -> Option<LinExpr> {
        let mut seen: Option<&LinExpr> = None;
        for e in self.entries.values().chain(self.tail.iter().map(|t| &t.exponent)) {
            match seen {
                None => seen = Some(e),
                Some(s) if s == e => {}
                _ => return None,
            }
        }
        seen.cloned()
    }

    /// Coefficientwise join over all known degrees.
    pub fn sup(&self) -> LinExpr {
        self.entries
            .values()
            .chain(self.tail.iter().map(|t| &t.exponent))
            .fold(LinExpr::zero(), |acc, e| acc.join(e))
    }

    /// Degreewise `self ≤ other` wherever `other` is known; `self` must be
    /// known there too.
    pub fn dominated_by(&self, other: &TorsionCert) -> bool {
        let mut points = self.breakpoints();
        points.extend(other.breakpoints());
        if let (Some(lo), Some(hi)) = (points.iter().min(), points.iter().max()) {
            for i in *lo..=*hi {
                if let Some(b) = other.get(i) {
                    match self.get(i) {
                        Some(a) if a.dominated_by(&b) => {}
                        _ => return false,
                    }
                }
            }
        }
        match (&self.tail, &other.tail) {
            (_, None) => true,
            // finite degrees between the two tail starts were checked above
            (Some(a), Some(b)) => {
                a.exponent.dominated_by(&b.exponent) && (a.from.is_none() || b.from.is_some())
            }
            (None, Some(_)) => false,
        }
    }

    /// Rows `(window label, exponent)` in degree order.
    pub fn rows(&self) -> Vec<(String, LinExpr)> {
        let mut out = Vec::new();
        if let Some(Tail { from: None, exponent }) = &self.tail {
            if self.entries.is_empty() {
                return vec![("all i".to_string(), exponent.clone())];
            }
        }
        for (i, e) in &self.entries {
            out.push((format!("{i}"), e.clone()));
        }
        if let Some(t) = &self.tail {
            let label = match t.from {
                Some(f) => format!("i≥{f}"),
                None => "other i".to_string(),
            };
            out.push((label, t.exponent.clone()));
        }
        out
    }
}

impl fmt::Display for TorsionCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows().into_iter().map(|(w, e)| format!("{w}:{e}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Exponent bound for the middle term of an exact triangle `X → Z → Y`:
/// `H^i(X) → H^i(Z) → H^i(Y)` is exact, so `cZ(i) = cX(i) + cY(i)`.
pub fn triangle(cx: &TorsionCert, cy: &TorsionCert) -> TorsionCert {
    cx.compose(cy)
}

/// Bound for the fiber `A` of `B → Q`: `A(i) = Q(i-1) + B(i)`.
pub fn fiber(cb: &TorsionCert, cq: &TorsionCert) -> TorsionCert {
    triangle(&cq.shift(-1), cb)
}

/// Restriction–corestriction through a subgroup of index `p^index_valuation`.
pub fn res_cores(c: &TorsionCert, index_valuation: &LinExpr) -> TorsionCert {
    c.map(|e| e.add(index_valuation))
}

/// Abutment bound for a spectral sequence `H^a(G, H^b(C)) ⇒ H^{a+b}`
/// with `G` of cohomological dimension `cd`.
///
/// `c` must be connective: zero below some degree `t`, a single exponent
/// `e` from `t` on. Degrees below `t` stay zero; every degree `≥ t` gets
/// `e` times the number of layers.
pub fn spectral_window(c: &TorsionCert, cd: &LinExpr, count: WindowCount) -> Result<TorsionCert> {
    let tail = c
        .tail()
        .ok_or_else(|| Error::PreconditionViolation("window needs a bounded-above exponent".into()))?;
    if c.entries().values().any(|e| !e.is_zero()) {
        return Err(Error::PreconditionViolation(
            "window input must be uniform above its vanishing range".into(),
        ));
    }
    let layers = match count {
        // a window of dimension 0 still has its single column
        WindowCount::Cd if cd.is_zero() => LinExpr::constant(1),
        WindowCount::Cd => cd.clone(),
        WindowCount::CdPlusOne => cd.add(&LinExpr::constant(1)),
    };
    let e = tail.exponent.mul(&layers);
    Ok(TorsionCert::from_entries(
        c.entries().clone(),
        Some(Tail { from: tail.from, exponent: e }),
    ))
}

/// Summation variant: the `E_2` page has columns `c_j` placed at
/// horizontal offset `j`; the bound at total degree `s` is the sum of
/// `c_j(s - j)` over contributing columns. Unknown contributions make the
/// degree unknown. Output covers `[lo, hi]`.
pub fn spectral_sum(columns: &[(i64, TorsionCert)], lo: i64, hi: i64) -> TorsionCert {
    let mut entries = BTreeMap::new();
    'deg: for s in lo..=hi {
        let mut total = LinExpr::zero();
        for (j, c) in columns {
            match c.get(s - j) {
                Some(e) => total = total.add(&e),
                None => continue 'deg,
            }
        }
        entries.insert(s, total);
    }
    TorsionCert::from_entries(entries, None)
}

/// Symbolic summation over `width` identical columns at offsets `1..=width`.
/// Rows below `vanish_below` must be zero; rows above `explicit_through`
/// must carry the tail exponent. At any total degree the columns hit
/// pairwise distinct rows, so the sum is at most
/// (rows `vanish_below..=explicit_through`) + width · (tail exponent).
pub fn spectral_sum_uniform(
    column: &TorsionCert,
    vanish_below: i64,
    explicit_through: i64,
    width: &LinExpr,
) -> Result<TorsionCert> {
    let tail = column
        .tail()
        .and_then(|t| t.from.map(|f| (f, t.exponent.clone())))
        .ok_or_else(|| Error::PreconditionViolation("column needs a bounded tail".into()))?;
    let lo = column.lo().unwrap_or(vanish_below).min(vanish_below);
    for i in lo..vanish_below {
        if column.get(i).is_none_or(|x| !x.is_zero()) {
            return Err(Error::PreconditionViolation(format!("column row {i} is not zero")));
        }
    }
    for i in explicit_through + 1..=tail.0.max(explicit_through + 1) {
        if column.get(i) != Some(tail.1.clone()) {
            return Err(Error::PreconditionViolation(format!("column row {i} is not the tail")));
        }
    }
    let mut bound = tail.1.mul(width);
    for i in vanish_below..=explicit_through {
        let x = column
            .get(i)
            .ok_or_else(|| Error::PreconditionViolation(format!("column row {i} unknown")))?;
        bound = bound.add(&x);
    }
    let entries = (lo..=vanish_below).map(|s| (s, LinExpr::zero())).collect();
    Ok(TorsionCert::from_entries(
        entries,
        Some(Tail { from: Some(vanish_below + 1), exponent: bound }),
    ))
}

/// Hochschild–Serre through a finite quotient whose order has valuation `a`:
/// positive-degree group cohomology is `p^a`-torsion, so
/// `H^s ≤ c(s) + a · #{j < s : c(j) ≠ 0}`. `c` must vanish in negative
/// degrees and be bounded above by a zero tail.
pub fn finite_descent(c: &TorsionCert, a: &LinExpr) -> Result<TorsionCert> {
    let tail = c
        .tail()
        .ok_or_else(|| Error::PreconditionViolation("descent input needs a tail".into()))?;
    let from = tail.from.filter(|_| tail.exponent.is_zero()).ok_or_else(|| {
        Error::PreconditionViolation("descent input must vanish in high degrees".into())
    })?;
    let lo = c.lo().unwrap_or(from);
    let mut entries = BTreeMap::new();
    let mut nonzero_below = 0u64;
    for s in lo..=from {
        let here = c.get(s).ok_or_else(|| {
            Error::PreconditionViolation(format!("descent input unknown in degree {s}"))
        })?;
        entries.insert(s, here.add(&a.scale(nonzero_below)));
        if !here.is_zero() {
            nonzero_below += 1;
        }
    }
    Ok(TorsionCert::from_entries(
        entries,
        Some(Tail { from: Some(from + 1), exponent: a.scale(nonzero_below) }),
    ))
}

/// Tame base change with ramification index `e`: exponents counted in a
/// uniformizer of the larger field become `ceil(k / e)` in the smaller one.
pub fn tame_rescale(c: &TorsionCert, e: u64) -> Result<TorsionCert> {
    if e == 0 {
        return Err(Error::InvalidArgument("ramification index must be positive".into()));
    }
    let numeric = c.entries().values().chain(c.tail().map(|t| &t.exponent)).all(|x| x.as_constant().is_some());
    if !numeric {
        return Err(Error::PreconditionViolation("tame rescaling needs numeric exponents".into()));
    }
    let out = c.map(|x| LinExpr::constant(x.as_constant().unwrap_or(0).div_ceil(e)));
    Ok(out)
}

/// Smallest integer `k` with `k ≥ num/den`.
pub fn ceil_ratio(num: u64, den: u64) -> u64 {
    num.div_ceil(den)
}

/// Symbols in a certificate.
pub fn cert_symbols(c: &TorsionCert) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = c
        .entries()
        .values()
        .chain(c.tail().map(|t| &t.exponent))
        .flat_map(|e| e.symbols())
        .collect();
    out.sort();
    out.dedup();
    out
}

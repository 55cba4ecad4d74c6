use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ramcoh_valuation::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Parameter alphabet for symbolic exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Stabilization level: K_inf / K_N sufficiently ramified.
    N,
    /// Image of the cyclotomic character is 1 + p^r Z_p.
    R,
    /// p-adic valuation of the twist j.
    Vj,
    /// Relative dimension.
    D,
    /// Twisted H^1 constant M_K.
    M,
    /// Uniform exponent of a cover's pieces.
    Nn,
    /// Dimension of a nerve.
    Delta,
    /// 0 for odd p, 1 for p = 2.
    Ap,
    /// Cohomological dimension of a window.
    Cd,
}

impl Symbol {
    pub const ALL: [Symbol; 9] = [
        Symbol::N,
        Symbol::R,
        Symbol::Vj,
        Symbol::D,
        Symbol::M,
        Symbol::Nn,
        Symbol::Delta,
        Symbol::Ap,
        Symbol::Cd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::N => "N",
            Symbol::R => "r",
            Symbol::Vj => "v_j",
            Symbol::D => "d",
            Symbol::M => "M",
            Symbol::Nn => "n",
            Symbol::Delta => "δ",
            Symbol::Ap => "a_p",
            Symbol::Cd => "cd",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "N" => Symbol::N,
            "r" => Symbol::R,
            "v_j" | "vj" | "v(j)" => Symbol::Vj,
            "d" => Symbol::D,
            "M" => Symbol::M,
            "n" => Symbol::Nn,
            "δ" | "delta" => Symbol::Delta,
            "a_p" | "ap" => Symbol::Ap,
            "cd" => Symbol::Cd,
            _ => return Err(Error::InvalidArgument(format!("unknown ledger symbol {s:?}"))),
        })
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sorted multiset of symbols; the empty monomial is the constant term.
pub type Monomial = Vec<Symbol>;

/// Exponent expression: a polynomial in the ledger symbols with
/// nonnegative integer coefficients. Products appear in `n(δ+1)` and `r·n²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinExpr {
    terms: BTreeMap<Monomial, u64>,
}

/// Values assigned to symbols; anything missing stays symbolic.
pub type Substitution = BTreeMap<Symbol, LinExpr>;

impl LinExpr {
    pub fn zero() -> Self {
        LinExpr::default()
    }

    pub fn constant(c: u64) -> Self {
        let mut e = LinExpr::zero();
        if c > 0 {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    pub fn sym(s: Symbol) -> Self {
        LinExpr::term(1, &[s])
    }

    pub fn term(coeff: u64, symbols: &[Symbol]) -> Self {
        let mut e = LinExpr::zero();
        if coeff > 0 {
            let mut m = symbols.to_vec();
            m.sort();
            e.terms.insert(m, coeff);
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn constant_term(&self) -> u64 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.terms.keys().flatten().copied().collect();
        out.sort();
        out.dedup();
        out
    }

    /// Total degree in `s`.
    pub fn degree_in(&self, s: Symbol) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().filter(|&&x| x == s).count())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            *out.terms.entry(m.clone()).or_insert(0) += c;
        }
        out
    }

    pub fn scale(&self, k: u64) -> LinExpr {
        if k == 0 {
            return LinExpr::zero();
        }
        LinExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &LinExpr) -> LinExpr {
        let mut out = LinExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m: Monomial = m1.iter().chain(m2.iter()).copied().collect();
                m.sort();
                *out.terms.entry(m).or_insert(0) += c1 * c2;
            }
        }
        out
    }

    /// Coefficientwise maximum; an upper bound for both since every
    /// parameter is nonnegative.
    pub fn join(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert(0);
            *e = (*e).max(*c);
        }
        out
    }

    /// Coefficientwise comparison: implies `self ≤ other` at every
    /// nonnegative assignment.
    pub fn dominated_by(&self, other: &LinExpr) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| other.terms.get(m).is_some_and(|d| c <= d))
    }

    pub fn substitute(&self, subst: &Substitution) -> LinExpr {
        let mut out = LinExpr::zero();
        for (m, c) in &self.terms {
            let mut acc = LinExpr::constant(*c);
            for s in m {
                let factor = subst.get(s).cloned().unwrap_or_else(|| LinExpr::sym(*s));
                acc = acc.mul(&factor);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Numeric value; fails if a symbol is unassigned.
    pub fn eval(&self, values: &BTreeMap<Symbol, u64>) -> Result<u64> {
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for s in m {
                let v = values.get(s).ok_or_else(|| {
                    Error::InvalidArgument(format!("no value for symbol {s}"))
                })?;
                t = t
                    .checked_mul(*v)
                    .ok_or_else(|| Error::ResourceLimit("exponent overflow".into()))?;
            }
            total = total
                .checked_add(t)
                .ok_or_else(|| Error::ResourceLimit("exponent overflow".into()))?;
        }
        Ok(total)
    }

    pub fn parse(s: &str) -> Result<LinExpr> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidArgument("empty expression".into()));
        }
        let mut out = LinExpr::zero();
        for term in s.split('+') {
            let mut coeff = 1u64;
            let mut mono = Vec::new();
            for factor in term.split(['·', '*']) {
                if factor.is_empty() {
                    return Err(Error::InvalidArgument(format!("malformed expression {s:?}")));
                }
                let digits: String = factor.chars().take_while(|c| c.is_ascii_digit()).collect();
                let rest = &factor[digits.len()..];
                if !digits.is_empty() {
                    coeff *= digits
                        .parse::<u64>()
                        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                }
                if rest.is_empty() {
                    continue;
                }
                let (name, power) = match rest.split_once('^') {
                    Some((n, k)) => (
                        n,
                        k.parse::<usize>()
                            .map_err(|e| Error::InvalidArgument(e.to_string()))?,
                    ),
                    None => (rest, 1),
                };
                let sym: Symbol = name.parse()?;
                mono.extend(std::iter::repeat(sym).take(power));
            }
            out = out.add(&LinExpr::term(coeff, &mono));
        }
        Ok(out)
    }
}

impl From<u64> for LinExpr {
    fn from(c: u64) -> Self {
        LinExpr::constant(c)
    }
}

impl From<Symbol> for LinExpr {
    fn from(s: Symbol) -> Self {
        LinExpr::sym(s)
    }
}

fn fmt_monomial(m: &[Symbol]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        if j - i > 1 {
            parts.push(format!("{}^{}", m[i], j - i));
        } else {
            parts.push(m[i].to_string());
        }
        i = j;
    }
    parts.join("·")
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // higher-degree monomials first, constant last
        let mut items: Vec<(&Monomial, &u64)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        let mut first = true;
        for (m, c) in items {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                f.write_str(&fmt_monomial(m))?;
            } else {
                write!(f, "{c}{}", fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl Serialize for LinExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LinExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LinExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used by the registry.
pub fn e(s: &str) -> LinExpr {
    LinExpr::parse(s).expect("well-formed literal")
}

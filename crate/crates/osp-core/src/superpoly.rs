//! Supercommutative polynomials in bosonic variables `x_i` and fermionic
//! variables `θ_p`, with exact rational coefficients.
//!
//! Variable indices are 0-based in this module. The text format is 1-based
//! (`x1`, `t1`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{OspError, Result};

/// Numbers of bosonic and fermionic variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSignature {
    pub num_bosonic: usize,
    pub num_fermionic: usize,
}

impl VariableSignature {
    pub fn new(num_bosonic: usize, num_fermionic: usize) -> Result<Self> {
        if num_fermionic > 64 {
            return Err(OspError::Invalid(format!(
                "at most 64 fermionic variables are supported, got {num_fermionic}"
            )));
        }
        Ok(Self { num_bosonic, num_fermionic })
    }
}

/// A variable reference, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Bos(usize),
    Ferm(usize),
}

/// `x^α θ_{i_1} ⋯ θ_{i_t}` with `i_1 < ⋯ < i_t`; the fermionic factors are a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub mask: u64,
}

impl Monomial {
    pub fn one(sig: VariableSignature) -> Self {
        Self { exps: vec![0; sig.num_bosonic], mask: 0 }
    }

    pub fn new(exps: Vec<u32>, mask: u64) -> Self {
        Self { exps, mask }
    }

    pub fn bosonic_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn fermionic_degree(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn total_degree(&self) -> u32 {
        self.bosonic_degree() + self.fermionic_degree()
    }

    /// Parity of the number of fermionic factors.
    pub fn is_odd(&self) -> bool {
        self.mask.count_ones() % 2 == 1
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.mask.cmp(&other.mask))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of moving `θ_p` from the far left past every set bit of `mask` below `p`.
fn ferm_sign(mask: u64, p: usize) -> bool {
    let below = if p == 0 { 0 } else { mask & ((1u64 << p) - 1) };
    below.count_ones() % 2 == 1
}

/// Product of two monomials: `None` when a fermionic variable repeats,
/// otherwise `(negative, product)`.
pub fn mono_mul(a: &Monomial, b: &Monomial) -> Result<Option<(bool, Monomial)>> {
    if a.exps.len() != b.exps.len() {
        return Err(OspError::SignatureMismatch);
    }
    if a.mask & b.mask != 0 {
        return Ok(None);
    }
    // Moving each θ of b leftwards past the θ's of a that are larger than it.
    let mut neg = false;
    let mut rest = b.mask;
    while rest != 0 {
        let q = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let above = a.mask >> q;
        if above.count_ones() % 2 == 1 {
            neg = !neg;
        }
    }
    let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
    Ok(Some((neg, Monomial { exps, mask: a.mask | b.mask })))
}

/// One basic action of a differential operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    MulBos(usize),
    MulFerm(usize),
    DerBos(usize),
    DerFerm(usize),
}

impl Action {
    fn is_odd(self) -> bool {
        matches!(self, Action::MulFerm(_) | Action::DerFerm(_))
    }

    /// Applies the action to `c · m` in place; returns false when the result is zero.
    fn apply(self, c: &mut BigInt, m: &mut Monomial) -> bool {
        match self {
            Action::MulBos(i) => {
                m.exps[i] += 1;
                true
            }
            Action::DerBos(i) => {
                let e = m.exps[i];
                if e == 0 {
                    return false;
                }
                *c *= e;
                m.exps[i] = e - 1;
                true
            }
            Action::MulFerm(p) => {
                let bit = 1u64 << p;
                if m.mask & bit != 0 {
                    return false;
                }
                if ferm_sign(m.mask, p) {
                    *c = -std::mem::take(c);
                }
                m.mask |= bit;
                true
            }
            Action::DerFerm(p) => {
                let bit = 1u64 << p;
                if m.mask & bit == 0 {
                    return false;
                }
                if ferm_sign(m.mask, p) {
                    *c = -std::mem::take(c);
                }
                m.mask &= !bit;
                true
            }
        }
    }

    fn check(self, sig: VariableSignature) -> Result<()> {
        let ok = match self {
            Action::MulBos(i) | Action::DerBos(i) => i < sig.num_bosonic,
            Action::MulFerm(p) | Action::DerFerm(p) => p < sig.num_fermionic,
        };
        if ok {
            Ok(())
        } else {
            Err(OspError::SignatureMismatch)
        }
    }
}

/// A sparse polynomial with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub sig: VariableSignature,
    pub terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(sig: VariableSignature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn one(sig: VariableSignature) -> Self {
        Self::monomial(sig, Monomial::one(sig), BigRational::one())
    }

    pub fn monomial(sig: VariableSignature, m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(m, c);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn x(sig: VariableSignature, i: usize) -> Self {
        let mut m = Monomial::one(sig);
        m.exps[i] = 1;
        Self::monomial(sig, m, BigRational::one())
    }

    /// The variable `θ_p` (0-based).
    pub fn theta(sig: VariableSignature, p: usize) -> Self {
        let mut m = Monomial::one(sig);
        m.mask = 1u64 << p;
        Self::monomial(sig, m, BigRational::one())
    }

    pub fn constant(sig: VariableSignature, c: BigRational) -> Self {
        Self::monomial(sig, Monomial::one(sig), c)
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

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
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

    pub fn add_assign_scaled(&mut self, other: &Polynomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_assign_scaled(other, &BigRational::one());
        r
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_assign_scaled(other, &-BigRational::one());
        r
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.sig);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Polynomial { sig: self.sig, terms }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-BigRational::one())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.sig != other.sig {
            return Err(OspError::SignatureMismatch);
        }
        let mut r = Polynomial::zero(self.sig);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = mono_mul(a, b)? {
                    let c = ca * cb;
                    r.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(r)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut r = Polynomial::one(self.sig);
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Rescales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// True when the two polynomials differ by a nonzero scalar.
    pub fn proportional(&self, other: &Polynomial) -> bool {
        !self.is_zero() && !other.is_zero() && self.monic() == other.monic()
    }

    pub fn parse(sig: VariableSignature, s: &str) -> Result<Polynomial> {
        parse_polynomial(sig, s)
    }
}

/// Super-derivative: ordinary for bosonic variables, left derivative for fermionic ones.
pub fn derive(p: &Polynomial, var: Var) -> Result<Polynomial> {
    let action = match var {
        Var::Bos(i) => Action::DerBos(i),
        Var::Ferm(q) => Action::DerFerm(q),
    };
    action.check(p.sig)?;
    Ok(SuperOperator::atom(BigRational::one(), vec![action]).apply(p))
}

/// Formal sum of coefficient-weighted action chains. Each chain is applied
/// rightmost action first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperOperator {
    pub atoms: Vec<(BigRational, Vec<Action>)>,
}

impl SuperOperator {
    pub fn zero() -> Self {
        Self { atoms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::atom(BigRational::one(), Vec::new())
    }

    pub fn atom(c: BigRational, chain: Vec<Action>) -> Self {
        Self { atoms: vec![(c, chain)] }
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::atom(c, Vec::new())
    }

    /// Parity of the first atom; `None` for the zero operator.
    pub fn parity(&self) -> Option<bool> {
        self.atoms
            .first()
            .map(|(_, ch)| ch.iter().filter(|a| a.is_odd()).count() % 2 == 1)
    }

    pub fn check_parity(&self) -> Result<bool> {
        let p = self.parity().unwrap_or(false);
        for (_, ch) in &self.atoms {
            if (ch.iter().filter(|a| a.is_odd()).count() % 2 == 1) != p {
                return Err(OspError::MixedParity);
            }
        }
        Ok(p)
    }

    pub fn plus(mut self, other: SuperOperator) -> SuperOperator {
        self.atoms.extend(other.atoms);
        self
    }

    pub fn scaled(mut self, c: &BigRational) -> SuperOperator {
        for (d, _) in &mut self.atoms {
            *d *= c;
        }
        self
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SuperOperator) -> SuperOperator {
        let mut atoms = Vec::new();
        for (c1, ch1) in &self.atoms {
            for (c2, ch2) in &other.atoms {
                let mut ch = ch1.clone();
                ch.extend_from_slice(ch2);
                atoms.push((c1 * c2, ch));
            }
        }
        SuperOperator { atoms }
    }

    pub fn check(&self, sig: VariableSignature) -> Result<()> {
        for (_, ch) in &self.atoms {
            for a in ch {
                a.check(sig)?;
            }
        }
        Ok(())
    }

    /// Applies the operator to one monomial with unit coefficient.
    pub fn apply_monomial(&self, sig: VariableSignature, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(sig);
        self.apply_term_into(m, &BigRational::one(), &mut out);
        out
    }

    fn apply_term_into(&self, m: &Monomial, c: &BigRational, out: &mut Polynomial) {
        for (ac, chain) in &self.atoms {
            let mut mm = m.clone();
            let mut k = BigInt::one();
            let mut alive = true;
            for a in chain.iter().rev() {
                if !a.apply(&mut k, &mut mm) {
                    alive = false;
                    break;
                }
            }
            if alive {
                out.add_term(mm, ac * c * BigRational::from_integer(k));
            }
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.sig);
        for (m, c) in &p.terms {
            self.apply_term_into(m, c, &mut out);
        }
        out
    }
}

/// Applies `op` to `p` after checking indices against the signature.
pub fn apply_operator(op: &SuperOperator, p: &Polynomial) -> Result<Polynomial> {
    op.check(p.sig)?;
    Ok(op.apply(p))
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, " ")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    let mut rest = m.mask;
    while rest != 0 {
        let p = rest.trailing_zeros();
        rest &= rest - 1;
        if !first {
            write!(f, " ")?;
        }
        first = false;
        write!(f, "t{}", p + 1)?;
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.iter().all(|&e| e == 0) && self.mask == 0 {
            return write!(f, "1");
        }
        fmt_monomial(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if m.exps.iter().any(|&e| e > 0) || m.mask != 0 {
                write!(f, " * ")?;
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

fn parse_err(s: &str, why: &str) -> OspError {
    OspError::Parse(format!("{why} in {s:?}"))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        BigInt::from_str(s).ok().map(BigRational::from_integer)
    }
}

fn parse_term(sig: VariableSignature, term: &str) -> Result<(BigRational, Monomial, bool)> {
    if let Some(rest) = term.trim().strip_prefix('-') {
        let (c, m, neg) = parse_term(sig, rest)?;
        return Ok((-c, m, neg));
    }
    let (coef, mono) = match term.split_once('*') {
        Some((c, m)) => (
            parse_rational(c).ok_or_else(|| parse_err(term, "bad coefficient"))?,
            m.trim(),
        ),
        None => match parse_rational(term) {
            Some(c) => (c, ""),
            None => (BigRational::one(), term.trim()),
        },
    };
    let mut m = Monomial::one(sig);
    // Fermionic factors in the order written; the caller reorders with a sign.
    let mut neg = false;
    for tok in mono.split_whitespace() {
        if let Some(rest) = tok.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| parse_err(term, "bad exponent"))?),
                None => (rest, 1),
            };
            let i: usize = idx.parse().map_err(|_| parse_err(term, "bad variable index"))?;
            if i == 0 || i > sig.num_bosonic {
                return Err(parse_err(term, "bosonic index out of range"));
            }
            m.exps[i - 1] += exp;
        } else if let Some(rest) = tok.strip_prefix('t') {
            let p: usize = rest.parse().map_err(|_| parse_err(term, "bad variable index"))?;
            if p == 0 || p > sig.num_fermionic {
                return Err(parse_err(term, "fermionic index out of range"));
            }
            let bit = 1u64 << (p - 1);
            if m.mask & bit != 0 {
                return Ok((BigRational::zero(), m, false));
            }
            // Appending on the right passes over the larger factors already present.
            if (m.mask >> (p - 1)).count_ones() % 2 == 1 {
                neg = !neg;
            }
            m.mask |= bit;
        } else {
            return Err(parse_err(term, "unknown token"));
        }
    }
    Ok((coef, m, neg))
}

/// Parses the text format written by `Display`; ` - ` between terms and a
/// leading `-` are also accepted.
pub fn parse_polynomial(sig: VariableSignature, s: &str) -> Result<Polynomial> {
    let s = s.trim();
    let mut p = Polynomial::zero(sig);
    if s == "0" {
        return Ok(p);
    }
    if s.is_empty() {
        return Err(parse_err(s, "empty input"));
    }
    let s = s.replace(" - ", " + -");
    for term in s.split(" + ") {
        let (c, m, neg) = parse_term(sig, term)?;
        p.add_term(m, if neg { -c } else { c });
    }
    Ok(p)
}

/// Rational from an integer.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `a / b`.
pub fn qq(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> VariableSignature {
        VariableSignature::new(2, 2).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(sig(), s).unwrap()
    }

    #[test]
    fn theta_squared_vanishes() {
        let t1 = Monomial::new(vec![0, 0], 0b01);
        assert!(mono_mul(&t1, &t1).unwrap().is_none());
    }

    #[test]
    fn swapping_thetas_costs_a_sign() {
        let t1 = Monomial::new(vec![0, 0], 0b01);
        let t2 = Monomial::new(vec![0, 0], 0b10);
        let (neg, m) = mono_mul(&t2, &t1).unwrap().unwrap();
        assert!(neg);
        assert_eq!(m.mask, 0b11);
    }

    #[test]
    fn sorted_product_keeps_sign() {
        let a = Monomial::new(vec![2, 0], 0b01);
        let b = Monomial::new(vec![1, 0], 0b10);
        let (neg, m) = mono_mul(&a, &b).unwrap().unwrap();
        assert!(!neg);
        assert_eq!(m, Monomial::new(vec![3, 0], 0b11));
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = Monomial::new(vec![1], 0);
        let b = Monomial::new(vec![1, 0], 0);
        assert!(mono_mul(&a, &b).is_err());
    }

    #[test]
    fn left_fermionic_derivative() {
        assert_eq!(derive(&p("t1 t2"), Var::Ferm(0)).unwrap(), p("t2"));
        assert_eq!(derive(&p("t1 t2"), Var::Ferm(1)).unwrap(), p("-1 * t1"));
        assert_eq!(derive(&p("x1^2 t1"), Var::Bos(0)).unwrap(), p("2 * x1 t1"));
    }

    #[test]
    fn operator_chains_apply_rightmost_first() {
        let op = SuperOperator::atom(q(1), vec![Action::MulFerm(0), Action::DerFerm(1)]);
        assert_eq!(op.apply(&p("t2")), p("t1"));
        let dd = SuperOperator::atom(q(1), vec![Action::DerFerm(0), Action::DerFerm(1)]);
        assert_eq!(dd.apply(&p("t1 t2")), p("-1"));
        let xx = SuperOperator::atom(q(-1), vec![Action::MulBos(0), Action::MulBos(1)]);
        assert_eq!(xx.apply(&p("1")), p("-1 * x1 x2"));
    }

    #[test]
    fn text_round_trip() {
        let s = "-3/2 + 1 * x1 + 2 * x1 x2^3 t1 t2";
        let poly = p(s);
        assert_eq!(poly.to_string(), "-3/2 + 1 * x1 + 2 * x1 x2^3 t1 t2");
        assert_eq!(p(&poly.to_string()), poly);
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn parser_reorders_thetas_with_sign() {
        assert_eq!(p("t2 t1"), p("-1 * t1 t2"));
        assert!(p("t1 t1").is_zero());
        assert!(Polynomial::parse(sig(), "x3").is_err());
        assert!(Polynomial::parse(sig(), "y1").is_err());
    }

    #[test]
    fn canonical_order_is_graded() {
        let a = Monomial::new(vec![0, 0], 0b11);
        let b = Monomial::new(vec![1, 0], 0);
        let c = Monomial::new(vec![0, 1], 0b01);
        assert!(b < a);
        assert!(a < c);
    }
}

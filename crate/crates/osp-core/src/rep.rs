//! Orthosymplectic structure data inside `gl(m|2n)` and its realizations as
//! differential operators on the two polynomial families.
//!
//! Matrix indices and the swap data (`r`, `T`) are 1-based, matching the usual
//! matrix-unit notation `E_{i,j}`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OspError, Result};
use crate::superpoly::{q, qq, Action, Monomial, Polynomial, SuperOperator, VariableSignature};

/// Which polynomial realization is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Bosonic `x_1..x_m`, fermionic `θ_1..θ_2n`; `x_1..x_r` are swapped.
    A { r: usize },
    /// Bosonic `x_1..x_2n`, fermionic `θ_1..θ_m`; `x_i` for `i ∈ T` are swapped.
    Aprime { t: Vec<usize> },
}

/// One representation: `osp(m|2n)` with `m = 2·m1 + odd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepConfig {
    pub odd: bool,
    pub m1: usize,
    pub n: usize,
    pub family: Family,
}

impl RepConfig {
    pub fn a(odd: bool, m1: usize, n: usize, r: usize) -> Result<Self> {
        let cfg = Self { odd, m1, n, family: Family::A { r } };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn aprime(odd: bool, m1: usize, n: usize, t: &[usize]) -> Result<Self> {
        let mut t = t.to_vec();
        t.sort_unstable();
        t.dedup();
        let cfg = Self { odd, m1, n, family: Family::Aprime { t } };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m1 == 0 && !self.odd {
            return Err(OspError::Invalid("m1 must be positive for even m".into()));
        }
        if self.n == 0 {
            return Err(OspError::Invalid("n must be positive".into()));
        }
        match &self.family {
            Family::A { r } if *r > self.m1 => {
                Err(OspError::Invalid(format!("r = {r} exceeds m1 = {}", self.m1)))
            }
            Family::Aprime { t } if t.iter().any(|&i| i == 0 || i > 2 * self.n) => {
                Err(OspError::Invalid(format!("T must be a subset of 1..{}", 2 * self.n)))
            }
            _ => Ok(()),
        }
    }

    /// `m = 2·m1` or `2·m1 + 1`.
    pub fn m(&self) -> usize {
        2 * self.m1 + usize::from(self.odd)
    }

    /// First matrix index of the symplectic block, minus one.
    pub fn sp_offset(&self) -> usize {
        self.m()
    }

    pub fn signature(&self) -> VariableSignature {
        match self.family {
            Family::A { .. } => VariableSignature { num_bosonic: self.m(), num_fermionic: 2 * self.n },
            Family::Aprime { .. } => {
                VariableSignature { num_bosonic: 2 * self.n, num_fermionic: self.m() }
            }
        }
    }

    pub fn is_aprime(&self) -> bool {
        matches!(self.family, Family::Aprime { .. })
    }

    /// Whether bosonic variable `x_i` (1-based) is swapped.
    pub fn swapped(&self, i: usize) -> bool {
        match &self.family {
            Family::A { r } => i <= *r,
            Family::Aprime { t } => t.contains(&i),
        }
    }

    /// Short identifier such as `A:even:m1=1,n=1,r=0` or `Aprime:even:m1=1,n=2,T=1,2`.
    pub fn id(&self) -> String {
        let par = if self.odd { "odd" } else { "even" };
        match &self.family {
            Family::A { r } => format!("A:{par}:m1={},n={},r={r}", self.m1, self.n),
            Family::Aprime { t } => {
                let ts: Vec<String> = t.iter().map(|i| i.to_string()).collect();
                format!("Aprime:{par}:m1={},n={},T={}", self.m1, self.n, ts.join(","))
            }
        }
    }

    /// Flat record used in reports.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("m_parity".into(), (if self.odd { "odd" } else { "even" }).into());
        map.insert("m1".into(), self.m1.into());
        map.insert("n".into(), self.n.into());
        match &self.family {
            Family::A { r } => {
                map.insert("family".into(), "A".into());
                map.insert("r".into(), (*r).into());
            }
            Family::Aprime { t } => {
                map.insert("family".into(), "Aprime".into());
                map.insert("T".into(), t.clone().into());
            }
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for RepConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// `k` of a monomial under the grading that the representation preserves.
pub fn k_degree(cfg: &RepConfig, m: &Monomial) -> i64 {
    let t = i64::from(m.fermionic_degree());
    let bos: i64 = m
        .exps
        .iter()
        .enumerate()
        .map(|(i, &e)| if cfg.swapped(i + 1) { -i64::from(e) } else { i64::from(e) })
        .sum();
    t + bos
}

/// A linear combination of matrix units `E_{i,j}` of `gl(m|2n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    pub m: usize,
    pub terms: BTreeMap<(usize, usize), BigRational>,
}

impl MatrixElement {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    pub fn unit(m: usize, i: usize, j: usize) -> Self {
        let mut e = Self::zero(m);
        e.add(i, j, BigRational::one());
        e
    }

    /// `E_{a,b} + s·E_{c,d}` with `s = ±1`.
    pub fn pair(m: usize, a: (usize, usize), s: i64, c: (usize, usize)) -> Self {
        let mut e = Self::unit(m, a.0, a.1);
        e.add(c.0, c.1, q(s));
        e
    }

    pub fn add(&mut self, i: usize, j: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Block parity of one matrix unit.
    pub fn unit_is_odd(m: usize, i: usize, j: usize) -> bool {
        (i <= m) != (j <= m)
    }

    /// Common parity of all terms; the zero element counts as even.
    pub fn parity(&self) -> Result<bool> {
        let mut it = self.terms.keys().map(|&(i, j)| Self::unit_is_odd(self.m, i, j));
        let Some(p) = it.next() else { return Ok(false) };
        if it.all(|x| x == p) {
            Ok(p)
        } else {
            Err(OspError::MixedParity)
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut e = Self::zero(self.m);
        for (&(i, j), d) in &self.terms {
            e.add(i, j, d * c);
        }
        e
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "E({i},{j})")?;
        }
        Ok(())
    }
}

/// The Lie superbracket of two parity-homogeneous elements.
pub fn superbracket(u: &MatrixElement, v: &MatrixElement) -> Result<MatrixElement> {
    if u.m != v.m {
        return Err(OspError::Invalid("elements of different algebras".into()));
    }
    let pu = u.parity()?;
    let pv = v.parity()?;
    let sign = if pu && pv { q(-1) } else { q(1) };
    let mut out = MatrixElement::zero(u.m);
    for (&(a, b), c1) in &u.terms {
        for (&(c, d), c2) in &v.terms {
            let cc = c1 * c2;
            if b == c {
                out.add(a, d, cc.clone());
            }
            if d == a {
                out.add(c, b, -(&sign * &cc));
            }
        }
    }
    Ok(out)
}

/// Matrix unit `E_{i,j}` as an operator: `E_{i,j} = X_i ∘ D_j`, where the
/// raising factor `X` is multiplication (or `∂` for a swapped variable) and the
/// lowering factor `D` is `∂` (or `−x` for a swapped variable).
pub fn rep_matrix_unit(cfg: &RepConfig, i: usize, j: usize) -> Result<SuperOperator> {
    let total = cfg.m() + 2 * cfg.n;
    if i == 0 || j == 0 || i > total || j > total {
        return Err(OspError::IndexOutOfRange(format!("E({i},{j}) with m+2n = {total}")));
    }
    let (x, xs) = raising(cfg, i);
    let (d, ds) = lowering(cfg, j);
    Ok(SuperOperator::atom(q(xs * ds), vec![x, d]))
}

/// Maps a gl index to `(is_bosonic, 0-based variable index)`.
fn variable_of(cfg: &RepConfig, a: usize) -> (bool, usize) {
    let m = cfg.m();
    match cfg.family {
        Family::A { .. } => {
            if a <= m {
                (true, a - 1)
            } else {
                (false, a - m - 1)
            }
        }
        Family::Aprime { .. } => {
            if a <= m {
                (false, a - 1)
            } else {
                (true, a - m - 1)
            }
        }
    }
}

fn raising(cfg: &RepConfig, a: usize) -> (Action, i64) {
    match variable_of(cfg, a) {
        (true, i) if cfg.swapped(i + 1) => (Action::DerBos(i), 1),
        (true, i) => (Action::MulBos(i), 1),
        (false, p) => (Action::MulFerm(p), 1),
    }
}

fn lowering(cfg: &RepConfig, b: usize) -> (Action, i64) {
    match variable_of(cfg, b) {
        (true, i) if cfg.swapped(i + 1) => (Action::MulBos(i), -1),
        (true, i) => (Action::DerBos(i), 1),
        (false, p) => (Action::DerFerm(p), 1),
    }
}

/// Operator of an arbitrary element.
pub fn rep_element(cfg: &RepConfig, e: &MatrixElement) -> Result<SuperOperator> {
    let mut op = SuperOperator::zero();
    for (&(i, j), c) in &e.terms {
        op = op.plus(rep_matrix_unit(cfg, i, j)?.scaled(c));
    }
    Ok(op)
}

/// Subsets of the basis of `osp(m|2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    All,
    Even,
    Odd,
    Positive,
    PositiveEven,
    Cartan,
    /// Block-diagonal subalgebra `L ≅ gl(m1|n)` (even `m`); it commutes with the
    /// primed-family `Δ` and `η`.
    GlBlock,
}

/// A basis element with its classification.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub elem: MatrixElement,
    pub odd: bool,
    pub positive: bool,
    pub cartan: bool,
    pub gl_block: bool,
}

/// The basis of `osp(m|2n)` as combinations of matrix units: Cartan elements
/// and root vectors, each listed once with its standard sign.
pub fn osp_elements(cfg: &RepConfig) -> Vec<BasisElement> {
    let m1 = cfg.m1;
    let n = cfg.n;
    let m = cfg.m();
    let s = cfg.sp_offset();
    let o = 2 * m1 + 1;
    let mut out = Vec::new();
    let block = |a: usize| {
        if a <= m1 {
            1
        } else if a <= 2 * m1 {
            2
        } else if a <= s {
            0
        } else if a <= s + n {
            3
        } else {
            4
        }
    };
    let mut push = |elem: MatrixElement, positive: bool, cartan: bool| {
        let odd = elem.parity().expect("homogeneous by construction");
        let gl_block = !cfg.odd
            && elem.terms.keys().all(|&(a, b)| {
                matches!(
                    (block(a), block(b)),
                    (1, 1) | (1, 4) | (2, 2) | (2, 3) | (3, 2) | (3, 3) | (4, 1) | (4, 4)
                )
            });
        out.push(BasisElement { elem, odd, positive, cartan, gl_block });
    };
    // Orthogonal block.
    for i in 1..=m1 {
        for j in 1..=m1 {
            push(MatrixElement::pair(m, (i, j), -1, (m1 + j, m1 + i)), i < j, i == j);
        }
    }
    for i in 1..=m1 {
        for j in i + 1..=m1 {
            push(MatrixElement::pair(m, (i, m1 + j), -1, (j, m1 + i)), true, false);
            push(MatrixElement::pair(m, (m1 + i, j), -1, (m1 + j, i)), false, false);
        }
    }
    if cfg.odd {
        for i in 1..=m1 {
            push(MatrixElement::pair(m, (i, o), -1, (o, m1 + i)), true, false);
            push(MatrixElement::pair(m, (m1 + i, o), -1, (o, i)), false, false);
        }
    }
    // Symplectic block.
    for p in 1..=n {
        for qq in 1..=n {
            push(MatrixElement::pair(m, (s + p, s + qq), -1, (s + n + qq, s + n + p)), p < qq, p == qq);
        }
    }
    for p in 1..=n {
        for qq in p..=n {
            push(sym_pair(m, (s + p, s + n + qq), (s + qq, s + n + p)), true, false);
            push(sym_pair(m, (s + n + p, s + qq), (s + n + qq, s + p)), false, false);
        }
    }
    // Odd part.
    for i in 1..=m1 {
        for p in 1..=n {
            push(MatrixElement::pair(m, (i, s + p), -1, (s + n + p, m1 + i)), true, false);
            push(MatrixElement::pair(m, (i, s + n + p), 1, (s + p, m1 + i)), true, false);
            push(MatrixElement::pair(m, (m1 + i, s + p), -1, (s + n + p, i)), false, false);
            push(MatrixElement::pair(m, (m1 + i, s + n + p), 1, (s + p, i)), false, false);
        }
    }
    if cfg.odd {
        for p in 1..=n {
            push(MatrixElement::pair(m, (o, s + p), -1, (s + n + p, o)), false, false);
            push(MatrixElement::pair(m, (o, s + n + p), 1, (s + p, o)), true, false);
        }
    }
    out
}

/// `E_a + E_c`, collapsing to `2·E_a` on the diagonal of the symmetric blocks.
fn sym_pair(m: usize, a: (usize, usize), c: (usize, usize)) -> MatrixElement {
    let mut e = MatrixElement::unit(m, a.0, a.1);
    e.add(c.0, c.1, BigRational::one());
    e
}

/// Elements of one part of the basis.
pub fn osp_basis(cfg: &RepConfig, part: Part) -> Vec<MatrixElement> {
    osp_elements(cfg)
        .into_iter()
        .filter(|b| part_contains(part, b))
        .map(|b| b.elem)
        .collect()
}

fn part_contains(part: Part, b: &BasisElement) -> bool {
    match part {
        Part::All => true,
        Part::Even => !b.odd,
        Part::Odd => b.odd,
        Part::Positive => b.positive,
        Part::PositiveEven => b.positive && !b.odd,
        Part::Cartan => b.cartan,
        Part::GlBlock => b.gl_block,
    }
}

/// A weight in ε/δ coordinates: eigenvalues of the Cartan basis, orthogonal
/// block first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub eps_so: Vec<BigRational>,
    pub eps_sp: Vec<BigRational>,
}

impl Weight {
    pub fn zero(m1: usize, n: usize) -> Self {
        Self { eps_so: vec![BigRational::zero(); m1], eps_sp: vec![BigRational::zero(); n] }
    }

    pub fn from_ints(so: &[i64], sp: &[i64]) -> Self {
        Self { eps_so: so.iter().map(|&v| q(v)).collect(), eps_sp: sp.iter().map(|&v| q(v)).collect() }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            eps_so: self.eps_so.iter().zip(&other.eps_so).map(|(a, b)| a + b).collect(),
            eps_sp: self.eps_sp.iter().zip(&other.eps_sp).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Weight {
        Weight {
            eps_so: self.eps_so.iter().map(|a| a * c).collect(),
            eps_sp: self.eps_sp.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let so: Vec<String> = self.eps_so.iter().map(|c| c.to_string()).collect();
        let sp: Vec<String> = self.eps_sp.iter().map(|c| c.to_string()).collect();
        write!(f, "({}|{})", so.join(","), sp.join(","))
    }
}

/// Fundamental weight `λ_i` of the orthogonal block in ε-coordinates.
/// `λ_0` is zero.
pub fn lambda(odd: bool, m1: usize, n: usize, i: usize) -> Weight {
    let mut w = Weight::zero(m1, n);
    if i == 0 || i > m1 {
        return w;
    }
    let half = qq(1, 2);
    if odd {
        let c = if i == m1 { half } else { q(1) };
        for e in w.eps_so.iter_mut().take(i) {
            *e = c.clone();
        }
    } else if i + 2 <= m1 {
        for e in w.eps_so.iter_mut().take(i) {
            *e = q(1);
        }
    } else if i + 1 == m1 {
        for e in w.eps_so.iter_mut().take(m1 - 1) {
            *e = half.clone();
        }
        w.eps_so[m1 - 1] = -half;
    } else {
        for e in w.eps_so.iter_mut() {
            *e = half.clone();
        }
    }
    w
}

/// Fundamental weight `ν_j = δ_1 + ⋯ + δ_j` of the symplectic block.
pub fn nu(m1: usize, n: usize, j: usize) -> Weight {
    let mut w = Weight::zero(m1, n);
    for e in w.eps_sp.iter_mut().take(j.min(n)) {
        *e = q(1);
    }
    w
}

/// The representation with its operators precomputed.
#[derive(Clone, Debug)]
pub struct Rep {
    pub cfg: RepConfig,
    pub sig: VariableSignature,
    pub elements: Vec<BasisElement>,
    pub ops: Vec<SuperOperator>,
    cartan_ops: Vec<SuperOperator>,
}

impl Rep {
    pub fn new(cfg: &RepConfig) -> Result<Self> {
        cfg.validate()?;
        let elements = osp_elements(cfg);
        let ops = elements
            .iter()
            .map(|b| rep_element(cfg, &b.elem))
            .collect::<Result<Vec<_>>>()?;
        let cartan_ops = elements
            .iter()
            .zip(&ops)
            .filter(|(b, _)| b.cartan)
            .map(|(_, o)| o.clone())
            .collect();
        Ok(Self { cfg: cfg.clone(), sig: cfg.signature(), elements, ops, cartan_ops })
    }

    /// Operators of one part of the basis.
    pub fn part_ops(&self, part: Part) -> Vec<&SuperOperator> {
        self.elements
            .iter()
            .zip(&self.ops)
            .filter(|(b, _)| part_contains(part, b))
            .map(|(_, o)| o)
            .collect()
    }

    /// Indices into `elements` of one part.
    pub fn part_indices(&self, part: Part) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| part_contains(part, &self.elements[i])).collect()
    }

    /// Weight of a monomial (every monomial is a weight vector).
    pub fn monomial_weight(&self, m: &Monomial) -> Vec<i64> {
        self.cartan_ops
            .iter()
            .map(|op| {
                let img = op.apply_monomial(self.sig, m);
                let c = img.coeff(m);
                debug_assert!(img.len() <= 1);
                c.to_integer().try_into().expect("small weight")
            })
            .collect()
    }

    fn split_weight(&self, v: Vec<BigRational>) -> Weight {
        let mut v = v;
        let sp = v.split_off(self.cfg.m1);
        Weight { eps_so: v, eps_sp: sp }
    }

    /// Weight of `p` when it is a simultaneous eigenvector of the Cartan basis.
    pub fn weight_of(&self, p: &Polynomial) -> Result<Weight> {
        let Some((lead, c)) = p.leading() else {
            return Err(OspError::Invalid("zero polynomial has no weight".into()));
        };
        let mut vals = Vec::with_capacity(self.cartan_ops.len());
        for op in &self.cartan_ops {
            let img = op.apply(p);
            let lambda = img.coeff(lead) / c;
            if img != p.scale(&lambda) {
                return Err(OspError::NotAWeightVector);
            }
            vals.push(lambda);
        }
        Ok(self.split_weight(vals))
    }
}

/// Weight of `p` under `cfg`.
pub fn weight_of(cfg: &RepConfig, p: &Polynomial) -> Result<Weight> {
    Rep::new(cfg)?.weight_of(p)
}

fn op2(c: BigRational, a: Action, b: Action) -> SuperOperator {
    SuperOperator::atom(c, vec![a, b])
}

/// `Δ` and `η` for the configuration. For the primed family only the normal
/// form `T = 1..n` with even `m` is supported; there the pair commutes with the
/// block subalgebra `L`, not with all of `osp`. Use [`AprimeConjugation`] to
/// move other `S1 = T1 = ∅` configurations to the normal form.
pub fn delta_eta(cfg: &RepConfig) -> Result<(SuperOperator, SuperOperator)> {
    cfg.validate()?;
    let m1 = cfg.m1;
    let n = cfg.n;
    match &cfg.family {
        Family::A { r } => {
            let r = *r;
            // Weights: bosonic pairs and the unpaired variable carry 2 and 1 in
            // the odd case, fermionic pairs 2; in the even case all carry 1.
            let (wx, wt) = if cfg.odd { (q(2), q(2)) } else { (q(1), q(1)) };
            let mut d = SuperOperator::zero();
            let mut e = SuperOperator::zero();
            for i in 0..m1 {
                if i < r {
                    d = d.plus(op2(-wx.clone(), Action::MulBos(i), Action::DerBos(m1 + i)));
                    e = e.plus(op2(wx.clone(), Action::MulBos(m1 + i), Action::DerBos(i)));
                } else {
                    d = d.plus(op2(wx.clone(), Action::DerBos(i), Action::DerBos(m1 + i)));
                    e = e.plus(op2(wx.clone(), Action::MulBos(i), Action::MulBos(m1 + i)));
                }
            }
            if cfg.odd {
                let u = 2 * m1;
                d = d.plus(op2(q(1), Action::DerBos(u), Action::DerBos(u)));
                e = e.plus(op2(q(1), Action::MulBos(u), Action::MulBos(u)));
            }
            for j in 0..n {
                d = d.plus(op2(wt.clone(), Action::DerFerm(j), Action::DerFerm(n + j)));
                e = e.plus(op2(wt.clone(), Action::MulFerm(j), Action::MulFerm(n + j)));
            }
            Ok((d, e))
        }
        Family::Aprime { t } => {
            if cfg.odd {
                return Err(OspError::Invalid("no Δ/η pair for the primed family with odd m".into()));
            }
            if *t != (1..=n).collect::<Vec<_>>() {
                return Err(OspError::Invalid(format!(
                    "Δ/η for the primed family need T = 1..n; got {}",
                    cfg.id()
                )));
            }
            let mut d = SuperOperator::zero();
            let mut e = SuperOperator::zero();
            for i in 0..n {
                d = d.plus(op2(q(-1), Action::MulBos(i), Action::DerBos(n + i)));
                e = e.plus(op2(q(1), Action::MulBos(n + i), Action::DerBos(i)));
            }
            for j in 0..m1 {
                d = d.plus(op2(q(1), Action::DerFerm(j), Action::DerFerm(m1 + j)));
                e = e.plus(op2(q(1), Action::MulFerm(j), Action::MulFerm(m1 + j)));
            }
            Ok((d, e))
        }
    }
}

/// The markers `S1` (pairs with both members unswapped) and `T1` (both swapped).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetMarkers {
    pub s1: Vec<usize>,
    pub t1: Vec<usize>,
}

pub fn markers(cfg: &RepConfig) -> Result<SubsetMarkers> {
    let Family::Aprime { t } = &cfg.family else {
        return Err(OspError::Invalid("markers are defined for the primed family".into()));
    };
    let mut s1 = Vec::new();
    let mut t1 = Vec::new();
    for i in 1..=cfg.n {
        match (t.contains(&i), t.contains(&(cfg.n + i))) {
            (false, false) => s1.push(i),
            (true, true) => t1.push(i),
            _ => {}
        }
    }
    Ok(SubsetMarkers { s1, t1 })
}

/// Signed variable permutation taking a primed configuration with
/// `S1 = T1 = ∅` to the normal form `T = 1..n`.
///
/// For each pair `(i, n+i)` with `n+i ∈ T`, the normal-form variables are
/// `x'_i = x_{n+i}` and `x'_{n+i} = −x_i`.
#[derive(Clone, Debug)]
pub struct AprimeConjugation {
    pub n: usize,
    pub flipped: Vec<bool>,
}

impl AprimeConjugation {
    /// The normal-form configuration `T = 1..n` with the same `m1`, `n`.
    pub fn normal_config(cfg: &RepConfig) -> Result<RepConfig> {
        RepConfig::aprime(cfg.odd, cfg.m1, cfg.n, &(1..=cfg.n).collect::<Vec<_>>())
    }

    pub fn new(cfg: &RepConfig) -> Result<Self> {
        let mk = markers(cfg)?;
        if !mk.s1.is_empty() || !mk.t1.is_empty() {
            return Err(OspError::Invalid(format!(
                "{} has S1 or T1 nonempty; no normal form",
                cfg.id()
            )));
        }
        let flipped = (1..=cfg.n).map(|i| !cfg.swapped(i)).collect();
        Ok(Self { n: cfg.n, flipped })
    }

    /// Normal-form variable `x'_{k+1}` (0-based `k`) as `(actual index, sign)`.
    pub fn var(&self, k: usize) -> (usize, i64) {
        let n = self.n;
        let pair = k % n;
        if !self.flipped[pair] {
            return (k, 1);
        }
        if k < n {
            (n + k, 1)
        } else {
            (pair, -1)
        }
    }

    /// Rewrites a normal-form polynomial in the configuration's own variables.
    pub fn from_normal(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.sig);
        for (m, c) in &p.terms {
            let mut exps = vec![0u32; m.exps.len()];
            let mut sign = 1i64;
            for (k, &e) in m.exps.iter().enumerate() {
                let (a, s) = self.var(k);
                exps[a] = e;
                if s < 0 && e % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term(Monomial::new(exps, m.mask), c * q(sign));
        }
        out
    }

    /// Inverse of [`AprimeConjugation::from_normal`].
    pub fn to_normal(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.sig);
        for (m, c) in &p.terms {
            let mut exps = vec![0u32; m.exps.len()];
            let mut sign = 1i64;
            for k in 0..m.exps.len() {
                let (a, s) = self.var(k);
                exps[k] = m.exps[a];
                if s < 0 && m.exps[a] % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term(Monomial::new(exps, m.mask), c * q(sign));
        }
        out
    }
}

/// Weight of the standard basis vector `e_a` (1-based gl index) in integer
/// ε/δ coordinates, orthogonal block first.
pub fn index_weight(cfg: &RepConfig, a: usize) -> Vec<i64> {
    let (m1, n, s) = (cfg.m1, cfg.n, cfg.sp_offset());
    let mut w = vec![0i64; m1 + n];
    if a <= m1 {
        w[a - 1] = 1;
    } else if a <= 2 * m1 {
        w[a - m1 - 1] = -1;
    } else if a > s && a <= s + n {
        w[m1 + a - s - 1] = 1;
    } else if a > s + n {
        w[m1 + a - s - n - 1] = -1;
    }
    w
}

/// Weights of the positive root vectors of the basis.
pub fn positive_roots(cfg: &RepConfig) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = osp_elements(cfg)
        .into_iter()
        .filter(|b| b.positive)
        .map(|b| element_weight(cfg, &b.elem))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Positive roots that are not a sum of two positive roots.
pub fn simple_roots(cfg: &RepConfig) -> Vec<Vec<i64>> {
    let pos = positive_roots(cfg);
    pos.iter()
        .filter(|r| {
            !pos.iter().any(|a| {
                let b: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
                pos.contains(&b)
            })
        })
        .cloned()
        .collect()
}

/// Dominance order of the chosen positive system: `mu ≤ lambda` when
/// `lambda − mu` is a nonnegative integer combination of simple roots.
#[derive(Clone, Debug)]
pub struct DominanceOrder {
    /// Inverse of the matrix whose columns are the simple roots.
    inverse: Vec<Vec<BigRational>>,
}

impl DominanceOrder {
    /// `None` when the simple roots do not form a basis.
    pub fn new(cfg: &RepConfig) -> Option<Self> {
        let simple = simple_roots(cfg);
        let dim = cfg.m1 + cfg.n;
        if simple.len() != dim {
            return None;
        }
        // Gauss-Jordan on [S | I], with S[i][j] = simple[j][i].
        let mut rows: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                let mut row: Vec<BigRational> = simple.iter().map(|a| q(a[i])).collect();
                row.extend((0..dim).map(|j| if i == j { q(1) } else { q(0) }));
                row
            })
            .collect();
        for col in 0..dim {
            let p = (col..dim).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, p);
            let inv = BigRational::one() / &rows[col][col];
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..dim {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in 0..2 * dim {
                        let v = &rows[col][c] * &f;
                        rows[r][c] -= v;
                    }
                }
            }
        }
        let inverse = rows.into_iter().map(|r| r[dim..].to_vec()).collect();
        Some(Self { inverse })
    }

    pub fn leq(&self, mu: &[i64], lambda: &[i64]) -> bool {
        let diff: Vec<BigRational> = lambda.iter().zip(mu).map(|(a, b)| q(a - b)).collect();
        self.inverse.iter().all(|row| {
            let c: BigRational = row.iter().zip(&diff).map(|(a, b)| a * b).sum();
            c.is_integer() && !c.is_negative()
        })
    }
}

/// Whether `mu ≤ lambda` in the dominance order; `None` when the simple
/// roots do not form a basis.
pub fn weight_leq(cfg: &RepConfig, mu: &[i64], lambda: &[i64]) -> Option<bool> {
    DominanceOrder::new(cfg).map(|o| o.leq(mu, lambda))
}

/// Weight of the root vector `elem` (its first matrix unit).
pub fn element_weight(cfg: &RepConfig, elem: &MatrixElement) -> Vec<i64> {
    let (&(a, c), _) = elem.terms.iter().next().expect("nonzero element");
    index_weight(cfg, a).iter().zip(index_weight(cfg, c)).map(|(x, y)| x - y).collect()
}

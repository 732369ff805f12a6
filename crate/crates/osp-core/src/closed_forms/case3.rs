//! Generators of `H^r_k` for `0 < r < m1`: `f_{l,p,s}`, `g_{l,p,s}` when
//! `r = m1 − 1` and `h_{l,p,s}` when `r < m1 − 1`. All three have
//! k-degree `2l + p + n − s`.

use super::*;

/// Which generator of the intermediate family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case3Family {
    F,
    G,
    H,
}

fn intermediate_r(cfg: &RepConfig) -> Result<usize> {
    match cfg.family {
        Family::A { r } if !cfg.odd && r > 0 && r < cfg.m1 => Ok(r),
        _ => Err(OspError::Invalid(format!("needs even m and 0 < r < m1, got {}", cfg.id()))),
    }
}

/// k-degree of the generator with parameters `(l, p, s)`.
pub fn case3_k(cfg: &RepConfig, l: i64, p: i64, s: i64) -> i64 {
    2 * l + p + cfg.n as i64 - s
}

/// Evaluates `f_{l,p,s}`, `g_{l,p,s}` or `h_{l,p,s}`; requires
/// `0 ≤ l ≤ s` and `p ≥ 0`.
pub fn case3(cfg: &RepConfig, family: Case3Family, l: i64, p: i64, s: i64) -> Result<Polynomial> {
    let r = intermediate_r(cfg)?;
    let m1 = cfg.m1;
    match family {
        Case3Family::F | Case3Family::G if r != m1 - 1 => {
            return Err(OspError::Invalid(format!("f and g need r = m1 − 1, got {}", cfg.id())))
        }
        Case3Family::H if r + 1 >= m1 => {
            return Err(OspError::Invalid(format!("h needs r < m1 − 1, got {}", cfg.id())))
        }
        _ => {}
    }
    if l < 0 || p < 0 || l > s {
        return Err(out_of_range(format!("(l, p, s) = ({l}, {p}, {s}) needs 0 ≤ l ≤ s, p ≥ 0")));
    }
    let sig = cfg.signature();
    let thetas = theta_run(sig, 1, cfg.n)?;
    let mut out = Polynomial::zero(sig);
    for i in 0..=l {
        // The shift is 0 for f and g.
        let shift = if family == Case3Family::H { (m1 - r - 1) as i64 } else { 0 };
        let c = rat(factorial(l) * factorial(l + p + shift))
            / rat(factorial(i) * factorial(l - i) * factorial(l + p + shift - i));
        let (head, u) = match family {
            Case3Family::F => (xv(sig, m1), xv(sig, m1).mul(&xv(sig, 2 * m1))?),
            Case3Family::G => (xv(sig, 2 * m1), xv(sig, m1).mul(&xv(sig, 2 * m1))?),
            Case3Family::H => {
                let mut u = Polynomial::zero(sig);
                for j in r + 1..=m1 {
                    u = u.add(&xv(sig, j).mul(&xv(sig, m1 + j))?);
                }
                (xv(sig, r + 1), u)
            }
        };
        // x_r and x_{m1+r}; for f and g r = m1 − 1.
        let term = product(
            sig,
            &[
                head.pow(p as u32)?,
                u.pow((l - i) as u32)?,
                xv(sig, r).pow((s - i) as u32)?,
                xv(sig, m1 + r).pow(i as u32)?,
                thetas.clone(),
            ],
        )?;
        out.add_assign_scaled(&term, &c);
    }
    Ok(out)
}

/// `f_{l,p,s} = (E_{2m1−1,m1} − E_{2m1,m1−1})^l (x_{m1−1}^{s−l} x_{m1}^{p+l} θ_1⋯θ_n)`
/// and the analogous expression of `g` through `E_{2m1−1,2m1} − E_{m1,m1−1}`.
pub fn case3_raising(cfg: &RepConfig, family: Case3Family, l: i64, p: i64, s: i64) -> Result<Identity> {
    let m1 = cfg.m1;
    let lhs = case3(cfg, family, l, p, s)?;
    let sig = cfg.signature();
    let (op, top) = match family {
        Case3Family::F => (units(cfg, &[(1, 2 * m1 - 1, m1), (-1, 2 * m1, m1 - 1)])?, xv(sig, m1)),
        Case3Family::G => (units(cfg, &[(1, 2 * m1 - 1, 2 * m1), (-1, m1, m1 - 1)])?, xv(sig, 2 * m1)),
        Case3Family::H => return Err(OspError::Invalid("no raising form for h".into())),
    };
    let mut rhs = product(sig, &[xv(sig, m1 - 1).pow((s - l) as u32)?, top.pow((p + l) as u32)?, theta_run(sig, 1, cfg.n)?])?;
    for _ in 0..l {
        rhs = op.apply(&rhs);
    }
    Ok(Identity { lhs, rhs })
}

/// `(E_{r,m1+r+1} − E_{r+1,m1+r}) h_{l,p,s} = −l(l+p+m1−r−1−s) h_{l−1,p+1,s−1}`.
pub fn h_lowering(cfg: &RepConfig, l: i64, p: i64, s: i64) -> Result<Identity> {
    let r = intermediate_r(cfg)?;
    let m1 = cfg.m1;
    if l <= 0 {
        return Err(out_of_range("lowering needs l > 0".into()));
    }
    let op = units(cfg, &[(1, r, m1 + r + 1), (-1, r + 1, m1 + r)])?;
    let c = q(-l * (l + p + (m1 - r - 1) as i64 - s));
    Ok(Identity {
        lhs: op.apply(&case3(cfg, Case3Family::H, l, p, s)?),
        rhs: case3(cfg, Case3Family::H, l - 1, p + 1, s - 1)?.scale(&c),
    })
}

/// Reading of the recurrence that builds `h_{l,p,s}` from `h_{l−1,p+1,s−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceReading {
    /// `l(p+1) h_{l,p,s} = Σ_j A_j B_j h_{l−1,s−1,p+1} + (m1−r) C h_{l−1,p+1,s−1}`.
    Literal,
    /// As printed with the first argument read as `h_{l−1,p+1,s−1}`.
    IndexRepaired,
    /// `(p+1) h_{l,p,s} = Σ_j A_j B_j h_{l−1,p+1,s−1} + (p+m1−r) C h_{l−1,p+1,s−1}`.
    Repaired,
}

/// The recurrence with `A_j = E_{m1+j,r+1} − E_{m1+r+1,j}`,
/// `B_j = −E_{j,r} + E_{m1+r,m1+j}` for `r+2 ≤ j ≤ m1` and
/// `C = E_{m1+r,r+1} − E_{m1+r+1,r}`.
pub fn h_recurrence(cfg: &RepConfig, l: i64, p: i64, s: i64, reading: RecurrenceReading) -> Result<Identity> {
    let r = intermediate_r(cfg)?;
    let m1 = cfg.m1;
    if l <= 0 {
        return Err(out_of_range("recurrence needs l > 0".into()));
    }
    let prev = case3(cfg, Case3Family::H, l - 1, p + 1, s - 1)?;
    let hp = match reading {
        RecurrenceReading::Literal => case3(cfg, Case3Family::H, l - 1, s - 1, p + 1)?,
        _ => prev.clone(),
    };
    let (lead, tail) = match reading {
        RecurrenceReading::Repaired => (p + 1, p + (m1 - r) as i64),
        _ => (l * (p + 1), (m1 - r) as i64),
    };
    let mut rhs = Polynomial::zero(cfg.signature());
    for j in r + 2..=m1 {
        let a = units(cfg, &[(1, m1 + j, r + 1), (-1, m1 + r + 1, j)])?;
        let b = units(cfg, &[(-1, j, r), (1, m1 + r, m1 + j)])?;
        rhs = rhs.add(&a.apply(&b.apply(&hp)));
    }
    let last = units(cfg, &[(1, m1 + r, r + 1), (-1, m1 + r + 1, r)])?;
    rhs = rhs.add(&last.apply(&prev).scale(&q(tail)));
    Ok(Identity { lhs: case3(cfg, Case3Family::H, l, p, s)?.scale(&q(lead)), rhs })
}

/// Parameters `(l, p, s)` with `0 ≤ l ≤ s`, `p ≥ 0` and the given k-degree,
/// with `s ≤ max_s`.
pub fn case3_params(cfg: &RepConfig, k: i64, max_s: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for s in 0..=max_s {
        for l in 0..=s {
            let p = k - 2 * l - cfg.n as i64 + s;
            if p >= 0 {
                out.push((l, p, s));
            }
        }
    }
    out
}

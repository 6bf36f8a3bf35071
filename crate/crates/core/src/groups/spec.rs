//! Catalog names: `constant:2x2`, `mu:4`, `alpha:3`, `oort-tate:3:3`,
//! `raynaud:2:1,3`, `tower:mu:2:2`, `tower:constant:3:2:1`,
//! `tower:product:<tower>+<tower>`.

use super::tower::{Tower, MAX_TOWER_RANK};
use super::{alpha_p, constant_group, mu, oort_tate_algebra, raynaud_algebra};
use crate::algebra::AugmentedAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::Ring;
use crate::hopf::HopfAlgebra;

/// A catalog group: a full Hopf algebra, or (for Oort-Tate and Raynaud) only
/// the augmented algebra.
#[derive(Clone, Debug)]
pub enum CatalogGroup {
    Hopf(HopfAlgebra),
    Augmented(AugmentedAlgebra),
}

impl CatalogGroup {
    pub fn aug(&self) -> &AugmentedAlgebra {
        match self {
            CatalogGroup::Hopf(h) => h.aug(),
            CatalogGroup::Augmented(a) => a,
        }
    }

    pub fn hopf(&self) -> Option<&HopfAlgebra> {
        match self {
            CatalogGroup::Hopf(h) => Some(h),
            CatalogGroup::Augmented(_) => None,
        }
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, what: &str, spec: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("{spec:?}: missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::Parse(format!("{spec:?}: {what} must be a non-negative integer, got {tok:?}")))
}

fn finish<'a>(mut rest: impl Iterator<Item = &'a str>, spec: &str) -> Result<()> {
    match rest.next() {
        None => Ok(()),
        Some(t) => Err(Error::Parse(format!("{spec:?}: unexpected trailing {t:?}"))),
    }
}

pub fn parse_group(spec: &str, ring: &Ring) -> Result<CatalogGroup> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or("");
    let g = match kind {
        "constant" => {
            let body = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("{spec:?}: missing orders")))?;
            let orders = body
                .split('x')
                .map(|t| number::<usize>(Some(t), "order", spec))
                .collect::<Result<Vec<_>>>()?;
            check_rank(orders.iter().try_fold(1usize, |a, &b| a.checked_mul(b)), spec)?;
            CatalogGroup::Hopf(constant_group(&orders, ring)?)
        }
        "mu" => {
            let n: usize = number(parts.next(), "order", spec)?;
            check_rank(Some(n), spec)?;
            CatalogGroup::Hopf(mu(n, ring)?)
        }
        "alpha" => CatalogGroup::Hopf(alpha_p(small_prime(parts.next(), spec)?, ring)?),
        "oort-tate" => {
            let p = small_prime(parts.next(), spec)?;
            let a = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("{spec:?}: missing parameter a")))?;
            CatalogGroup::Augmented(oort_tate_algebra(p, &ring.parse_elem(a)?, ring)?)
        }
        "raynaud" => {
            let p = small_prime(parts.next(), spec)?;
            let ds = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("{spec:?}: missing parameters")))?;
            let ds = ds.split(',').map(|d| ring.parse_elem(d)).collect::<Result<Vec<_>>>()?;
            check_rank((p as usize).checked_pow(ds.len() as u32), spec)?;
            CatalogGroup::Augmented(raynaud_algebra(p, &ds, ring)?)
        }
        _ => return Err(Error::Parse(format!("{spec:?}: unknown group kind {kind:?}"))),
    };
    finish(parts, spec)?;
    Ok(g)
}

fn small_prime(tok: Option<&str>, spec: &str) -> Result<u64> {
    let p: u64 = number(tok, "prime", spec)?;
    if p as usize > MAX_TOWER_RANK {
        return Err(Error::InvalidParams(format!("{spec:?}: prime {p} is too large")));
    }
    Ok(p)
}

fn check_rank(rank: Option<usize>, spec: &str) -> Result<()> {
    match rank {
        Some(r) if r <= MAX_TOWER_RANK => Ok(()),
        _ => Err(Error::InvalidParams(format!("{spec:?}: rank exceeds {MAX_TOWER_RANK}"))),
    }
}

/// Splits on `:` and `+`, keeping `+` as its own token.
fn tokens(spec: &str) -> Vec<&str> {
    let mut out = Vec::new();
    for (i, chunk) in spec.split('+').enumerate() {
        if i > 0 {
            out.push("+");
        }
        out.extend(chunk.split(':'));
    }
    out
}

pub fn parse_tower(spec: &str, ring: &Ring) -> Result<Tower> {
    let toks = tokens(spec);
    let mut pos = 0;
    let t = tower_at(&toks, &mut pos, spec, ring)?;
    if pos != toks.len() {
        return Err(Error::Parse(format!(
            "{spec:?}: unexpected trailing {:?}",
            toks[pos..].join(":")
        )));
    }
    Ok(t)
}

fn tower_at(toks: &[&str], pos: &mut usize, spec: &str, ring: &Ring) -> Result<Tower> {
    let mut next = || {
        let t = toks.get(*pos).copied();
        *pos += 1;
        t
    };
    if next() != Some("tower") {
        return Err(Error::Parse(format!("{spec:?}: expected \"tower:\"")));
    }
    match next() {
        Some("mu") => {
            let p = number(next(), "prime", spec)?;
            let r = number(next(), "length", spec)?;
            Tower::mu(p, r, ring)
        }
        Some("constant") => {
            let p = number(next(), "prime", spec)?;
            let r = number(next(), "length", spec)?;
            let h = number(next(), "height", spec)?;
            Tower::constant(p, r, h, ring)
        }
        Some("product") => {
            let left = tower_at(toks, pos, spec, ring)?;
            if toks.get(*pos) != Some(&"+") {
                return Err(Error::Parse(format!(
                    "{spec:?}: expected \"+\" between product factors"
                )));
            }
            *pos += 1;
            let right = tower_at(toks, pos, spec, ring)?;
            Tower::product(&left, &right)
        }
        other => Err(Error::Parse(format!("{spec:?}: unknown tower kind {other:?}"))),
    }
}

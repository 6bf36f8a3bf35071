//! Short exact sequences `0 -> H -> G -> K -> 0`, presented on coordinate
//! rings as `C -> A -> B` (functions on `K`, `G`, `H`), with integration in
//! stages and the ideal identities relating `J_A`, `J_B`, `J_C`.

use num_traits::{One, Zero};

use super::{check_hopf_hom, has_idempotent_basis, HopfAlgebra, Measure};
use crate::algebra::{ideal_generated, Ideal};
use crate::error::{Error, Result};
use crate::exactalg::{kernel, Elem, Matrix, Ring, Submodule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    /// Functions on the quotient `K`.
    pub c: HopfAlgebra,
    /// Functions on `G`.
    pub a: HopfAlgebra,
    /// Functions on the subgroup `H`.
    pub b: HopfAlgebra,
    /// Pullback along `G -> K`.
    pub iota: Matrix,
    /// Restriction along `H -> G`.
    pub pi: Matrix,
}

/// Certifies the sequence: Hopf maps, `iota` injective, `pi` surjective,
/// `|G| = |H| |K|`, and `ker(pi)` generated by the augmentation ideal of `C`.
pub fn verify_ses(
    c: HopfAlgebra,
    a: HopfAlgebra,
    b: HopfAlgebra,
    iota: Matrix,
    pi: Matrix,
) -> Result<ShortExactSequence> {
    let ring = a.ring().clone();
    for h in [&c, &b] {
        if h.ring() != &ring {
            return Err(Error::RingMismatch(h.ring().to_string(), ring.to_string()));
        }
    }
    if iota.rows() != c.rank() || iota.cols() != a.rank() || pi.rows() != a.rank() || pi.cols() != b.rank() {
        return Err(Error::ShapeMismatch(format!(
            "iota is {}x{}, pi is {}x{}, ranks are {}, {}, {}",
            iota.rows(),
            iota.cols(),
            pi.rows(),
            pi.cols(),
            c.rank(),
            a.rank(),
            b.rank()
        )));
    }
    if !kernel(&iota).is_zero() {
        return Err(Error::NotInjective);
    }
    if !Submodule::whole(&ring, a.rank()).image(&pi)?.is_whole() {
        return Err(Error::NotSurjective);
    }
    if a.rank() != b.rank() * c.rank() {
        return Err(Error::RankMismatch {
            expected: b.rank() * c.rank(),
            got: a.rank(),
        });
    }
    check_hopf_hom(&c, &a, &iota)?;
    check_hopf_hom(&a, &b, &pi)?;
    let ic = c.aug().augmentation_ideal();
    let pushed: Vec<Vec<Elem>> = ic.carrier().rows().iter().map(|r| iota.apply_row(r)).collect();
    let generated = ideal_generated(a.algebra(), &pushed)?;
    if kernel(&pi) != *generated.carrier() {
        return Err(Error::KernelMismatch);
    }
    Ok(ShortExactSequence { c, a, b, iota, pi })
}

/// Solves `x * M = rhs`. Returns one solution (first in the canonical
/// order) and generators of the homogeneous solutions.
pub(crate) fn solve_left(m: &Matrix, rhs: &[Elem]) -> Option<(Vec<Elem>, Vec<Vec<Elem>>)> {
    let ring = m.ring();
    let mut rows = vec![rhs.iter().map(|x| ring.neg(x)).collect::<Vec<_>>()];
    rows.extend(m.row_vecs());
    let stacked = Matrix::from_rows(ring, m.cols(), rows).ok()?;
    let k = kernel(&stacked);
    let first = k.rows().first()?;
    if !first[0].is_one() {
        return None;
    }
    let particular = first[1..].to_vec();
    let homogeneous = k.rows()[1..].iter().map(|r| r[1..].to_vec()).collect();
    Some((particular, homogeneous))
}

/// Builds `mu_G = lift(mu_K) * pi^*(mu_H)`. Checks that the inputs are
/// invariant, that the answer does not depend on the lift, that it agrees
/// with integrating `mu_K` against the `H`-average, and that it is
/// invariant.
pub fn integrate_in_stages(ses: &ShortExactSequence, mu_h: &Measure, mu_k: &Measure) -> Result<Measure> {
    let ring = ses.a.ring().clone();
    if !ses.b.is_invariant(mu_h)? || !ses.c.is_invariant(mu_k)? {
        return Err(Error::InputNotInvariant);
    }
    let (lift, homogeneous) = solve_left(&ses.iota.transpose(), &mu_k.coords).ok_or(Error::LiftFailed)?;
    let embedded = Measure::new(ses.pi.apply_col(&mu_h.coords));
    let lifted = Measure::new(lift.clone());
    let mu_g = ses.a.star_measures(&lifted, &embedded);
    if let Some(h) = homogeneous.first() {
        let other: Vec<Elem> = lift.iter().zip(h).map(|(x, y)| ring.add(x, y)).collect();
        if ses.iota.apply_col(&other) != mu_k.coords {
            return Err(Error::Inconsistent("perturbed lift is not a lift".into()));
        }
        if ses.a.star_measures(&Measure::new(other), &embedded) != mu_g {
            return Err(Error::Inconsistent("integration depends on the choice of lift".into()));
        }
    }
    let n = ses.a.rank();
    for t in 0..n {
        let mut e = vec![Elem::zero(); n];
        e[t] = Elem::one();
        let averaged = ses.a.sweep(&embedded, &e);
        let (on_k, _) = solve_left(&ses.iota, &averaged)
            .ok_or_else(|| Error::Inconsistent(format!("average of basis element {t} is not pulled back from K")))?;
        if mu_k.pair(&ring, &on_k) != mu_g.coords[t] {
            return Err(Error::Inconsistent(format!(
                "stagewise integral disagrees on basis element {t}"
            )));
        }
    }
    if !ses.a.is_invariant(&mu_g)? {
        return Err(Error::Inconsistent("integrated measure is not invariant".into()));
    }
    Ok(mu_g)
}

fn pushed_ideal(ses: &ShortExactSequence, j_c: &Submodule) -> Result<Ideal> {
    let vecs: Vec<Vec<Elem>> = j_c.rows().iter().map(|r| ses.iota.apply_row(r)).collect();
    ideal_generated(ses.a.algebra(), &vecs)
}

/// `J_A = pi^{-1}(J_B) * (iota(J_C) A)`, together with the rank identity
/// `rank J_A = rank J_B * rank J_C`.
pub fn jabc_verify(ses: &ShortExactSequence) -> Result<bool> {
    let a = ses.a.algebra();
    let j_a = ses.a.nonnull_ideal()?;
    let j_b = ses.b.nonnull_ideal()?;
    let j_c = ses.c.nonnull_ideal()?;
    let pre = Submodule::preimage(&ses.pi, &j_b)?;
    let pre = Ideal::new(a, pre)?;
    let product = pre.product(&pushed_ideal(ses, &j_c)?, a)?;
    Ok(*product.carrier() == j_a && j_a.rank() == j_b.rank() * j_c.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// `pi(J_A) <= J_B`.
    pub h_inclusion_ok: bool,
    /// `J_A <= iota(J_C) A`.
    pub pullback_inclusion_ok: bool,
    /// `pi(J_A) = J_B`.
    pub square_cartesian: bool,
    /// `K` is known to be etale: its algebra is presented on orthogonal
    /// idempotents, or the base is `Q`.
    pub k_is_etale: bool,
    pub pi_of_j_a: Submodule,
}

pub fn extension_report(ses: &ShortExactSequence) -> Result<ExtensionReport> {
    let j_a = ses.a.nonnull_ideal()?;
    let j_b = ses.b.nonnull_ideal()?;
    let j_c = ses.c.nonnull_ideal()?;
    let image = j_a.image(&ses.pi)?;
    let pulled = pushed_ideal(ses, &j_c)?;
    Ok(ExtensionReport {
        h_inclusion_ok: j_b.contains(&image)?,
        pullback_inclusion_ok: pulled.carrier().contains(&j_a)?,
        square_cartesian: image == j_b,
        k_is_etale: has_idempotent_basis(ses.c.algebra()) || *ses.c.ring() == Ring::Rationals,
        pi_of_j_a: image,
    })
}

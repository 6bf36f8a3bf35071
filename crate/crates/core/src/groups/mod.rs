//! Catalog groups: constant groups, diagonalizable groups (`mu_N` and
//! products), `alpha_p`, Oort-Tate and Raynaud algebras, truncated
//! p-divisible towers, and a few short exact sequences.

pub mod spec;
pub mod tower;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::algebra::{make_algebra, power_label, AugmentedAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::ring::{big, is_prime};
use crate::exactalg::submodule::unit_vector;
use crate::exactalg::{Elem, Matrix, Ring};
use crate::hopf::{hopf_product, make_hopf, verify_ses, HopfAlgebra, ShortExactSequence};

pub use spec::{parse_group, parse_tower, CatalogGroup};
pub use tower::Tower;

/// Mixed-radix digits of `index`, most significant first.
pub fn digits(mut index: usize, orders: &[usize]) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for (d, &o) in out.iter_mut().zip(orders).rev() {
        *d = index % o;
        index /= o;
    }
    out
}

pub fn index_of(ds: &[usize], orders: &[usize]) -> usize {
    ds.iter().zip(orders).fold(0, |acc, (&d, &o)| acc * o + d % o)
}

fn check_orders(orders: &[usize]) -> Result<usize> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::InvalidParams(format!(
            "group orders must be a nonempty list of positive integers, got {orders:?}"
        )));
    }
    Ok(orders.iter().product())
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(&BigInt::from(p)) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    Ok(())
}

fn element_label(ds: &[usize]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    format!("e{}", parts.join("_"))
}

/// Functions on the finite abelian group `Z/n_1 x ... x Z/n_r`, on the
/// basis of indicator functions.
pub fn constant_group(orders: &[usize], ring: &Ring) -> Result<HopfAlgebra> {
    let n = check_orders(orders)?;
    let one = Elem::one();
    let mult: Vec<_> = (0..n).map(|a| (a, a, a, one.clone())).collect();
    let labels = (0..n).map(|a| element_label(&digits(a, orders))).collect();
    let algebra = make_algebra(ring, n, labels, &mult, vec![one.clone(); n])?;
    let aug = AugmentedAlgebra::new(algebra, unit_vector(n, 0))?;
    let mut comult = Vec::with_capacity(n * n);
    for c in 0..n {
        let dc = digits(c, orders);
        for a in 0..n {
            let da = digits(a, orders);
            let db: Vec<usize> = dc
                .iter()
                .zip(&da)
                .zip(orders)
                .map(|((c, a), o)| (c + o - a) % o)
                .collect();
            comult.push((c, a, index_of(&db, orders), one.clone()));
        }
    }
    let mut s = Matrix::zero(ring, n, n);
    for a in 0..n {
        let neg: Vec<usize> = digits(a, orders).iter().zip(orders).map(|(d, o)| (o - d) % o).collect();
        s.set(a, index_of(&neg, orders), one.clone());
    }
    make_hopf(aug, &comult, Some(s))
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn var_name(i: usize, count: usize) -> String {
    if count <= VARS.len() {
        VARS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub(crate) fn monomial_label(names: &[String], ds: &[usize]) -> String {
    let parts: Vec<String> = ds
        .iter()
        .zip(names)
        .filter(|(&d, _)| d > 0)
        .map(|(&d, v)| power_label(v, d))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Group algebra of `Z/n_1 x ... x Z/n_r`: the diagonalizable group dual to
/// the constant one. `diagonalizable_group(&[n], ..)` is `mu_n`.
pub fn diagonalizable_group(orders: &[usize], ring: &Ring) -> Result<HopfAlgebra> {
    let names: Vec<String> = (0..orders.len()).map(|i| var_name(i, orders.len())).collect();
    diagonalizable_with_names(orders, &names, ring)
}

pub fn diagonalizable_with_names(orders: &[usize], names: &[String], ring: &Ring) -> Result<HopfAlgebra> {
    let n = check_orders(orders)?;
    if names.len() != orders.len() {
        return Err(Error::InvalidParams("one variable name per cyclic factor".into()));
    }
    let one = Elem::one();
    let mut mult = Vec::new();
    for a in 0..n {
        let da = digits(a, orders);
        for b in a..n {
            let db = digits(b, orders);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
            mult.push((a, b, index_of(&sum, orders), one.clone()));
        }
    }
    let labels = (0..n).map(|a| monomial_label(names, &digits(a, orders))).collect();
    let algebra = make_algebra(ring, n, labels, &mult, unit_vector(n, 0))?;
    let aug = AugmentedAlgebra::new(algebra, vec![one.clone(); n])?;
    let comult: Vec<_> = (0..n).map(|a| (a, a, a, one.clone())).collect();
    let mut s = Matrix::zero(ring, n, n);
    for a in 0..n {
        let neg: Vec<usize> = digits(a, orders).iter().zip(orders).map(|(d, o)| (o - d) % o).collect();
        s.set(a, index_of(&neg, orders), one.clone());
    }
    make_hopf(aug, &comult, Some(s))
}

pub fn mu(n: usize, ring: &Ring) -> Result<HopfAlgebra> {
    diagonalizable_group(&[n], ring)
}

/// `alpha_p = k[x]/(x^p)` with `x` primitive. Needs `p = 0` in `k`.
pub fn alpha_p(p: u64, ring: &Ring) -> Result<HopfAlgebra> {
    check_prime(p)?;
    if !ring.reduce_int(BigInt::from(p)).is_zero() {
        return Err(Error::CharacteristicMismatch(format!(
            "alpha_{p} needs {p} = 0, but the base ring is {ring}"
        )));
    }
    let n = p as usize;
    let one = Elem::one();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i + j < n {
                mult.push((i, j, i + j, one.clone()));
            }
        }
    }
    let labels = (0..n).map(|i| power_label("x", i)).collect();
    let algebra = make_algebra(ring, n, labels, &mult, unit_vector(n, 0))?;
    let aug = AugmentedAlgebra::new(algebra, unit_vector(n, 0))?;
    let mut comult = Vec::new();
    for m in 0..n {
        for i in 0..=m {
            comult.push((m, i, m - i, big(binomial(BigInt::from(m), BigInt::from(i)))));
        }
    }
    let mut s = Matrix::zero(ring, n, n);
    for i in 0..n {
        s.set(i, i, if i % 2 == 0 { one.clone() } else { -one.clone() });
    }
    make_hopf(aug, &comult, Some(s))
}

/// `k[x]/(x^p - a x)` with the counit `x -> 0`.
pub fn oort_tate_algebra(p: u64, a: &Elem, ring: &Ring) -> Result<AugmentedAlgebra> {
    raynaud_algebra(p, std::slice::from_ref(a), ring)
}

/// `k[x_1..x_n]/(x_i^p - d_i x_{i+1})` with `x_{n+1} = x_1`, on the monomial
/// basis `x^e`, `0 <= e_i < p`; the counit kills every `x_i`.
pub fn raynaud_algebra(p: u64, deltas: &[Elem], ring: &Ring) -> Result<AugmentedAlgebra> {
    check_prime(p)?;
    if deltas.is_empty() {
        return Err(Error::InvalidParams("at least one parameter is needed".into()));
    }
    let deltas: Vec<Elem> = deltas.iter().map(|d| ring.coerce(d)).collect::<Result<_>>()?;
    let vars = deltas.len();
    let p = p as usize;
    let orders = vec![p; vars];
    let n: usize = orders.iter().product();
    let names: Vec<String> = if vars == 1 {
        vec!["x".into()]
    } else {
        (0..vars).map(|i| format!("x{}", i + 1)).collect()
    };
    let mut mult = Vec::new();
    for a in 0..n {
        let da = digits(a, &orders);
        for b in a..n {
            let db = digits(b, &orders);
            let mut e: Vec<usize> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
            let mut coeff = Elem::one();
            while let Some(i) = e.iter().position(|&x| x >= p) {
                e[i] -= p;
                coeff = ring.mul(&coeff, &deltas[i]);
                if coeff.is_zero() {
                    break;
                }
                e[(i + 1) % vars] += 1;
            }
            if !coeff.is_zero() {
                mult.push((a, b, index_of(&e, &orders), coeff));
            }
        }
    }
    let labels = (0..n).map(|a| monomial_label(&names, &digits(a, &orders))).collect();
    let algebra = make_algebra(ring, n, labels, &mult, unit_vector(n, 0))?;
    AugmentedAlgebra::new(algebra, unit_vector(n, 0))
}

/// `mu_p -> mu_{p^2} -> mu_p`: `y -> x^p` and `x -> x`.
pub fn mu_ses(p: usize, ring: &Ring) -> Result<ShortExactSequence> {
    let c = diagonalizable_with_names(&[p], &["y".into()], ring)?;
    let a = mu(p * p, ring)?;
    let b = mu(p, ring)?;
    let mut iota = Matrix::zero(ring, p, p * p);
    for e in 0..p {
        iota.set(e, e * p, Elem::one());
    }
    let mut pi = Matrix::zero(ring, p * p, p);
    for e in 0..p * p {
        pi.set(e, e % p, Elem::one());
    }
    verify_ses(c, a, b, iota, pi)
}

/// `Z/p -> Z/p^2 -> Z/p` on functions: pullback along reduction mod `p`,
/// restriction to the subgroup `pZ/p^2`.
pub fn constant_ses(p: usize, ring: &Ring) -> Result<ShortExactSequence> {
    let c = constant_group(&[p], ring)?;
    let a = constant_group(&[p * p], ring)?;
    let b = constant_group(&[p], ring)?;
    let mut iota = Matrix::zero(ring, p, p * p);
    for u in 0..p * p {
        iota.set(u % p, u, Elem::one());
    }
    let mut pi = Matrix::zero(ring, p * p, p);
    for h in 0..p {
        pi.set(h * p, h, Elem::one());
    }
    verify_ses(c, a, b, iota, pi)
}

/// `H -> H x K -> K`.
pub fn product_ses(h: &HopfAlgebra, k: &HopfAlgebra) -> Result<ShortExactSequence> {
    let ring = h.ring().clone();
    let a = hopf_product(h, k)?;
    let (nh, nk) = (h.rank(), k.rank());
    let mut iota = Matrix::zero(&ring, nk, nh * nk);
    for j in 0..nk {
        for (i, u) in h.unit().iter().enumerate() {
            iota.set(j, i * nk + j, u.clone());
        }
    }
    let mut pi = Matrix::zero(&ring, nh * nk, nh);
    for i in 0..nh {
        for (j, e) in k.counit().iter().enumerate() {
            pi.set(i * nk + j, i, e.clone());
        }
    }
    verify_ses(k.clone(), a, h.clone(), iota, pi)
}

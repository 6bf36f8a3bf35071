//! Property suites over the built-in grid of groups and rings. Cells run in
//! parallel; results come back in grid order.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::ring::int;
use crate::exactalg::{canonical_form, Elem, Ring, Submodule};
use crate::groups::{
    alpha_p, constant_group, constant_ses, diagonalizable_group, mu, mu_ses, oort_tate_algebra, parse_tower,
    product_ses, raynaud_algebra,
};
use crate::hopf::{
    extension_report, hopf_product, integrate_in_stages, jabc_verify, HopfAlgebra, Measure, ShortExactSequence,
};
use crate::primitive::{identity_splits_off, nonnull_scheme, primitive_scheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Raynaud,
    Products,
    Extensions,
    Towers,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        match s {
            "raynaud" => Ok(Suite::Raynaud),
            "products" => Ok(Suite::Products),
            "extensions" => Ok(Suite::Extensions),
            "towers" => Ok(Suite::Towers),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!(
                "unknown suite {s:?} (expected raynaud, products, extensions, towers or all)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub subject: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "ok" } else { "FAIL" };
        write!(f, "{status:4} {:<28} {}", self.check, self.subject)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

fn outcome(check: &str, subject: &str, r: Result<bool>) -> CheckResult {
    let (pass, detail) = match r {
        Ok(true) => (true, None),
        Ok(false) => (false, None),
        Err(e) => (false, Some(e.to_string())),
    };
    CheckResult {
        check: check.into(),
        subject: subject.into(),
        pass,
        detail,
    }
}

/// `Z, Q, F_2, F_3, Z/4, Z/9, Z/8, Z/27`.
pub fn grid_rings() -> Vec<Ring> {
    let m = |n: i64| Ring::integers_mod(n).expect("modulus >= 2");
    vec![Ring::Integers, Ring::Rationals, m(2), m(3), m(4), m(9), m(8), m(27)]
}

/// Every abelian group of order at most 9, as lists of cyclic orders.
pub fn small_abelian_groups() -> Vec<Vec<usize>> {
    vec![
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![5],
        vec![6],
        vec![7],
        vec![8],
        vec![2, 4],
        vec![2, 2, 2],
        vec![9],
        vec![3, 3],
    ]
}

fn orders_name(orders: &[usize]) -> String {
    orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("x")
}

type Build = fn(&Ring) -> Result<HopfAlgebra>;

/// `None` when the group is not defined over the ring.
pub type MaybeBuild = Box<dyn Fn(&Ring) -> Option<Result<HopfAlgebra>> + Send + Sync>;

/// A named constructor for one catalog group over a given ring.
pub struct GroupRecipe {
    pub name: String,
    pub build: MaybeBuild,
}

pub fn catalog_groups() -> Vec<GroupRecipe> {
    let mut out: Vec<GroupRecipe> = Vec::new();
    for orders in small_abelian_groups() {
        let o = orders.clone();
        out.push(GroupRecipe {
            name: format!("constant:{}", orders_name(&orders)),
            build: Box::new(move |r| Some(constant_group(&o, r))),
        });
    }
    for n in [2usize, 3, 4, 8, 9] {
        out.push(GroupRecipe {
            name: format!("mu:{n}"),
            build: Box::new(move |r| Some(mu(n, r))),
        });
    }
    for p in [2u64, 3] {
        out.push(GroupRecipe {
            name: format!("alpha:{p}"),
            build: Box::new(move |r| match r.modulus() {
                Some(m) if *m == p.into() => Some(alpha_p(p, r)),
                _ => None,
            }),
        });
    }
    let products: [(&str, Build); 4] = [
        ("mu:2 x mu:2", |r| diagonalizable_group(&[2, 2], r)),
        ("mu:3 x mu:3", |r| diagonalizable_group(&[3, 3], r)),
        ("mu:2 x constant:2", |r| {
            hopf_product(&mu(2, r)?, &constant_group(&[2], r)?)
        }),
        ("mu:3 x constant:3", |r| {
            hopf_product(&mu(3, r)?, &constant_group(&[3], r)?)
        }),
    ];
    for (name, f) in products {
        out.push(GroupRecipe {
            name: name.into(),
            build: Box::new(move |r| Some(f(r))),
        });
    }
    out
}

/// All (group, ring) cells of the catalog grid, in a fixed order.
pub fn catalog_cells() -> Vec<(String, Ring, Result<HopfAlgebra>)> {
    let recipes = catalog_groups();
    let rings = grid_rings();
    let jobs: Vec<(&GroupRecipe, &Ring)> = recipes.iter().flat_map(|g| rings.iter().map(move |r| (g, r))).collect();
    jobs.par_iter()
        .filter_map(|(g, r)| (g.build)(r).map(|h| (g.name.clone(), (*r).clone(), h)))
        .collect()
}

fn subject(name: &str, ring: &Ring) -> String {
    format!("{name} over {ring}")
}

fn run_cells<T: Sync>(cells: &[T], f: impl Fn(&T) -> Vec<CheckResult> + Sync) -> Vec<CheckResult> {
    cells
        .par_iter()
        .map(&f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn raynaud_cell(name: &str, ring: &Ring, h: &Result<HopfAlgebra>) -> Vec<CheckResult> {
    let s = subject(name, ring);
    let h = match h {
        Ok(h) => h,
        Err(e) => return vec![outcome("construct", &s, Err(e.clone()))],
    };
    let report = h.duality_report();
    let nonnull = nonnull_scheme(h.aug());
    let mut out = vec![
        outcome("D_G rank-1 summand", &s, h.invariant_measures().map(|_| true)),
        outcome(
            "perfect pairing",
            &s,
            report.as_ref().map(|r| r.pairing_is_perfect).map_err(Clone::clone),
        ),
        outcome(
            "measure isomorphism",
            &s,
            report.as_ref().map(|r| r.measure_iso_holds).map_err(Clone::clone),
        ),
        outcome(
            "rank(G^x) = |G| - 1",
            &s,
            nonnull.map(|r| r.rank + 1 == h.rank() && r.ideal_is_summand && r.is_free),
        ),
    ];
    if name.starts_with("constant:") || *ring == Ring::Rationals {
        out.push(outcome("I + J = A, I ∩ J = 0", &s, identity_splits_off(h.aug())));
    }
    out
}

fn oort_tate_cells() -> Vec<CheckResult> {
    let mut cells = Vec::new();
    for p in [2i64, 3, 5] {
        for modulus in [p, p * p * p] {
            for a in [0, 1, p, p * p - p] {
                cells.push((p, modulus, a));
            }
        }
    }
    run_cells(&cells, |&(p, modulus, a)| {
        let ring = Ring::integers_mod(modulus).expect("modulus >= 2");
        let s = subject(&format!("oort-tate:{p}:{a}"), &ring);
        let r = (|| {
            let g = oort_tate_algebra(p as u64, &int(a), &ring)?;
            let mut f = vec![Elem::zero(); p as usize];
            f[0] = ring.from_int(-a);
            f[p as usize - 1] = Elem::one();
            Ok(g.nonnull_ideal()? == canonical_form(&ring, p as usize, &[f])?)
        })();
        vec![outcome("J = <x^(p-1) - a>", &s, r)]
    })
}

fn raynaud_group_cells() -> Vec<CheckResult> {
    let ring = Ring::integers_mod(4).expect("modulus >= 2");
    let cells: Vec<(i64, i64)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    run_cells(&cells, |&(d1, d2)| {
        let s = subject(&format!("raynaud:2:{d1},{d2}"), &ring);
        let r = (|| {
            let g = raynaud_algebra(2, &[int(d1), int(d2)], &ring)?;
            let f = vec![ring.from_int(-d1 * d2), int(0), int(0), int(1)];
            Ok(g.nonnull_ideal()? == canonical_form(&ring, 4, &[f])?)
        })();
        vec![outcome("J = <x1*x2 - d1*d2>", &s, r)]
    })
}

fn raynaud_suite() -> Vec<CheckResult> {
    let cells = catalog_cells();
    let mut out = run_cells(&cells, |(name, ring, h)| raynaud_cell(name, ring, h));
    out.extend(oort_tate_cells());
    out.extend(raynaud_group_cells());
    out
}

/// `J_1 (x) J_2` inside `A_1 (x) A_2`.
pub fn tensor_of_ideals(j1: &Submodule, j2: &Submodule) -> Result<Submodule> {
    let ring = j1.ring();
    let mut vecs = Vec::new();
    for u in j1.rows() {
        for v in j2.rows() {
            vecs.push(u.iter().flat_map(|a| v.iter().map(move |b| ring.mul(a, b))).collect());
        }
    }
    canonical_form(ring, j1.ambient() * j2.ambient(), &vecs)
}

fn products_suite() -> Vec<CheckResult> {
    let factors: [(&str, Build, &str, Build); 5] = [
        ("mu:2", |r| mu(2, r), "mu:2", |r| mu(2, r)),
        ("mu:3", |r| mu(3, r), "mu:3", |r| mu(3, r)),
        ("mu:3", |r| mu(3, r), "constant:3", |r| constant_group(&[3], r)),
        ("mu:2", |r| mu(2, r), "constant:2", |r| constant_group(&[2], r)),
        (
            "constant:2",
            |r| constant_group(&[2], r),
            "constant:3",
            |r| constant_group(&[3], r),
        ),
    ];
    let rings = grid_rings();
    let cells: Vec<_> = factors.iter().flat_map(|f| rings.iter().map(move |r| (f, r))).collect();
    run_cells(&cells, |((n1, f1, n2, f2), ring)| {
        let s = subject(&format!("{n1} x {n2}"), ring);
        let r = (|| {
            let (h1, h2) = (f1(ring)?, f2(ring)?);
            let p = hopf_product(&h1, &h2)?;
            Ok(p.nonnull_ideal()? == tensor_of_ideals(&h1.nonnull_ideal()?, &h2.nonnull_ideal()?)?)
        })();
        vec![outcome("J_G = J_1 (x) J_2", &s, r)]
    })
}

/// The sequences used by the extension suite.
pub fn ses_catalog(ring: &Ring) -> Vec<(String, Result<ShortExactSequence>)> {
    vec![
        ("mu:2 < mu:4 -> mu:2".into(), mu_ses(2, ring)),
        ("mu:3 < mu:9 -> mu:3".into(), mu_ses(3, ring)),
        ("Z/2 < Z/4 -> Z/2".into(), constant_ses(2, ring)),
        ("Z/3 < Z/9 -> Z/3".into(), constant_ses(3, ring)),
        (
            "mu:2 < mu:2 x constant:2 -> constant:2".into(),
            mu(2, ring).and_then(|h| product_ses(&h, &constant_group(&[2], ring)?)),
        ),
        (
            "constant:2 < constant:2 x mu:2 -> mu:2".into(),
            constant_group(&[2], ring).and_then(|h| product_ses(&h, &mu(2, ring)?)),
        ),
        (
            "mu:3 < mu:3 x constant:3 -> constant:3".into(),
            mu(3, ring).and_then(|h| product_ses(&h, &constant_group(&[3], ring)?)),
        ),
        (
            "mu:2 < mu:2 x mu:2 -> mu:2".into(),
            mu(2, ring).and_then(|h| product_ses(&h, &mu(2, ring)?)),
        ),
    ]
}

/// Integrates generator against generator in stages and checks the result
/// generates `D_G`, and is Haar when both inputs are.
pub fn staged_integration_check(ses: &ShortExactSequence) -> Result<bool> {
    let ring = ses.a.ring();
    let gen =
        |h: &HopfAlgebra| -> Result<Measure> { Ok(Measure::new(crate::hopf::generator(&h.invariant_measures()?)?)) };
    let (mu_h, mu_k) = (gen(&ses.b)?, gen(&ses.c)?);
    let mu_g = integrate_in_stages(ses, &mu_h, &mu_k)?;
    let d_g = ses.a.invariant_measures()?;
    let generates = canonical_form(ring, ses.a.rank(), std::slice::from_ref(&mu_g.coords))? == d_g;
    let haar_in = ses.b.is_haar(&mu_h)? && ses.c.is_haar(&mu_k)?;
    let haar_ok = !haar_in || ses.a.is_haar(&mu_g)?;
    let two = ring.from_int(2);
    let doubled = integrate_in_stages(ses, &mu_h, &mu_k.scaled(ring, &two))?;
    let linear = doubled == mu_g.scaled(ring, &two);
    Ok(generates && haar_ok && linear)
}

fn extensions_suite() -> Vec<CheckResult> {
    let rings = grid_rings();
    let cells: Vec<(Ring, usize)> = rings.iter().flat_map(|r| (0..8).map(move |i| (r.clone(), i))).collect();
    run_cells(&cells, |(ring, idx)| {
        let (name, ses) = ses_catalog(ring).swap_remove(*idx);
        let s = subject(&name, ring);
        let ses = match ses {
            Ok(x) => x,
            Err(e) => return vec![outcome("certify sequence", &s, Err(e))],
        };
        let report = extension_report(&ses);
        let mut out = vec![
            outcome("J_A = pi^-1(J_B) J_C", &s, jabc_verify(&ses)),
            outcome(
                "pi(J_A) <= J_B",
                &s,
                report.as_ref().map(|r| r.h_inclusion_ok).map_err(Clone::clone),
            ),
            outcome(
                "J_A <= iota(J_C) A",
                &s,
                report.as_ref().map(|r| r.pullback_inclusion_ok).map_err(Clone::clone),
            ),
        ];
        if let Ok(r) = &report {
            if r.k_is_etale {
                out.push(outcome("cartesian (K etale)", &s, Ok(r.square_cartesian)));
            }
        }
        out.push(outcome("integration in stages", &s, staged_integration_check(&ses)));
        out
    })
}

/// Names of the towers in the rank-law grid: `p` in {2, 3}, heights 1 and
/// 2, lengths 1 and 2.
pub fn tower_catalog() -> Vec<String> {
    let mut out = Vec::new();
    for p in [2usize, 3] {
        for r in [1usize, 2] {
            out.push(format!("tower:mu:{p}:{r}"));
            for h in [1usize, 2] {
                out.push(format!("tower:constant:{p}:{r}:{h}"));
            }
            out.push(format!("tower:product:tower:mu:{p}:{r}+tower:mu:{p}:{r}"));
            out.push(format!("tower:product:tower:mu:{p}:{r}+tower:constant:{p}:{r}:1"));
        }
    }
    out
}

pub fn tower_rings() -> Vec<Ring> {
    let m = |n: i64| Ring::integers_mod(n).expect("modulus >= 2");
    vec![Ring::Integers, Ring::Rationals, m(2), m(3), m(4), m(9)]
}

fn towers_suite() -> Vec<CheckResult> {
    let rings = tower_rings();
    let names = tower_catalog();
    let cells: Vec<(&Ring, &String)> = rings.iter().flat_map(|r| names.iter().map(move |n| (r, n))).collect();
    run_cells(&cells, |&(ring, name)| {
        let t = match parse_tower(name, ring) {
            Ok(t) => t,
            Err(e) => return vec![outcome("construct", &subject(name, ring), Err(e))],
        };
        (1..=t.len())
            .map(|i| {
                let s = subject(&format!("{name} level {i}"), ring);
                outcome(
                    "rank = (p^h-1) p^(h(i-1))",
                    &s,
                    primitive_scheme(&t, i).map(|r| r.rank == r.expected_rank),
                )
            })
            .collect()
    })
}

/// Runs a suite over its grid.
pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    match suite {
        Suite::Raynaud => raynaud_suite(),
        Suite::Products => products_suite(),
        Suite::Extensions => extensions_suite(),
        Suite::Towers => towers_suite(),
        Suite::All => [Suite::Raynaud, Suite::Products, Suite::Extensions, Suite::Towers]
            .into_iter()
            .flat_map(run_suite)
            .collect(),
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::normal::{echelon_canonical, smith_diagonal, snf};
use super::ring::{big, Elem, Ring};
use crate::error::{Error, Result};

/// A finitely generated submodule of `R^n`, stored as its canonical
/// generator matrix (Hermite over `Z`, Howell over `Z/N`, RREF over `Q`).
/// Two submodules are equal exactly when their canonical rows agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    ring: Ring,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    StrictlyContains,
    StrictlyContained,
    Incomparable,
}

/// Structure of `R^n / S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotype {
    /// Torsion invariant factors of the quotient (non-unit, non-free).
    pub invariant_factors: Vec<BigInt>,
    /// Number of free cyclic summands of the quotient.
    pub free_rank: usize,
    pub is_free_quotient: bool,
    pub is_direct_summand: bool,
}

pub fn canonical_form(ring: &Ring, ambient: usize, generators: &[Vec<Elem>]) -> Result<Submodule> {
    let mut rows = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.len() != ambient {
            return Err(Error::ShapeMismatch(format!(
                "generator {i} has length {}, ambient rank is {ambient}",
                g.len()
            )));
        }
        rows.push(g.iter().map(|x| ring.coerce(x)).collect::<Result<Vec<_>>>()?);
    }
    Ok(Submodule::from_reduced(ring, ambient, &rows))
}

/// `{ v : v * M = 0 }` as a submodule of `R^{rows(M)}`.
pub fn kernel(m: &Matrix) -> Submodule {
    let (r, c) = (m.rows(), m.cols());
    let ring = m.ring();
    let aug: Vec<Vec<Elem>> = (0..r)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..r).map(|j| if i == j { Elem::one() } else { Elem::zero() }));
            row
        })
        .collect();
    let ech = echelon_canonical(ring, &aug, c + r);
    let sols: Vec<Vec<Elem>> = ech
        .into_iter()
        .filter(|row| row[..c].iter().all(Zero::is_zero))
        .map(|row| row[c..].to_vec())
        .collect();
    Submodule::from_reduced(ring, r, &sols)
}

impl Submodule {
    pub(crate) fn from_reduced(ring: &Ring, ambient: usize, rows: &[Vec<Elem>]) -> Submodule {
        Submodule {
            ring: ring.clone(),
            ambient,
            rows: echelon_canonical(ring, rows, ambient),
        }
    }

    pub fn zero(ring: &Ring, ambient: usize) -> Submodule {
        Submodule {
            ring: ring.clone(),
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn whole(ring: &Ring, ambient: usize) -> Submodule {
        let rows: Vec<Vec<Elem>> = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Submodule {
            ring: ring.clone(),
            ambient,
            rows,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Canonical generator rows.
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(&self.ring, self.ambient, self.rows.clone()).expect("canonical rows are well-formed")
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        *self == Submodule::whole(&self.ring, self.ambient)
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Submodule::from_reduced(&self.ring, self.ambient, &rows))
    }

    pub fn contains(&self, other: &Submodule) -> Result<bool> {
        Ok(self.sum(other)? == *self)
    }

    pub fn contains_vector(&self, v: &[Elem]) -> Result<bool> {
        let single = canonical_form(&self.ring, self.ambient, &[v.to_vec()])?;
        self.contains(&single)
    }

    pub fn compare(&self, other: &Submodule) -> Result<Relation> {
        self.check_compatible(other)?;
        if self == other {
            return Ok(Relation::Equal);
        }
        let s = self.sum(other)?;
        Ok(if s == *self {
            Relation::StrictlyContains
        } else if s == *other {
            Relation::StrictlyContained
        } else {
            Relation::Incomparable
        })
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Submodule::zero(&self.ring, self.ambient));
        }
        let mut stacked = self.rows.clone();
        stacked.extend(
            other
                .rows
                .iter()
                .map(|r| r.iter().map(|x| self.ring.neg(x)).collect::<Vec<_>>()),
        );
        let m = Matrix::from_rows(&self.ring, self.ambient, stacked)?;
        let k = kernel(&m);
        let k1 = self.rows.len();
        let g1 = self.matrix();
        let vecs: Vec<Vec<Elem>> = k.rows.iter().map(|r| g1.apply_row(&r[..k1])).collect();
        Ok(Submodule::from_reduced(&self.ring, self.ambient, &vecs))
    }

    /// Image under `v -> v * M`.
    pub fn image(&self, m: &Matrix) -> Result<Submodule> {
        if m.rows() != self.ambient {
            return Err(Error::AmbientMismatch(m.rows(), self.ambient));
        }
        let vecs: Vec<Vec<Elem>> = self.rows.iter().map(|r| m.apply_row(r)).collect();
        Ok(Submodule::from_reduced(&self.ring, m.cols(), &vecs))
    }

    /// `{ v : v * M in target }`.
    pub fn preimage(m: &Matrix, target: &Submodule) -> Result<Submodule> {
        if m.cols() != target.ambient {
            return Err(Error::AmbientMismatch(m.cols(), target.ambient));
        }
        let ring = m.ring();
        let mut stacked = m.row_vecs();
        stacked.extend(
            target
                .rows
                .iter()
                .map(|r| r.iter().map(|x| ring.neg(x)).collect::<Vec<_>>()),
        );
        let big_m = Matrix::from_rows(ring, m.cols(), stacked)?;
        let k = kernel(&big_m);
        let vecs: Vec<Vec<Elem>> = k.rows.iter().map(|r| r[..m.rows()].to_vec()).collect();
        Ok(Submodule::from_reduced(ring, m.rows(), &vecs))
    }

    /// Pushes coefficients along a ring map into `target`.
    pub fn map_coefficients(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Submodule {
        let vecs: Vec<Vec<Elem>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| target.reduce(f(x))).collect())
            .collect();
        Submodule::from_reduced(target, self.ambient, &vecs)
    }

    /// Invariant factors of the quotient `R^n / S` and summand tests.
    pub fn cotype(&self) -> Cotype {
        let n = self.ambient;
        match &self.ring {
            Ring::Rationals => Cotype {
                invariant_factors: Vec::new(),
                free_rank: n - self.rows.len(),
                is_free_quotient: true,
                is_direct_summand: true,
            },
            Ring::Integers => {
                let d = smith_diagonal(&self.ring, &self.rows, n);
                let invariant_factors: Vec<BigInt> =
                    d.into_iter().filter(|x| !x.is_zero() && !x.abs().is_one()).collect();
                let free = invariant_factors.is_empty();
                Cotype {
                    invariant_factors,
                    free_rank: n - self.rows.len(),
                    is_free_quotient: free,
                    is_direct_summand: free,
                }
            }
            Ring::IntegersMod(m) => {
                let mut d = smith_diagonal(&self.ring, &self.rows, n);
                d.resize(n, BigInt::zero());
                let free_rank = d.iter().filter(|x| x.is_zero()).count();
                let invariant_factors: Vec<BigInt> = d.into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect();
                let is_direct_summand = invariant_factors.iter().all(|x| x.gcd(&(m / x)).is_one());
                Cotype {
                    is_free_quotient: invariant_factors.is_empty(),
                    invariant_factors,
                    free_rank,
                    is_direct_summand,
                }
            }
        }
    }

    /// Minimal number of generators; the rank when the submodule is free.
    pub fn rank(&self) -> usize {
        match &self.ring {
            Ring::IntegersMod(_) => smith_diagonal(&self.ring, &self.rows, self.ambient)
                .iter()
                .filter(|x| !x.is_zero())
                .count(),
            _ => self.rows.len(),
        }
    }

    /// A basis when the submodule is free.
    pub fn free_basis(&self) -> Option<Vec<Vec<Elem>>> {
        match &self.ring {
            Ring::IntegersMod(_) => {
                if self.rows.is_empty() {
                    return Some(Vec::new());
                }
                let mut ext = BasisExtender::new(&self.ring, self.ambient);
                let mut basis = Vec::new();
                for r in &self.rows {
                    if ext.try_push(r) {
                        basis.push(r.clone());
                    }
                }
                if canonical_form(&self.ring, self.ambient, &basis).ok()? == *self {
                    return Some(basis);
                }
                let f = snf(&self.matrix()).ok()?;
                let diag = f.diagonal();
                if diag.iter().any(|d| !d.is_zero() && !d.is_one()) {
                    return None;
                }
                Some(
                    diag.iter()
                        .enumerate()
                        .filter(|(_, d)| d.is_one())
                        .map(|(i, _)| f.v.row(i).to_vec())
                        .collect(),
                )
            }
            _ => Some(self.rows.clone()),
        }
    }

    /// Short generating list for display: canonical rows that are not in the
    /// span of earlier ones, each scaled so its first unit coefficient is 1.
    pub fn display_generators(&self) -> Vec<Vec<Elem>> {
        let mut picked: Vec<Vec<Elem>> = Vec::new();
        let mut span = Submodule::zero(&self.ring, self.ambient);
        for r in &self.rows {
            if span.contains_vector(r).unwrap_or(false) {
                continue;
            }
            picked.push(r.clone());
            span = Submodule::from_reduced(&self.ring, self.ambient, &picked);
        }
        picked
            .into_iter()
            .map(
                |r| match r.iter().find(|x| self.ring.is_unit(x)).and_then(|u| self.ring.inv(u)) {
                    Some(inv) => r.iter().map(|x| self.ring.mul(x, &inv)).collect(),
                    None => r,
                },
            )
            .collect()
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("({})", cells.join(","))
            })
            .collect();
        write!(f, "span{{{}}} in {}^{}", rows.join(", "), self.ring, self.ambient)
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::zero(); n];
    v[i] = Elem::one();
    v
}

/// Greedily extends a partial basis of `R^n`: a vector is accepted when,
/// together with the vectors already accepted, it is part of some basis.
///
/// Maintains an invertible change of coordinates `T` under which the
/// accepted vectors are the first standard basis vectors; a candidate is
/// accepted iff the tail of `v * T` is unimodular.
pub struct BasisExtender {
    ring: Ring,
    n: usize,
    /// Columns of the coordinate change, stored row-major.
    t: Vec<Vec<Elem>>,
    count: usize,
}

impl BasisExtender {
    pub fn new(ring: &Ring, n: usize) -> BasisExtender {
        BasisExtender {
            ring: ring.clone(),
            n,
            t: (0..n).map(|i| unit_vector(n, i)).collect(),
            count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn coords(&self, v: &[Elem]) -> Vec<Elem> {
        let mut w = vec![Elem::zero(); self.n];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in w.iter_mut().enumerate() {
                let b = &self.t[i][j];
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        w.into_iter().map(|x| self.ring.reduce(x)).collect()
    }

    /// Column operation `(col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)`.
    fn col_op(&mut self, w: &mut [Elem], i: usize, j: usize, coef: [&Elem; 4]) {
        let [a, b, c, d] = coef;
        let ring = &self.ring;
        let apply = |x: &Elem, y: &Elem| (ring.reduce(a * x + b * y), ring.reduce(c * x + d * y));
        for row in self.t.iter_mut() {
            let (x, y) = apply(&row[i], &row[j]);
            row[i] = x;
            row[j] = y;
        }
        let (x, y) = apply(&w[i], &w[j]);
        w[i] = x;
        w[j] = y;
    }

    pub fn try_push(&mut self, v: &[Elem]) -> bool {
        if self.count == self.n {
            return false;
        }
        let mut w = self.coords(v);
        let c = self.count;
        if !self.ring.generates_unit_ideal(&w[c..]) {
            return false;
        }
        let zero = Elem::zero();
        let one = Elem::one();
        for k in c + 1..self.n {
            if w[k].is_zero() {
                continue;
            }
            if w[c].is_zero() {
                self.col_op(&mut w, c, k, [&zero, &one, &one, &zero]);
                continue;
            }
            match &self.ring {
                Ring::Rationals => {
                    let f = -(&w[k] / &w[c]);
                    self.col_op(&mut w, c, k, [&one, &zero, &f, &one]);
                }
                _ => {
                    let (a, b) = (w[c].to_integer(), w[k].to_integer());
                    let e = a.extended_gcd(&b);
                    let (x, y) = (big(e.x), big(e.y));
                    let (u, t) = (big(-(&b / &e.gcd)), big(&a / &e.gcd));
                    // new col_c = x col_c + y col_k; new col_k = u col_c + t col_k
                    self.col_op(&mut w, c, k, [&x, &y, &u, &t]);
                }
            }
        }
        let inv = self.ring.inv(&w[c]).expect("unimodular tail collapses to a unit");
        for row in self.t.iter_mut() {
            row[c] = self.ring.mul(&row[c], &inv);
        }
        w[c] = self.ring.mul(&w[c], &inv);
        for i in 0..c {
            if w[i].is_zero() {
                continue;
            }
            let f = self.ring.neg(&w[i]);
            self.col_op(&mut w, i, c, [&one, &f, &zero, &one]);
        }
        debug_assert!(w
            .iter()
            .enumerate()
            .all(|(i, x)| if i == c { x.is_one() } else { x.is_zero() }));
        self.count += 1;
        true
    }
}

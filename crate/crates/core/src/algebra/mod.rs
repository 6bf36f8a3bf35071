//! Finite free commutative algebras given by structure constants, together
//! with ideals, annihilators, quotients, tensor products and base change.

pub mod json;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::submodule::unit_vector;
use crate::exactalg::{canonical_form, inverse, kernel, BasisExtender, Elem, Matrix, Ring, RingHom, Submodule};

/// Sparse coordinate vector: sorted `(index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(usize, Elem)>;

pub(crate) fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    j * (j + 1) / 2 + i
}

pub(crate) fn to_sparse(ring: &Ring, v: &[Elem]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, ring.reduce(x.clone())))
        .collect()
}

pub(crate) fn to_dense(n: usize, v: &SparseVec) -> Vec<Elem> {
    let mut out = vec![Elem::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub(crate) fn accumulate(ring: &Ring, acc: BTreeMap<usize, Elem>) -> SparseVec {
    acc.into_iter()
        .map(|(k, c)| (k, ring.reduce(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// A commutative, associative, unital algebra that is free of finite rank
/// over its base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ring: Ring,
    rank: usize,
    labels: Vec<String>,
    /// `table[tri(i, j)]` is `e_i * e_j`.
    table: Vec<SparseVec>,
    unit: Vec<Elem>,
}

impl FiniteAlgebra {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[tri(i, j)]
    }

    /// Structure constants `(i, j, k, c)` with `i <= j`, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Elem)> {
        let mut out = Vec::new();
        for j in 0..self.rank {
            for i in 0..=j {
                for (k, c) in &self.table[tri(i, j)] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out.sort_by_key(|a| (a.0, a.1, a.2));
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        unit_vector(self.rank, i)
    }

    pub(crate) fn sparse_mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
        for (i, a) in u {
            for (j, b) in v {
                let ab = a * b;
                for (k, c) in &self.table[tri(*i, *j)] {
                    *acc.entry(*k).or_insert_with(Elem::zero) += &ab * c;
                }
            }
        }
        accumulate(&self.ring, acc)
    }

    pub fn multiply(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let p = self.sparse_mul(&to_sparse(&self.ring, u), &to_sparse(&self.ring, v));
        to_dense(self.rank, &p)
    }

    /// Matrix of `f -> g * f` (row `t` holds `g * e_t`).
    pub fn mult_matrix(&self, g: &[Elem]) -> Matrix {
        let gs = to_sparse(&self.ring, g);
        let rows = (0..self.rank)
            .map(|t| to_dense(self.rank, &self.sparse_mul(&gs, &vec![(t, Elem::one())])))
            .collect();
        Matrix::from_rows(&self.ring, self.rank, rows).expect("square")
    }

    /// Renders a coordinate vector with the basis labels, e.g. `1+x+x^2`.
    pub fn format_vector(&self, v: &[Elem]) -> String {
        format_with_labels(&self.ring, &self.labels, v)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteAlgebra> {
        if labels.len() != self.rank {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for rank {}",
                labels.len(),
                self.rank
            )));
        }
        self.labels = labels;
        Ok(self)
    }
}

pub fn format_with_labels(ring: &Ring, labels: &[String], v: &[Elem]) -> String {
    let mut out = String::new();
    for (x, label) in v.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        let c = ring.display_value(x);
        let neg = c < Elem::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit_label = label == "1";
        if mag.is_one() {
            out.push_str(label);
        } else if unit_label {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{mag}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Validating constructor. `mult` lists `(i, j, k, c)`: the coefficient of
/// `e_k` in `e_i * e_j`. A pair listed in only one orientation is mirrored;
/// a pair listed in both orientations must agree.
pub fn make_algebra(
    ring: &Ring,
    rank: usize,
    labels: Vec<String>,
    mult: &[(usize, usize, usize, Elem)],
    unit: Vec<Elem>,
) -> Result<FiniteAlgebra> {
    if labels.len() != rank || unit.len() != rank {
        return Err(Error::ShapeMismatch(format!(
            "rank {rank} with {} labels and unit of length {}",
            labels.len(),
            unit.len()
        )));
    }
    let mut oriented: BTreeMap<(usize, usize), BTreeMap<usize, Elem>> = BTreeMap::new();
    for (i, j, k, c) in mult {
        if *i >= rank || *j >= rank || *k >= rank {
            return Err(Error::ShapeMismatch(format!(
                "structure constant index ({i}, {j}, {k}) out of range"
            )));
        }
        *oriented
            .entry((*i, *j))
            .or_default()
            .entry(*k)
            .or_insert_with(Elem::zero) += ring.coerce(c)?;
    }
    let mut table = vec![SparseVec::new(); rank * (rank + 1) / 2];
    for (&(i, j), entries) in &oriented {
        let v = accumulate(ring, entries.clone());
        if i != j {
            if let Some(other) = oriented.get(&(j, i)) {
                if accumulate(ring, other.clone()) != v {
                    return Err(Error::NonCommutative(i.min(j), i.max(j)));
                }
            }
        }
        table[tri(i, j)] = v;
    }
    let unit: Vec<Elem> = unit.iter().map(|x| ring.coerce(x)).collect::<Result<_>>()?;
    let alg = FiniteAlgebra {
        ring: ring.clone(),
        rank,
        labels,
        table,
        unit,
    };
    validate_algebra(&alg)?;
    Ok(alg)
}

fn validate_algebra(a: &FiniteAlgebra) -> Result<()> {
    let n = a.rank;
    let unit = to_sparse(&a.ring, &a.unit);
    for i in 0..n {
        let e = vec![(i, Elem::one())];
        if a.sparse_mul(&unit, &e) != e {
            return Err(Error::BadUnit(i));
        }
    }
    for i in 0..n {
        for j in i..n {
            let ij = &a.table[tri(i, j)];
            for l in 0..n {
                let left = a.sparse_mul(ij, &vec![(l, Elem::one())]);
                let right = a.sparse_mul(&vec![(i, Elem::one())], &a.table[tri(j, l)]);
                if left != right {
                    return Err(Error::NonAssociative(i, j, l));
                }
            }
        }
    }
    Ok(())
}

/// A finite algebra with a counit (augmentation) `A -> k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedAlgebra {
    algebra: FiniteAlgebra,
    counit: Vec<Elem>,
}

impl AugmentedAlgebra {
    pub fn new(algebra: FiniteAlgebra, counit: Vec<Elem>) -> Result<AugmentedAlgebra> {
        let ring = algebra.ring.clone();
        if counit.len() != algebra.rank {
            return Err(Error::ShapeMismatch(format!(
                "counit of length {} for rank {}",
                counit.len(),
                algebra.rank
            )));
        }
        let counit: Vec<Elem> = counit.iter().map(|x| ring.coerce(x)).collect::<Result<_>>()?;
        let aug = AugmentedAlgebra { algebra, counit };
        if !aug.counit_of(&aug.algebra.unit).is_one() {
            return Err(Error::CounitNotMultiplicative(0, 0));
        }
        let n = aug.algebra.rank;
        for i in 0..n {
            for j in i..n {
                let lhs = aug.counit_sparse(aug.algebra.basis_product(i, j));
                let rhs = ring.mul(&aug.counit[i], &aug.counit[j]);
                if lhs != rhs {
                    return Err(Error::CounitNotMultiplicative(i, j));
                }
            }
        }
        Ok(aug)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn counit(&self) -> &[Elem] {
        &self.counit
    }

    pub fn counit_of(&self, v: &[Elem]) -> Elem {
        let ring = &self.algebra.ring;
        ring.reduce(v.iter().zip(&self.counit).fold(Elem::zero(), |acc, (a, b)| acc + a * b))
    }

    pub(crate) fn counit_sparse(&self, v: &SparseVec) -> Elem {
        let ring = &self.algebra.ring;
        ring.reduce(v.iter().fold(Elem::zero(), |acc, (i, a)| acc + a * &self.counit[*i]))
    }

    /// `I = ker(counit)`.
    pub fn augmentation_ideal(&self) -> Ideal {
        let col = Matrix::from_rows(
            &self.algebra.ring,
            1,
            self.counit.iter().map(|x| vec![x.clone()]).collect(),
        )
        .expect("column");
        Ideal { carrier: kernel(&col) }
    }

    pub fn base_change(&self, hom: &RingHom) -> Result<AugmentedAlgebra> {
        let algebra = base_change(&self.algebra, hom)?;
        AugmentedAlgebra::new(algebra, hom.apply_vec(&self.counit))
    }

    /// The non-nullity ideal: the annihilator of the augmentation ideal.
    /// Computed twice (as an annihilator, and from the defining condition
    /// `g f = counit(g) f`), and the two results must agree.
    pub fn nonnull_ideal(&self) -> Result<Submodule> {
        let a = &self.algebra;
        let ann = annihilator(a, &self.augmentation_ideal());
        let direct = intersect_kernels(
            &a.ring,
            a.rank,
            (0..a.rank).map(|g| {
                let mut m = a.mult_matrix(&a.basis_vector(g));
                for t in 0..a.rank {
                    let x = a.ring.sub(m.get(t, t), &self.counit[g]);
                    m.set(t, t, x);
                }
                m
            }),
        );
        if ann != direct {
            return Err(Error::Inconsistent(format!(
                "annihilator {ann} differs from invariant condition {direct}"
            )));
        }
        Ok(ann)
    }
}

/// An ideal of a finite algebra, carried by its canonical submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    carrier: Submodule,
}

impl Ideal {
    /// Wraps a submodule after checking it is closed under multiplication.
    pub fn new(a: &FiniteAlgebra, carrier: Submodule) -> Result<Ideal> {
        if carrier.ambient() != a.rank {
            return Err(Error::AmbientMismatch(carrier.ambient(), a.rank));
        }
        for i in 0..a.rank {
            let e = a.basis_vector(i);
            for r in carrier.rows() {
                if !carrier.contains_vector(&a.multiply(&e, r))? {
                    return Err(Error::NotAnIdeal(i));
                }
            }
        }
        Ok(Ideal { carrier })
    }

    pub fn zero(a: &FiniteAlgebra) -> Ideal {
        Ideal {
            carrier: Submodule::zero(&a.ring, a.rank),
        }
    }

    pub fn carrier(&self) -> &Submodule {
        &self.carrier
    }

    pub fn into_carrier(self) -> Submodule {
        self.carrier
    }

    /// Product ideal `I * J`.
    pub fn product(&self, other: &Ideal, a: &FiniteAlgebra) -> Result<Ideal> {
        let mut vecs = Vec::new();
        for u in self.carrier.rows() {
            for v in other.carrier.rows() {
                vecs.push(a.multiply(u, v));
            }
        }
        ideal_generated(a, &vecs)
    }
}

/// Smallest ideal containing `gens`, by saturating under multiplication by
/// the basis until the canonical form stops changing.
pub fn ideal_generated(a: &FiniteAlgebra, gens: &[Vec<Elem>]) -> Result<Ideal> {
    let mut current = canonical_form(&a.ring, a.rank, gens)?;
    loop {
        let mut vecs: Vec<Vec<Elem>> = current.rows().to_vec();
        for r in current.rows() {
            let rs = to_sparse(&a.ring, r);
            for i in 0..a.rank {
                vecs.push(to_dense(a.rank, &a.sparse_mul(&vec![(i, Elem::one())], &rs)));
            }
        }
        let next = canonical_form(&a.ring, a.rank, &vecs)?;
        if next == current {
            return Ok(Ideal { carrier: current });
        }
        current = next;
    }
}

/// Intersection of the left kernels of a family of `n x n` matrices,
/// narrowing one matrix at a time.
pub(crate) fn intersect_kernels(ring: &Ring, n: usize, maps: impl IntoIterator<Item = Matrix>) -> Submodule {
    let mut current = Submodule::whole(ring, n);
    for m in maps {
        if current.is_zero() {
            break;
        }
        let basis = current.matrix();
        let restricted = basis.mul(&m).expect("compatible shapes");
        if restricted.is_zero() {
            continue;
        }
        let k = kernel(&restricted);
        let vecs: Vec<Vec<Elem>> = k.rows().iter().map(|c| basis.apply_row(c)).collect();
        current = canonical_form(ring, n, &vecs).expect("well-formed");
    }
    current
}

/// `{ f : u f = 0 for all u in I }`.
pub fn annihilator(a: &FiniteAlgebra, ideal: &Ideal) -> Submodule {
    intersect_kernels(&a.ring, a.rank, ideal.carrier.rows().iter().map(|g| a.mult_matrix(g)))
}

/// Quotient `A / I` presented on a subset of the original basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    /// `rank(A) x rank(A/I)` matrix of the quotient map.
    pub projection: Matrix,
    /// Original basis indices used as the quotient basis (empty when the
    /// presentation had to fall back to a non-coordinate complement).
    pub basis_indices: Vec<usize>,
}

pub fn quotient_algebra(a: &FiniteAlgebra, ideal: &Ideal) -> Result<Quotient> {
    let ring = &a.ring;
    let n = a.rank;
    let carrier = &ideal.carrier;
    let cot = carrier.cotype();
    if !cot.is_direct_summand || !cot.is_free_quotient {
        return Err(Error::NotFree(cot.invariant_factors));
    }
    let basis = carrier
        .free_basis()
        .ok_or_else(|| Error::NotFree(cot.invariant_factors.clone()))?;
    let k = basis.len();
    let q = n - k;
    let mut ext = BasisExtender::new(ring, n);
    for b in &basis {
        if !ext.try_push(b) {
            return Err(Error::Inconsistent("ideal basis does not extend to a basis".into()));
        }
    }
    let mut chosen = Vec::new();
    for j in 0..n {
        if ext.len() == n {
            break;
        }
        if ext.try_push(&a.basis_vector(j)) {
            chosen.push(j);
        }
    }
    let (complement, labels, indices): (Vec<Vec<Elem>>, Vec<String>, Vec<usize>) = if chosen.len() == q {
        (
            chosen.iter().map(|&j| a.basis_vector(j)).collect(),
            chosen.iter().map(|&j| a.labels[j].clone()).collect(),
            chosen.clone(),
        )
    } else {
        let vecs = complement_basis(ring, n, &basis)?;
        let labels = (0..q).map(|i| format!("b{i}")).collect();
        (vecs, labels, Vec::new())
    };
    let mut rows = complement.clone();
    rows.extend(basis.iter().cloned());
    let b = Matrix::from_rows(ring, n, rows)?;
    let binv = inverse(&b).ok_or_else(|| Error::Inconsistent("complement is not a basis".into()))?;
    let projection = binv.select_columns(0..q);
    let mut mult = Vec::new();
    for s in 0..q {
        for t in s..q {
            let prod = projection.apply_row(&a.multiply(&complement[s], &complement[t]));
            for (kk, c) in prod.into_iter().enumerate() {
                if !c.is_zero() {
                    mult.push((s, t, kk, c));
                }
            }
        }
    }
    let unit = projection.apply_row(&a.unit);
    let algebra = make_algebra(ring, q, labels, &mult, unit)?;
    Ok(Quotient {
        algebra,
        projection,
        basis_indices: indices,
    })
}

/// Completes a basis of a free summand to a basis of `R^n`; returns only the
/// completing vectors.
fn complement_basis(ring: &Ring, n: usize, basis: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    // Some unit-content vector outside the span always exists; search over
    // standard vectors and pairwise sums, then fall back to the Smith basis.
    let mut ext = BasisExtender::new(ring, n);
    for b in basis {
        ext.try_push(b);
    }
    let mut out = Vec::new();
    let mut candidates: Vec<Vec<Elem>> = (0..n).map(|i| unit_vector(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit_vector(n, i);
            v[j] = Elem::one();
            candidates.push(v);
        }
    }
    for c in candidates {
        if ext.len() == n {
            break;
        }
        if ext.try_push(&c) {
            out.push(c);
        }
    }
    if ext.len() == n {
        return Ok(out);
    }
    let m = Matrix::from_rows(ring, n, basis.to_vec())?;
    let f = crate::exactalg::snf(&m)?;
    Ok((basis.len()..n).map(|i| f.v.row(i).to_vec()).collect())
}

fn tensor_labels(l1: &[String], l2: &[String]) -> Vec<String> {
    let clash = l1
        .iter()
        .any(|a| a != "1" && l2.iter().any(|b| b != "1" && shares_symbol(a, b)));
    let mut out = Vec::with_capacity(l1.len() * l2.len());
    for a in l1 {
        for b in l2 {
            let b = if clash && b != "1" { prime_label(b) } else { b.clone() };
            out.push(match (a.as_str(), b.as_str()) {
                ("1", _) => b.clone(),
                (_, "1") => a.clone(),
                _ => format!("{a}*{b}"),
            });
        }
    }
    out
}

fn symbols(label: &str) -> impl Iterator<Item = &str> {
    label
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .filter(|s| s.chars().next().is_some_and(|c| c.is_alphabetic()))
}

fn shares_symbol(a: &str, b: &str) -> bool {
    symbols(a).any(|x| symbols(b).any(|y| x == y))
}

fn prime_label(b: &str) -> String {
    let mut out = String::new();
    let mut in_sym = false;
    for c in b.chars() {
        let sym_char = c.is_alphanumeric() || c == '_';
        if in_sym && !sym_char {
            out.push('\'');
        }
        in_sym = sym_char && (in_sym || c.is_alphabetic());
        out.push(c);
    }
    if in_sym {
        out.push('\'');
    }
    out
}

/// `A1 (x) A2` with basis `e_i (x) f_j` at index `i * rank(A2) + j`.
pub fn tensor_product(a1: &FiniteAlgebra, a2: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if a1.ring != a2.ring {
        return Err(Error::RingMismatch(a1.ring.to_string(), a2.ring.to_string()));
    }
    let (n1, n2) = (a1.rank, a2.rank);
    let n = n1 * n2;
    let mut table = vec![SparseVec::new(); n * (n + 1) / 2];
    for i1 in 0..n1 {
        for j1 in 0..n1 {
            let p1 = a1.basis_product(i1, j1);
            for i2 in 0..n2 {
                for j2 in 0..n2 {
                    let (i, j) = (i1 * n2 + i2, j1 * n2 + j2);
                    if i > j {
                        continue;
                    }
                    let p2 = a2.basis_product(i2, j2);
                    let mut acc = BTreeMap::new();
                    for (k1, c1) in p1 {
                        for (k2, c2) in p2 {
                            *acc.entry(k1 * n2 + k2).or_insert_with(Elem::zero) += c1 * c2;
                        }
                    }
                    table[tri(i, j)] = accumulate(&a1.ring, acc);
                }
            }
        }
    }
    let mut unit = vec![Elem::zero(); n];
    for (i1, x) in a1.unit.iter().enumerate() {
        for (i2, y) in a2.unit.iter().enumerate() {
            unit[i1 * n2 + i2] = a1.ring.mul(x, y);
        }
    }
    let alg = FiniteAlgebra {
        ring: a1.ring.clone(),
        rank: n,
        labels: tensor_labels(&a1.labels, &a2.labels),
        table,
        unit,
    };
    validate_algebra(&alg)?;
    Ok(alg)
}

/// `R (x) A` along a supported ring map.
pub fn base_change(a: &FiniteAlgebra, hom: &RingHom) -> Result<FiniteAlgebra> {
    if hom.source() != a.ring {
        return Err(Error::UnsupportedHom(a.ring.to_string(), hom.target().to_string()));
    }
    let target = hom.target();
    let alg = FiniteAlgebra {
        ring: target.clone(),
        rank: a.rank,
        labels: a.labels.clone(),
        table: a
            .table
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(k, c)| (*k, hom.apply(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect(),
        unit: hom.apply_vec(&a.unit),
    };
    validate_algebra(&alg)?;
    Ok(alg)
}

/// Whether `v -> v * M` is a unital algebra homomorphism `A -> B`.
pub fn is_algebra_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, m: &Matrix) -> Result<bool> {
    if m.rows() != a.rank || m.cols() != b.rank {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{}, algebras have ranks {} and {}",
            m.rows(),
            m.cols(),
            a.rank,
            b.rank
        )));
    }
    if m.apply_row(&a.unit) != b.unit {
        return Ok(false);
    }
    let images: Vec<Vec<Elem>> = (0..a.rank).map(|i| m.row(i).to_vec()).collect();
    for i in 0..a.rank {
        for j in i..a.rank {
            let lhs = m.apply_row(&to_dense(a.rank, a.basis_product(i, j)));
            if lhs != b.multiply(&images[i], &images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monomial algebra `k[x]/(f)` for monic `f`, as a convenience for tests and
/// catalog constructors: `relation[d]` is the coefficient of `x^d` in
/// `x^n` after reduction (`x^n = sum relation[d] x^d`).
pub fn monogenic_algebra(ring: &Ring, relation: &[Elem], var: &str) -> Result<FiniteAlgebra> {
    let n = relation.len();
    let reduce = |coeffs: &mut Vec<Elem>| {
        while coeffs.len() > n {
            let top = coeffs.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - n;
            for (d, r) in relation.iter().enumerate() {
                coeffs[shift + d] += &top * r;
            }
        }
    };
    let mut mult = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut coeffs = vec![Elem::zero(); i + j + 1];
            coeffs[i + j] = Elem::one();
            reduce(&mut coeffs);
            for (k, c) in coeffs.into_iter().enumerate() {
                let c = ring.reduce(c);
                if !c.is_zero() {
                    mult.push((i, j, k, c));
                }
            }
        }
    }
    let labels = (0..n).map(|i| power_label(var, i)).collect();
    let mut unit = vec![Elem::zero(); n];
    if n > 0 {
        unit[0] = Elem::one();
    }
    make_algebra(ring, n, labels, &mult, unit)
}

pub fn power_label(var: &str, e: usize) -> String {
    match e {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::int;

    fn v(xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn cyclic(ring: &Ring, n: usize) -> FiniteAlgebra {
        let mut rel = vec![Elem::zero(); n];
        rel[0] = Elem::one();
        monogenic_algebra(ring, &rel, "x").unwrap()
    }

    #[test]
    fn constructor_accepts_and_rejects() {
        let z = Ring::Integers;
        let ok = make_algebra(
            &z,
            2,
            vec!["1".into(), "x".into()],
            &[(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 1, 0, int(1))],
            v(&[1, 0]),
        );
        assert!(ok.is_ok());
        let bad = make_algebra(
            &z,
            2,
            vec!["1".into(), "x".into()],
            &[(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 1, 1, int(1))],
            v(&[1, 0]),
        );
        // x*x = x is associative and unital: it is k x k, a legitimate
        // algebra; only an inconsistent table is rejected.
        assert!(bad.is_ok());
        let bad = make_algebra(
            &z,
            2,
            vec!["1".into(), "x".into()],
            &[
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 1, 1, int(1)),
                (1, 1, 0, int(1)),
            ],
            v(&[0, 1]),
        );
        assert!(matches!(bad, Err(Error::BadUnit(_)) | Err(Error::NonAssociative(..))));
        let noncomm = make_algebra(
            &z,
            2,
            vec!["1".into(), "x".into()],
            &[
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 0, int(1)),
                (1, 1, 0, int(1)),
            ],
            v(&[1, 0]),
        );
        assert!(matches!(noncomm, Err(Error::NonCommutative(0, 1))));
        let k = make_algebra(&z, 1, vec!["1".into()], &[(0, 0, 0, int(1))], v(&[1])).unwrap();
        assert_eq!(k.unit(), &[int(1)]);
    }

    #[test]
    fn nonassociative_table_is_rejected() {
        // e1*e1 = e1 + e2, e2 products zero apart from unit: (e1 e1) e1 != e1 (e1 e1)
        // fails once e1*e2 is set inconsistently.
        let z = Ring::Integers;
        let r = make_algebra(
            &z,
            3,
            vec!["1".into(), "a".into(), "b".into()],
            &[
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (0, 2, 2, int(1)),
                (1, 1, 2, int(1)),
                (1, 2, 1, int(1)),
            ],
            v(&[1, 0, 0]),
        );
        assert!(matches!(r, Err(Error::NonAssociative(..))));
    }

    #[test]
    fn multiplication_examples() {
        let z = Ring::Integers;
        let a = cyclic(&z, 4);
        let x3 = v(&[0, 0, 0, 1]);
        let x2 = v(&[0, 0, 1, 0]);
        assert_eq!(a.multiply(&x3, &x2), v(&[0, 1, 0, 0]));
        let f = v(&[3, -1, 2, 5]);
        assert_eq!(a.multiply(a.unit(), &f), f);
        // x^p = a x with p = 3, a = 5
        let r9 = Ring::integers_mod(9).unwrap();
        let ot = monogenic_algebra(&r9, &v(&[0, 5, 0]), "x").unwrap();
        assert_eq!(ot.multiply(&v(&[0, 0, 1]), &v(&[0, 1, 0])), v(&[0, 5, 0]));
    }

    #[test]
    fn ideal_generated_examples() {
        let z = Ring::Integers;
        let a = cyclic(&z, 4);
        let i = ideal_generated(&a, &[v(&[1, 0, 1, 0])]).unwrap();
        assert_eq!(
            i.carrier(),
            &canonical_form(&z, 4, &[v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1])]).unwrap()
        );
        assert!(ideal_generated(&a, &[a.unit().to_vec()]).unwrap().carrier().is_whole());
        assert!(ideal_generated(&a, &[]).unwrap().carrier().is_zero());
    }

    #[test]
    fn annihilator_examples() {
        let z = Ring::Integers;
        let a = cyclic(&z, 3);
        let aug = AugmentedAlgebra::new(a.clone(), v(&[1, 1, 1])).unwrap();
        let ann = annihilator(&a, &aug.augmentation_ideal());
        assert_eq!(ann, canonical_form(&z, 3, &[v(&[1, 1, 1])]).unwrap());
        assert!(annihilator(&a, &Ideal::zero(&a)).is_whole());

        let r9 = Ring::integers_mod(9).unwrap();
        let ot = monogenic_algebra(&r9, &v(&[0, 3, 0]), "x").unwrap();
        let x = ideal_generated(&ot, &[v(&[0, 1, 0])]).unwrap();
        assert_eq!(annihilator(&ot, &x), canonical_form(&r9, 3, &[v(&[-3, 0, 1])]).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let z = Ring::Integers;
        let a = cyclic(&z, 4);
        let i = ideal_generated(&a, &[v(&[1, 0, 1, 0])]).unwrap();
        let q = quotient_algebra(&a, &i).unwrap();
        assert_eq!(q.algebra.rank(), 2);
        assert_eq!(q.basis_indices, vec![0, 1]);
        assert_eq!(q.algebra.multiply(&v(&[0, 1]), &v(&[0, 1])), v(&[-1, 0]));
        assert!(is_algebra_hom(&a, &q.algebra, &q.projection).unwrap());

        let q0 = quotient_algebra(&a, &Ideal::zero(&a)).unwrap();
        assert_eq!(q0.algebra, a);
        assert_eq!(q0.projection, Matrix::identity(&z, 4));

        let a3 = cyclic(&z, 3);
        let j = ideal_generated(&a3, &[v(&[1, 1, 1])]).unwrap();
        assert_eq!(quotient_algebra(&a3, &j).unwrap().algebra.rank(), 2);
    }

    #[test]
    fn quotient_with_torsion_is_rejected() {
        let z = Ring::Integers;
        let a = cyclic(&z, 2);
        let i = ideal_generated(&a, &[v(&[2, 0])]).unwrap();
        assert!(matches!(quotient_algebra(&a, &i), Err(Error::NotFree(f)) if f == vec![2.into(), 2.into()]));
    }

    #[test]
    fn tensor_and_base_change() {
        let z = Ring::Integers;
        let k = make_algebra(&z, 1, vec!["1".into()], &[(0, 0, 0, int(1))], v(&[1])).unwrap();
        let a = cyclic(&z, 3);
        assert_eq!(tensor_product(&a, &k).unwrap(), a);
        let m2 = cyclic(&z, 2);
        let t = tensor_product(&m2, &m2).unwrap();
        assert_eq!(t.rank(), 4);
        assert_eq!(t.labels(), &["1", "x'", "x", "x*x'"]);
        assert_eq!(t.multiply(&v(&[0, 1, 0, 0]), &v(&[0, 0, 1, 0])), v(&[0, 0, 0, 1]));
        assert_eq!(tensor_product(&a, &a).unwrap().rank(), 9);

        let f3 = Ring::integers_mod(3).unwrap();
        let h = RingHom::between(&z, &f3).unwrap();
        let b = base_change(&a, &h).unwrap();
        assert_eq!(b.ring(), &f3);
        let q = base_change(&a, &RingHom::IntegersToRationals).unwrap();
        assert_eq!(q.structure_constants().len(), a.structure_constants().len());
        assert!(base_change(&b, &RingHom::IntegersToRationals).is_err());
    }

    #[test]
    fn algebra_hom_examples() {
        let z = Ring::Integers;
        let a2 = cyclic(&z, 2);
        let a4 = cyclic(&z, 4);
        let square = Matrix::from_i64(&z, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        assert!(is_algebra_hom(&a2, &a4, &square).unwrap());
        let lin = Matrix::from_i64(&z, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(!is_algebra_hom(&a2, &a4, &lin).unwrap());
        assert!(is_algebra_hom(&a4, &a4, &Matrix::identity(&z, 4)).unwrap());
        assert!(is_algebra_hom(&a4, &a2, &square).is_err());
    }

    #[test]
    fn formatting() {
        let r9 = Ring::integers_mod(9).unwrap();
        let a = cyclic(&r9, 3);
        assert_eq!(a.format_vector(&v(&[6, 0, 1])), "-3+x^2");
        assert_eq!(a.format_vector(&v(&[1, 1, 1])), "1+x+x^2");
        assert_eq!(a.format_vector(&v(&[0, 2, 0])), "2*x");
        assert_eq!(a.format_vector(&v(&[0, 0, 0])), "0");
    }
}

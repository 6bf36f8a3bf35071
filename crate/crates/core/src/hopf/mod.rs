//! Commutative, cocommutative finite Hopf algebras: validation, Cartier
//! duality, measures and convolution, the non-nullity ideal `J_G`, the
//! invariant measures `D_G`, and Haar measures.

pub mod ses;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::json::{parse_entries, parse_vec, strings, AlgebraJson};
use crate::algebra::{
    accumulate, intersect_kernels, make_algebra, tensor_product, to_dense, to_sparse, AugmentedAlgebra, FiniteAlgebra,
    SparseVec,
};
use crate::error::{Error, Result};
use crate::exactalg::ring::elem_to_string;
use crate::exactalg::submodule::unit_vector;
use crate::exactalg::{canonical_form, is_invertible, Elem, Matrix, Ring, RingHom, Submodule};

pub use ses::{extension_report, integrate_in_stages, jabc_verify, verify_ses, ExtensionReport, ShortExactSequence};

/// A linear functional on the coordinate ring, stored by its values on the
/// basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    pub coords: Vec<Elem>,
}

impl Measure {
    pub fn new(coords: Vec<Elem>) -> Measure {
        Measure { coords }
    }

    /// `<mu, f>`.
    pub fn pair(&self, ring: &Ring, f: &[Elem]) -> Elem {
        ring.reduce(self.coords.iter().zip(f).fold(Elem::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn scaled(&self, ring: &Ring, c: &Elem) -> Measure {
        Measure::new(self.coords.iter().map(|x| ring.mul(x, c)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    aug: AugmentedAlgebra,
    /// `comult[i]` is `Delta(e_i)` over the index `j * n + k` of `e_j (x) e_k`.
    comult: Vec<SparseVec>,
    antipode: Option<Matrix>,
}

/// Validating constructor. `comult` lists `(i, j, k, c)`: the coefficient of
/// `e_j (x) e_k` in `Delta(e_i)`.
pub fn make_hopf(
    aug: AugmentedAlgebra,
    comult: &[(usize, usize, usize, Elem)],
    antipode: Option<Matrix>,
) -> Result<HopfAlgebra> {
    let ring = aug.algebra().ring().clone();
    let n = aug.algebra().rank();
    let mut acc: Vec<BTreeMap<usize, Elem>> = vec![BTreeMap::new(); n];
    for (i, j, k, c) in comult {
        if *i >= n || *j >= n || *k >= n {
            return Err(Error::ShapeMismatch(format!(
                "comultiplication index ({i}, {j}, {k}) out of range"
            )));
        }
        *acc[*i].entry(j * n + k).or_insert_with(Elem::zero) += ring.coerce(c)?;
    }
    let comult = acc.into_iter().map(|m| accumulate(&ring, m)).collect();
    if let Some(s) = &antipode {
        if s.rows() != n || s.cols() != n || s.ring() != &ring {
            return Err(Error::ShapeMismatch(format!("antipode must be {n}x{n} over {ring}")));
        }
    }
    let h = HopfAlgebra { aug, comult, antipode };
    h.validate()?;
    Ok(h)
}

impl HopfAlgebra {
    pub fn aug(&self) -> &AugmentedAlgebra {
        &self.aug
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.aug.algebra()
    }

    pub fn ring(&self) -> &Ring {
        self.aug.algebra().ring()
    }

    pub fn rank(&self) -> usize {
        self.aug.algebra().rank()
    }

    pub fn counit(&self) -> &[Elem] {
        self.aug.counit()
    }

    pub fn unit(&self) -> &[Elem] {
        self.aug.algebra().unit()
    }

    pub fn labels(&self) -> &[String] {
        self.aug.algebra().labels()
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    /// `Delta(e_i)` as `((j, k), c)` triples.
    pub fn coproduct(&self, i: usize) -> impl Iterator<Item = (usize, usize, &Elem)> + '_ {
        let n = self.rank();
        self.comult[i].iter().map(move |(t, c)| (t / n, t % n, c))
    }

    /// Comultiplication entries `(i, j, k, c)`, sorted.
    pub fn comult_entries(&self) -> Vec<(usize, usize, usize, Elem)> {
        (0..self.rank())
            .flat_map(|i| self.coproduct(i).map(move |(j, k, c)| (i, j, k, c.clone())))
            .collect()
    }

    /// Equality of all structure tensors, ignoring basis labels.
    pub fn same_tensors(&self, other: &HopfAlgebra) -> bool {
        self.ring() == other.ring()
            && self.rank() == other.rank()
            && self.algebra().structure_constants() == other.algebra().structure_constants()
            && self.unit() == other.unit()
            && self.counit() == other.counit()
            && self.comult == other.comult
            && self.antipode == other.antipode
    }

    fn validate(&self) -> Result<()> {
        let ring = self.ring();
        let n = self.rank();
        let counit = self.counit();
        for i in 0..n {
            let mut left = vec![Elem::zero(); n];
            let mut right = vec![Elem::zero(); n];
            for (j, k, c) in self.coproduct(i) {
                left[k] += &counit[j] * c;
                right[j] += &counit[k] * c;
            }
            let e = unit_vector(n, i);
            let left: Vec<Elem> = left.into_iter().map(|x| ring.reduce(x)).collect();
            let right: Vec<Elem> = right.into_iter().map(|x| ring.reduce(x)).collect();
            if left != e || right != e {
                return Err(Error::CounitLawFails(i));
            }
        }
        let coassoc = (0..n).into_par_iter().find_first(|&i| {
            let mut l: BTreeMap<usize, Elem> = BTreeMap::new();
            let mut r: BTreeMap<usize, Elem> = BTreeMap::new();
            for (j, k, c) in self.coproduct(i) {
                for (a, b, d) in self.coproduct(j) {
                    *l.entry((a * n + b) * n + k).or_insert_with(Elem::zero) += c * d;
                }
                for (a, b, d) in self.coproduct(k) {
                    *r.entry((j * n + a) * n + b).or_insert_with(Elem::zero) += c * d;
                }
            }
            accumulate(ring, l) != accumulate(ring, r)
        });
        if let Some(i) = coassoc {
            return Err(Error::NotCoassociative(i));
        }
        for i in 0..n {
            for (j, k, c) in self.coproduct(i) {
                if self.comult[i]
                    .binary_search_by_key(&(k * n + j), |(t, _)| *t)
                    .map(|p| &self.comult[i][p].1)
                    != Ok(c)
                {
                    return Err(Error::NotCocommutative(i));
                }
            }
        }
        self.check_bialgebra()?;
        if let Some(s) = &self.antipode {
            let a = self.algebra();
            let rows: Vec<SparseVec> = (0..n).map(|j| to_sparse(ring, s.row(j))).collect();
            for i in 0..n {
                let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
                for (j, k, c) in self.coproduct(i) {
                    for (t, x) in a.sparse_mul(&rows[j], &vec![(k, Elem::one())]) {
                        *acc.entry(t).or_insert_with(Elem::zero) += c * x;
                    }
                }
                let acc = to_dense(n, &accumulate(ring, acc));
                let expect: Vec<Elem> = a.unit().iter().map(|u| ring.mul(u, &counit[i])).collect();
                if acc != expect {
                    return Err(Error::AntipodeFails(i));
                }
            }
        }
        Ok(())
    }

    /// `Delta(1) = 1 (x) 1` and `Delta(e_i e_j) = Delta(e_i) Delta(e_j)`.
    fn check_bialgebra(&self) -> Result<()> {
        let a = self.algebra();
        let ring = a.ring();
        let n = a.rank();
        let delta_of = |v: &SparseVec| -> SparseVec {
            let mut acc = BTreeMap::new();
            for (i, x) in v {
                for (t, c) in &self.comult[*i] {
                    *acc.entry(*t).or_insert_with(Elem::zero) += x * c;
                }
            }
            accumulate(ring, acc)
        };
        let unit: SparseVec = a
            .unit()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        let mut uu = BTreeMap::new();
        for (i, x) in &unit {
            for (j, y) in &unit {
                uu.insert(i * n + j, x * y);
            }
        }
        if delta_of(&unit) != accumulate(ring, uu) {
            return Err(Error::NotBialgebra(0, 0));
        }
        // partners[a] lists the c with e_a e_c != 0
        let partners: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).filter(|&y| !a.basis_product(x, y).is_empty()).collect())
            .collect();
        let by_first: Vec<BTreeMap<usize, Vec<(usize, &Elem)>>> = (0..n)
            .map(|j| {
                let mut m: BTreeMap<usize, Vec<(usize, &Elem)>> = BTreeMap::new();
                for (c, d, x) in self.coproduct(j) {
                    m.entry(c).or_default().push((d, x));
                }
                m
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let bad = pairs.par_iter().find_first(|&&(i, j)| {
            let lhs = delta_of(a.basis_product(i, j));
            let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
            for (x, b, c1) in self.coproduct(i) {
                for &y in &partners[x] {
                    let Some(terms) = by_first[j].get(&y) else { continue };
                    let left = a.basis_product(x, y);
                    for (d, c2) in terms {
                        let right = a.basis_product(b, *d);
                        if right.is_empty() {
                            continue;
                        }
                        let c12 = c1 * *c2;
                        for (p, u) in left {
                            for (q, v) in right {
                                *acc.entry(p * n + q).or_insert_with(Elem::zero) += &c12 * u * v;
                            }
                        }
                    }
                }
            }
            lhs != accumulate(ring, acc)
        });
        match bad {
            Some(&(i, j)) => Err(Error::NotBialgebra(i, j)),
            None => Ok(()),
        }
    }

    /// `J_G`: the annihilator of the augmentation ideal, cross-checked
    /// against the invariance condition.
    pub fn nonnull_ideal(&self) -> Result<Submodule> {
        self.aug.nonnull_ideal()
    }

    /// `<mu * nu, e_i> = sum Delta[i][j][k] mu_j nu_k`.
    pub fn star_measures(&self, mu: &Measure, nu: &Measure) -> Measure {
        let ring = self.ring();
        let coords = (0..self.rank())
            .map(|i| {
                ring.reduce(
                    self.coproduct(i)
                        .fold(Elem::zero(), |acc, (j, k, c)| acc + c * &mu.coords[j] * &nu.coords[k]),
                )
            })
            .collect();
        Measure::new(coords)
    }

    /// `(mu (x) id) Delta f`.
    pub fn sweep(&self, mu: &Measure, f: &[Elem]) -> Vec<Elem> {
        let ring = self.ring();
        let mut out = vec![Elem::zero(); self.rank()];
        for (i, x) in f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in self.coproduct(i) {
                out[k] += x * c * &mu.coords[j];
            }
        }
        out.into_iter().map(|x| ring.reduce(x)).collect()
    }

    /// `<f mu, g> = <mu, f g>`.
    pub fn scale_measure(&self, f: &[Elem], mu: &Measure) -> Measure {
        let a = self.algebra();
        let m = a.mult_matrix(f);
        Measure::new(m.apply_col(&mu.coords))
    }

    /// The counit as a measure: the unit for convolution.
    pub fn unit_measure(&self) -> Measure {
        Measure::new(self.counit().to_vec())
    }

    /// `D_G`, computed as the non-nullity ideal of the dual and checked
    /// against `nu * mu = <nu, 1> mu` for every basis functional `nu`.
    pub fn invariant_measures(&self) -> Result<Submodule> {
        let dual = cartier_dual(self)?;
        let d = dual.nonnull_ideal()?;
        let ring = self.ring();
        let n = self.rank();
        let unit = self.unit();
        let direct = intersect_kernels(
            ring,
            n,
            (0..n).map(|i| {
                let nu = Measure::new(unit_vector(n, i));
                let rows = (0..n)
                    .map(|t| {
                        let mut r = self.star_measures(&nu, &Measure::new(unit_vector(n, t))).coords;
                        r[t] = ring.sub(&r[t], &unit[i]);
                        r
                    })
                    .collect();
                Matrix::from_rows(ring, n, rows).expect("square")
            }),
        );
        if d != direct {
            return Err(Error::Inconsistent(format!(
                "dual non-nullity ideal {d} differs from invariance condition {direct}"
            )));
        }
        let cot = d.cotype();
        let rank = d.rank();
        if rank != 1 || !cot.is_direct_summand {
            return Err(Error::RankNotOne(rank));
        }
        Ok(d)
    }

    pub fn is_invariant(&self, mu: &Measure) -> Result<bool> {
        self.invariant_measures()?.contains_vector(&mu.coords)
    }

    /// A measure is Haar when it generates `D_G` and is surjective onto `k`.
    pub fn is_haar(&self, mu: &Measure) -> Result<bool> {
        let d = self.invariant_measures()?;
        Ok(
            canonical_form(self.ring(), self.rank(), std::slice::from_ref(&mu.coords))? == d
                && self.ring().generates_unit_ideal(mu.coords.iter()),
        )
    }

    pub fn duality_report(&self) -> Result<DualityReport> {
        let ring = self.ring();
        let d = self.invariant_measures()?;
        let j = self.nonnull_ideal()?;
        let mu0 = Measure::new(generator(&d)?);
        let f0 = generator(&j)?;
        let pairing = mu0.pair(ring, &f0);
        let n = self.rank();
        let rows = (0..n)
            .map(|t| self.scale_measure(&unit_vector(n, t), &mu0).coords)
            .collect();
        let iso = Matrix::from_rows(ring, n, rows)?;
        let haar = ring.generates_unit_ideal(mu0.coords.iter());
        Ok(DualityReport {
            pairing_is_perfect: ring.is_unit(&pairing),
            measure_iso_holds: is_invertible(&iso),
            haar_generator: haar.then_some(mu0),
            j_generator: f0,
        })
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut j = AlgebraJson::from_augmented(&self.aug);
        j.comult = Some(
            self.comult_entries()
                .into_iter()
                .map(|(i, a, b, c)| (i, a, b, elem_to_string(&c)))
                .collect(),
        );
        j.antipode = self
            .antipode
            .as_ref()
            .map(|s| s.row_vecs().iter().map(|r| strings(r)).collect());
        j
    }

    pub fn from_json(j: &AlgebraJson) -> Result<HopfAlgebra> {
        let aug = j.to_augmented()?;
        let ring = aug.algebra().ring().clone();
        let comult = j
            .comult
            .as_ref()
            .ok_or_else(|| Error::Parse("missing \"comult\"".into()))?;
        let comult = parse_entries(&ring, comult)?;
        let antipode = match &j.antipode {
            Some(rows) => {
                let rows = rows.iter().map(|r| parse_vec(&ring, r)).collect::<Result<Vec<_>>>()?;
                Some(Matrix::from_rows(&ring, aug.algebra().rank(), rows)?)
            }
            None => None,
        };
        make_hopf(aug, &comult, antipode)
    }
}

/// A single free generator of a rank-1 free submodule.
pub(crate) fn generator(s: &Submodule) -> Result<Vec<Elem>> {
    match s.free_basis() {
        Some(b) if b.len() == 1 => Ok(b.into_iter().next().expect("one element")),
        _ => Err(Error::RankNotOne(s.rank())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub pairing_is_perfect: bool,
    pub measure_iso_holds: bool,
    pub haar_generator: Option<Measure>,
    /// The generator of `J_G` used for the pairing test.
    pub j_generator: Vec<Elem>,
}

fn toggle_dual_label(l: &str) -> String {
    match l.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{l}*"),
    }
}

/// The Cartier dual on the dual basis: products and coproducts trade places,
/// unit and counit trade places, the antipode is transposed.
pub fn cartier_dual(h: &HopfAlgebra) -> Result<HopfAlgebra> {
    let ring = h.ring();
    let n = h.rank();
    let mut mult = Vec::new();
    for (i, j, k, c) in h.comult_entries() {
        if j <= k {
            mult.push((j, k, i, c));
        }
    }
    let mut comult = Vec::new();
    for (i, j, k, c) in h.algebra().structure_constants() {
        comult.push((k, i, j, c.clone()));
        if i != j {
            comult.push((k, j, i, c));
        }
    }
    let labels = h.labels().iter().map(|l| toggle_dual_label(l)).collect();
    let algebra = make_algebra(ring, n, labels, &mult, h.counit().to_vec())?;
    let aug = AugmentedAlgebra::new(algebra, h.unit().to_vec())?;
    make_hopf(aug, &comult, h.antipode.as_ref().map(Matrix::transpose))
}

/// Change of basis `f_i = c_i e_i` by units `c_i`.
pub fn rescale_basis(h: &HopfAlgebra, scales: &[Elem]) -> Result<HopfAlgebra> {
    let ring = h.ring();
    let n = h.rank();
    if scales.len() != n {
        return Err(Error::ShapeMismatch(format!("{} scales for rank {n}", scales.len())));
    }
    let inv: Vec<Elem> = scales
        .iter()
        .map(|c| {
            ring.inv(c)
                .ok_or_else(|| Error::InvalidElement(c.to_string(), "rescaling factor is not a unit".into()))
        })
        .collect::<Result<_>>()?;
    let mult: Vec<_> = h
        .algebra()
        .structure_constants()
        .into_iter()
        .map(|(i, j, k, c)| (i, j, k, ring.reduce(c * &scales[i] * &scales[j] * &inv[k])))
        .collect();
    let unit: Vec<Elem> = h.unit().iter().zip(&inv).map(|(u, x)| ring.mul(u, x)).collect();
    let counit: Vec<Elem> = h.counit().iter().zip(scales).map(|(u, x)| ring.mul(u, x)).collect();
    let comult: Vec<_> = h
        .comult_entries()
        .into_iter()
        .map(|(i, j, k, c)| (i, j, k, ring.reduce(c * &scales[i] * &inv[j] * &inv[k])))
        .collect();
    let antipode = h.antipode.as_ref().map(|s| {
        let mut t = s.clone();
        for i in 0..n {
            for j in 0..n {
                let x = s.get(i, j) * &scales[i] * &inv[j];
                t.set(i, j, x);
            }
        }
        t
    });
    let algebra = make_algebra(ring, n, h.labels().to_vec(), &mult, unit)?;
    make_hopf(AugmentedAlgebra::new(algebra, counit)?, &comult, antipode)
}

/// `H1 x H2` on `A1 (x) A2`.
pub fn hopf_product(h1: &HopfAlgebra, h2: &HopfAlgebra) -> Result<HopfAlgebra> {
    let algebra = tensor_product(h1.algebra(), h2.algebra())?;
    let (n1, n2) = (h1.rank(), h2.rank());
    let n = n1 * n2;
    let ring = h1.ring();
    let mut counit = Vec::with_capacity(n);
    for x in h1.counit() {
        for y in h2.counit() {
            counit.push(ring.mul(x, y));
        }
    }
    let mut comult = Vec::new();
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            for (a1, b1, c1) in h1.coproduct(i1) {
                for (a2, b2, c2) in h2.coproduct(i2) {
                    comult.push((i1 * n2 + i2, a1 * n2 + a2, b1 * n2 + b2, ring.mul(c1, c2)));
                }
            }
        }
    }
    let antipode = match (&h1.antipode, &h2.antipode) {
        (Some(s1), Some(s2)) => Some(s1.kron(s2)),
        _ => None,
    };
    make_hopf(AugmentedAlgebra::new(algebra, counit)?, &comult, antipode)
}

/// `R (x) H` along a supported ring map.
pub fn hopf_base_change(h: &HopfAlgebra, hom: &RingHom) -> Result<HopfAlgebra> {
    let aug = h.aug.base_change(hom)?;
    let target = hom.target();
    let comult: Vec<_> = h
        .comult_entries()
        .into_iter()
        .map(|(i, j, k, c)| (i, j, k, hom.apply(&c)))
        .collect();
    let antipode = h.antipode.as_ref().map(|s| s.map_entries(&target, |x| hom.apply(x)));
    make_hopf(aug, &comult, antipode)
}

/// Whether `v -> v * M` is a Hopf algebra map `H1 -> H2`. On failure the
/// error names the violated compatibility.
pub fn check_hopf_hom(h1: &HopfAlgebra, h2: &HopfAlgebra, m: &Matrix) -> Result<()> {
    if !crate::algebra::is_algebra_hom(h1.algebra(), h2.algebra(), m)? {
        return Err(Error::NotHopfHom("not an algebra homomorphism".into()));
    }
    let ring = h1.ring();
    let n2 = h2.rank();
    for i in 0..h1.rank() {
        let img = m.row(i);
        let e2 = ring.reduce(
            img.iter()
                .zip(h2.counit())
                .fold(Elem::zero(), |acc, (a, b)| acc + a * b),
        );
        if e2 != h1.counit()[i] {
            return Err(Error::NotHopfHom(format!("counit differs on basis element {i}")));
        }
        let mut lhs: BTreeMap<usize, Elem> = BTreeMap::new();
        for (t, x) in img.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in h2.coproduct(t) {
                *lhs.entry(j * n2 + k).or_insert_with(Elem::zero) += x * c;
            }
        }
        let mut rhs: BTreeMap<usize, Elem> = BTreeMap::new();
        for (j, k, c) in h1.coproduct(i) {
            for (p, x) in m.row(j).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (q, y) in m.row(k).iter().enumerate() {
                    if !y.is_zero() {
                        *rhs.entry(p * n2 + q).or_insert_with(Elem::zero) += c * x * y;
                    }
                }
            }
        }
        if accumulate(ring, lhs) != accumulate(ring, rhs) {
            return Err(Error::NotHopfHom(format!(
                "comultiplication differs on basis element {i}"
            )));
        }
    }
    Ok(())
}

/// Image of `J_G` under a ring map, as the canonical form over the target.
pub fn pushed_nonnull_ideal(h: &HopfAlgebra, hom: &RingHom) -> Result<Submodule> {
    let j = h.nonnull_ideal()?;
    let vecs: Vec<Vec<Elem>> = j.rows().iter().map(|r| hom.apply_vec(r)).collect();
    canonical_form(&hom.target(), h.rank(), &vecs)
}

/// Whether the basis consists of orthogonal idempotents summing to 1, which
/// presents the algebra as functions on a finite set.
pub fn has_idempotent_basis(a: &FiniteAlgebra) -> bool {
    let n = a.rank();
    if a.unit().iter().any(|x| !x.is_one()) {
        return false;
    }
    (0..n).all(|i| {
        (i..n).all(|j| {
            let p = a.basis_product(i, j);
            if i == j {
                p.len() == 1 && p[0].0 == i && p[0].1.is_one()
            } else {
                p.is_empty()
            }
        })
    })
}

//! The non-null subscheme `G^x = Spec(A/J_G)`, the primitive-element
//! subscheme of a tower level, and pointwise tests for sections.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::json::{parse_vec, strings, AlgebraJson};
use crate::algebra::{ideal_generated, is_algebra_hom, quotient_algebra, AugmentedAlgebra, FiniteAlgebra, Ideal};
use crate::error::{Error, Result};
use crate::exactalg::ring::RingJson;
use crate::exactalg::{kernel, Elem, Matrix, Ring, RingHom, Submodule};
use crate::groups::Tower;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSchemeReport {
    pub source_rank: usize,
    pub ideal: Submodule,
    /// Generators of the ideal as an ideal, for display.
    pub generators: Vec<Vec<Elem>>,
    pub quotient: FiniteAlgebra,
    /// `source_rank x rank` matrix of `A -> A/I`.
    pub projection: Matrix,
    pub rank: usize,
    /// The rank predicted by theory, when one is.
    pub expected_rank: usize,
    pub is_free: bool,
    pub ideal_is_summand: bool,
}

fn quotient_report(
    a: &FiniteAlgebra,
    ideal: Ideal,
    generators: Vec<Vec<Elem>>,
    expected_rank: usize,
) -> Result<QuotientSchemeReport> {
    let cot = ideal.carrier().cotype();
    let q = quotient_algebra(a, &ideal)?;
    if kernel(&q.projection) != *ideal.carrier() {
        return Err(Error::Inconsistent(
            "quotient map does not have the ideal as kernel".into(),
        ));
    }
    if !is_algebra_hom(a, &q.algebra, &q.projection)? {
        return Err(Error::Inconsistent(
            "quotient map is not an algebra homomorphism".into(),
        ));
    }
    let rank = q.algebra.rank();
    if rank + ideal.carrier().rank() != a.rank() {
        return Err(Error::Inconsistent("quotient rank and ideal rank do not add up".into()));
    }
    let report = QuotientSchemeReport {
        source_rank: a.rank(),
        ideal: ideal.into_carrier(),
        generators,
        quotient: q.algebra,
        projection: q.projection,
        rank,
        expected_rank,
        is_free: cot.is_free_quotient,
        ideal_is_summand: cot.is_direct_summand,
    };
    if rank != expected_rank {
        return Err(Error::RankMismatch {
            expected: expected_rank,
            got: rank,
        });
    }
    Ok(report)
}

/// `G^x`: the quotient by `J_G`, which has rank `|G| - 1`.
pub fn nonnull_scheme(g: &AugmentedAlgebra) -> Result<QuotientSchemeReport> {
    let a = g.algebra();
    let j = Ideal::new(a, g.nonnull_ideal()?)?;
    let gens = j.carrier().display_generators();
    quotient_report(a, j, gens, a.rank() - 1)
}

/// Whether `A = I + J_G` with `I ∩ J_G = 0`, `I` the augmentation ideal:
/// the identity section splits off `G^x`.
pub fn identity_splits_off(g: &AugmentedAlgebra) -> Result<bool> {
    let i = g.augmentation_ideal();
    let j = g.nonnull_ideal()?;
    Ok(i.carrier().sum(&j)?.is_whole() && i.carrier().intersect(&j)?.is_zero())
}

/// `phi_i(J_1)`: ideal generators of the primitive ideal.
pub fn primitive_generators(t: &Tower, i: usize) -> Result<Vec<Vec<Elem>>> {
    let phi = t.power_map(i)?;
    let j1 = t.level(1)?.nonnull_ideal()?;
    Ok(j1.display_generators().iter().map(|r| phi.apply_row(r)).collect())
}

/// `phi_i(J_1) A_i`.
pub fn primitive_ideal(t: &Tower, i: usize) -> Result<Ideal> {
    ideal_generated(t.level(i)?.algebra(), &primitive_generators(t, i)?)
}

/// `(p^h - 1) p^(h (i - 1))`.
pub fn expected_primitive_rank(t: &Tower, i: usize) -> usize {
    let q = t.p().pow(t.height() as u32);
    (q - 1) * q.pow(i as u32 - 1)
}

/// Primitive elements of level `i`: `G_i x_{G_1} G_1^x`, presented as
/// `A_i / phi_i(J_1) A_i`.
pub fn primitive_scheme(t: &Tower, i: usize) -> Result<QuotientSchemeReport> {
    let ideal = primitive_ideal(t, i)?;
    quotient_report(
        t.level(i)?.algebra(),
        ideal,
        primitive_generators(t, i)?,
        expected_primitive_rank(t, i),
    )
}

/// An `R`-valued point: the images in `R` of the basis of `A`, defining an
/// algebra map `R (x) A -> R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub target: Ring,
    pub base_hom: RingHom,
    pub values: Vec<Elem>,
}

impl Point {
    pub fn new(a: &FiniteAlgebra, target: &Ring, values: Vec<Elem>) -> Result<Point> {
        let base_hom = RingHom::between(a.ring(), target).map_err(|e| Error::InvalidPoint(e.to_string()))?;
        if values.len() != a.rank() {
            return Err(Error::InvalidPoint(format!(
                "{} values for an algebra of rank {}",
                values.len(),
                a.rank()
            )));
        }
        let values = values
            .iter()
            .map(|x| target.coerce(x))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidPoint(e.to_string()))?;
        let pt = Point {
            target: target.clone(),
            base_hom,
            values,
        };
        if !pt.evaluate(a.unit()).is_one() {
            return Err(Error::InvalidPoint("the unit does not map to 1".into()));
        }
        for i in 0..a.rank() {
            for j in i..a.rank() {
                let lhs = pt.evaluate(&crate::algebra::to_dense(a.rank(), a.basis_product(i, j)));
                if lhs != target.mul(&pt.values[i], &pt.values[j]) {
                    return Err(Error::InvalidPoint(format!(
                        "not multiplicative on basis pair ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(pt)
    }

    /// Image of `f` under the induced map.
    pub fn evaluate(&self, f: &[Elem]) -> Elem {
        let t = &self.target;
        t.reduce(
            f.iter()
                .zip(&self.values)
                .filter(|(c, _)| !c.is_zero())
                .fold(Elem::zero(), |acc, (c, v)| acc + self.base_hom.apply(c) * v),
        )
    }

    /// The point `x . M` of the source of `M` (for `M: B -> A` and `x` a
    /// point of `A`).
    pub fn pull_back(&self, source: &FiniteAlgebra, m: &Matrix) -> Result<Point> {
        let values = (0..m.rows()).map(|j| self.evaluate(m.row(j))).collect();
        Point::new(source, &self.target, values)
    }
}

pub fn is_nonnull_point(g: &AugmentedAlgebra, pt: &Point) -> Result<bool> {
    let j = g.nonnull_ideal()?;
    Ok(j.rows().iter().all(|r| pt.evaluate(r).is_zero()))
}

/// Whether a point of level `i` is primitive: its image in `G_1` is
/// non-null. Also decided by whether the point kills the primitive ideal;
/// the two answers must agree.
pub fn is_primitive_point(t: &Tower, i: usize, pt: &Point) -> Result<bool> {
    let first = t.level(1)?;
    let image = pt.pull_back(first.algebra(), t.power_map(i)?)?;
    let via_image = is_nonnull_point(first.aug(), &image)?;
    let ideal = primitive_ideal(t, i)?;
    let via_ideal = ideal.carrier().rows().iter().all(|r| pt.evaluate(r).is_zero());
    if via_image != via_ideal {
        return Err(Error::Inconsistent(format!(
            "primitivity by image ({via_image}) and by ideal ({via_ideal}) disagree"
        )));
    }
    Ok(via_image)
}

/// Evaluation at a group element of a constant group presented on
/// indicator functions: the indicator of `index` goes to 1, the others to 0.
pub fn section_point(a: &FiniteAlgebra, target: &Ring, index: usize) -> Result<Point> {
    let mut values = vec![Elem::zero(); a.rank()];
    if index >= values.len() {
        return Err(Error::InvalidPoint(format!("no basis element {index}")));
    }
    values[index] = Elem::one();
    Point::new(a, target, values)
}

/// A point of a diagonalizable group: `x^e -> prod_j zeta_j^(e_j)`.
pub fn character_point(a: &FiniteAlgebra, orders: &[usize], target: &Ring, zetas: &[Elem]) -> Result<Point> {
    if zetas.len() != orders.len() {
        return Err(Error::InvalidPoint("one value per generator".into()));
    }
    let values = (0..a.rank())
        .map(|idx| {
            crate::groups::digits(idx, orders)
                .iter()
                .zip(zetas)
                .fold(target.one(), |acc, (&e, z)| {
                    (0..e).fold(acc, |acc, _| target.mul(&acc, z))
                })
        })
        .collect();
    Point::new(a, target, values)
}

/// `{"target_ring": {...}, "values": ["..", ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub target_ring: RingJson,
    pub values: Vec<String>,
}

impl PointJson {
    pub fn from_point(p: &Point) -> PointJson {
        PointJson {
            target_ring: (&p.target).into(),
            values: strings(&p.values),
        }
    }

    pub fn to_point(&self, a: &FiniteAlgebra) -> Result<Point> {
        let target = Ring::try_from(&self.target_ring)?;
        let values = parse_vec(&target, &self.values).map_err(|e| Error::InvalidPoint(e.to_string()))?;
        Point::new(a, &target, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub source_rank: usize,
    /// Ideal generators, rendered in the source basis labels.
    pub ideal: Vec<String>,
    /// Ideal generators as coordinate vectors.
    pub ideal_coordinates: Vec<Vec<String>>,
    /// The ideal as a module, in canonical form.
    pub ideal_module: Vec<Vec<String>>,
    pub rank: usize,
    pub expected_rank: usize,
    pub is_free: bool,
    pub ideal_is_summand: bool,
    pub quotient: AlgebraJson,
    pub projection: Vec<Vec<String>>,
}

impl ReportJson {
    pub fn new(source: &FiniteAlgebra, r: &QuotientSchemeReport) -> ReportJson {
        let gens = &r.generators;
        ReportJson {
            source_rank: r.source_rank,
            ideal: gens.iter().map(|g| source.format_vector(g)).collect(),
            ideal_coordinates: gens.iter().map(|g| strings(g)).collect(),
            ideal_module: r.ideal.rows().iter().map(|g| strings(g)).collect(),
            rank: r.rank,
            expected_rank: r.expected_rank,
            is_free: r.is_free,
            ideal_is_summand: r.ideal_is_summand,
            quotient: AlgebraJson::from_algebra(&r.quotient),
            projection: r.projection.row_vecs().iter().map(|row| strings(row)).collect(),
        }
    }
}

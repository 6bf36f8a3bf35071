//! JSON interchange for algebras. Coefficients travel as decimal strings
//! (`"-3"`, `"1/2"`) so that large integers survive 64-bit consumers.

use serde::{Deserialize, Serialize};

use super::{make_algebra, AugmentedAlgebra, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::ring::{elem_to_string, parse_rational, RingJson};
use crate::exactalg::{Elem, Ring};

/// `[i, j, k, "c"]`: coefficient `c` of `e_k` in a product or coproduct.
pub type Entry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub ring: RingJson,
    pub rank: usize,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    pub mult: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
}

pub(crate) fn strings(v: &[Elem]) -> Vec<String> {
    v.iter().map(elem_to_string).collect()
}

pub(crate) fn parse_vec(ring: &Ring, v: &[String]) -> Result<Vec<Elem>> {
    v.iter().map(|s| ring.coerce(&parse_rational(s)?)).collect()
}

pub(crate) fn parse_entries(ring: &Ring, es: &[Entry]) -> Result<Vec<(usize, usize, usize, Elem)>> {
    es.iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, ring.coerce(&parse_rational(c)?)?)))
        .collect()
}

impl AlgebraJson {
    pub fn from_algebra(a: &FiniteAlgebra) -> AlgebraJson {
        AlgebraJson {
            ring: a.ring().into(),
            rank: a.rank(),
            labels: a.labels().to_vec(),
            unit: strings(a.unit()),
            mult: a
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, elem_to_string(&c)))
                .collect(),
            counit: None,
            comult: None,
            antipode: None,
        }
    }

    pub fn from_augmented(a: &AugmentedAlgebra) -> AlgebraJson {
        let mut j = AlgebraJson::from_algebra(a.algebra());
        j.counit = Some(strings(a.counit()));
        j
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::try_from(&self.ring)
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        let ring = self.ring()?;
        let mult = parse_entries(&ring, &self.mult)?;
        make_algebra(
            &ring,
            self.rank,
            self.labels.clone(),
            &mult,
            parse_vec(&ring, &self.unit)?,
        )
    }

    pub fn to_augmented(&self) -> Result<AugmentedAlgebra> {
        let counit = self
            .counit
            .as_ref()
            .ok_or_else(|| Error::Parse("missing \"counit\"".into()))?;
        let algebra = self.to_algebra()?;
        let counit = parse_vec(algebra.ring(), counit)?;
        AugmentedAlgebra::new(algebra, counit)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<AlgebraJson> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

//! The computable base rings: the integers, the rationals, and residue rings
//! `Z/N`.
//!
//! Elements of every ring are carried as [`Elem`] (an arbitrary-precision
//! rational). The ring descriptor owns normalization: residues live in
//! `[0, N)`, integers have denominator one, rationals are in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    IntegersMod(BigInt),
}

pub fn int(n: i64) -> Elem {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Elem {
    BigRational::from_integer(n)
}

impl Ring {
    pub fn integers_mod(n: impl Into<BigInt>) -> Result<Ring> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::InvalidParams(format!("modulus must be at least 2, got {n}")));
        }
        Ok(Ring::IntegersMod(n))
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::IntegersMod(n) => Some(n),
            _ => None,
        }
    }

    /// Characteristic, with 0 for the integers and the rationals.
    pub fn characteristic(&self) -> BigInt {
        self.modulus().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::IntegersMod(n) => is_prime(n),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::zero()
    }

    pub fn one(&self) -> Elem {
        Elem::one()
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.reduce_int(BigInt::from(n))
    }

    pub fn reduce_int(&self, n: BigInt) -> Elem {
        match self {
            Ring::IntegersMod(m) => big(n.mod_floor(m)),
            _ => big(n),
        }
    }

    /// Brings an integral element into normal form.
    pub fn reduce(&self, x: Elem) -> Elem {
        match self {
            Ring::IntegersMod(m) => {
                debug_assert!(x.is_integer());
                big(x.to_integer().mod_floor(m))
            }
            _ => x,
        }
    }

    /// Checks that `x` is a normalized element of this ring.
    pub fn contains(&self, x: &Elem) -> bool {
        match self {
            Ring::Integers => x.is_integer(),
            Ring::Rationals => true,
            Ring::IntegersMod(m) => x.is_integer() && !x.is_negative() && x.numer() < m,
        }
    }

    /// Converts an arbitrary rational into this ring if it has a meaning there
    /// (denominators must be invertible).
    pub fn coerce(&self, x: &Elem) -> Result<Elem> {
        match self {
            Ring::Rationals => Ok(x.clone()),
            Ring::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::InvalidElement(x.to_string(), "not an integer".into()))
                }
            }
            Ring::IntegersMod(m) => {
                let inv = mod_inverse(x.denom(), m).ok_or_else(|| {
                    Error::InvalidElement(x.to_string(), format!("denominator not invertible mod {m}"))
                })?;
                Ok(big((x.numer() * inv).mod_floor(m)))
            }
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(-a)
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match self {
            Ring::Integers => a.is_integer() && a.numer().abs().is_one(),
            Ring::Rationals => !a.is_zero(),
            Ring::IntegersMod(m) => a.numer().gcd(m).is_one(),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match self {
            Ring::Integers => self.is_unit(a).then(|| a.clone()),
            Ring::Rationals => (!a.is_zero()).then(|| a.recip()),
            Ring::IntegersMod(m) => mod_inverse(a.numer(), m).map(big),
        }
    }

    /// Whether the ideal generated by `elems` is the unit ideal.
    pub fn generates_unit_ideal<'a>(&self, elems: impl IntoIterator<Item = &'a Elem>) -> bool {
        match self {
            Ring::Rationals => elems.into_iter().any(|x| !x.is_zero()),
            Ring::Integers => {
                let g = elems.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x.numer()));
                g.is_one()
            }
            Ring::IntegersMod(m) => {
                let g = elems.into_iter().fold(m.clone(), |g, x| g.gcd(x.numer()));
                g.is_one()
            }
        }
    }

    /// Display representative: symmetric residues in `Z/N`.
    pub fn display_value(&self, x: &Elem) -> Elem {
        match self {
            Ring::IntegersMod(m) => {
                let v = x.numer().mod_floor(m);
                if &v * 2 > *m {
                    big(v - m)
                } else {
                    big(v)
                }
            }
            _ => x.clone(),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let x = parse_rational(s)?;
        self.coerce(&x)
    }

    /// Parses the command-line ring grammar: `z`, `q`, `zmod:<N>`.
    pub fn parse(s: &str) -> Result<Ring> {
        match s.trim() {
            "z" | "Z" => Ok(Ring::Integers),
            "q" | "Q" => Ok(Ring::Rationals),
            other => {
                let n = other
                    .strip_prefix("zmod:")
                    .ok_or_else(|| Error::Parse(format!("unknown ring {other:?} (expected z, q or zmod:<N>)")))?;
                let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad modulus {n:?}")))?;
                Ring::integers_mod(n).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            Ring::Integers => "z".into(),
            Ring::Rationals => "q".into(),
            Ring::IntegersMod(n) => format!("zmod:{n}"),
        }
    }

    /// Every element of a finite ring, in increasing order.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let m = self.modulus()?;
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while &k < m {
            out.push(big(k.clone()));
            k += 1;
        }
        Some(out)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod(n) => write!(f, "Z/{n}"),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Elem> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad number {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(big(s.parse().map_err(|_| bad())?)),
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Unit `u` of `Z/N` with `u * g ≡ gcd(g, N) (mod N)`.
pub(crate) fn normalizing_unit(g: &BigInt, n: &BigInt) -> BigInt {
    let d = g.gcd(n);
    if d.is_zero() {
        return BigInt::one();
    }
    let n1 = n / &d;
    let g1 = g / &d;
    if n1.is_one() {
        return BigInt::one();
    }
    let u0 = mod_inverse(&g1, &n1).expect("cofactor is coprime to modulus");
    let mut u = u0;
    while !u.gcd(n).is_one() {
        u += &n1;
    }
    u.mod_floor(n)
}

/// Ring homomorphisms between catalog rings along which coefficients can be
/// pushed forward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingHom {
    Identity(Ring),
    IntegersToMod(BigInt),
    IntegersToRationals,
    ModToMod { from: BigInt, to: BigInt },
}

impl RingHom {
    /// The canonical map `source -> target`, when one is supported.
    pub fn between(source: &Ring, target: &Ring) -> Result<RingHom> {
        let unsupported = || Error::UnsupportedHom(source.to_string(), target.to_string());
        match (source, target) {
            (a, b) if a == b => Ok(RingHom::Identity(a.clone())),
            (Ring::Integers, Ring::IntegersMod(n)) => Ok(RingHom::IntegersToMod(n.clone())),
            (Ring::Integers, Ring::Rationals) => Ok(RingHom::IntegersToRationals),
            (Ring::IntegersMod(n), Ring::IntegersMod(m)) if (n % m).is_zero() => Ok(RingHom::ModToMod {
                from: n.clone(),
                to: m.clone(),
            }),
            _ => Err(unsupported()),
        }
    }

    pub fn source(&self) -> Ring {
        match self {
            RingHom::Identity(r) => r.clone(),
            RingHom::IntegersToMod(_) | RingHom::IntegersToRationals => Ring::Integers,
            RingHom::ModToMod { from, .. } => Ring::IntegersMod(from.clone()),
        }
    }

    pub fn target(&self) -> Ring {
        match self {
            RingHom::Identity(r) => r.clone(),
            RingHom::IntegersToMod(n) => Ring::IntegersMod(n.clone()),
            RingHom::IntegersToRationals => Ring::Rationals,
            RingHom::ModToMod { to, .. } => Ring::IntegersMod(to.clone()),
        }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        self.target().reduce(x.clone())
    }

    pub fn apply_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let t = self.target();
        v.iter().map(|x| t.reduce(x.clone())).collect()
    }

    /// Whether the map is injective (needed for overring arguments).
    pub fn is_injective(&self) -> bool {
        matches!(self, RingHom::Identity(_) | RingHom::IntegersToRationals)
    }
}

/// JSON form of a ring: `{"kind": "int"}`, `{"kind": "rat"}`,
/// `{"kind": "int_mod", "modulus": "9"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

impl From<&Ring> for RingJson {
    fn from(r: &Ring) -> Self {
        match r {
            Ring::Integers => RingJson {
                kind: "int".into(),
                modulus: None,
            },
            Ring::Rationals => RingJson {
                kind: "rat".into(),
                modulus: None,
            },
            Ring::IntegersMod(n) => RingJson {
                kind: "int_mod".into(),
                modulus: Some(n.to_string()),
            },
        }
    }
}

impl TryFrom<&RingJson> for Ring {
    type Error = Error;

    fn try_from(j: &RingJson) -> Result<Ring> {
        match (j.kind.as_str(), &j.modulus) {
            ("int", None) => Ok(Ring::Integers),
            ("rat", None) => Ok(Ring::Rationals),
            ("int_mod", Some(m)) => {
                let n: BigInt = m.parse().map_err(|_| Error::Parse(format!("bad modulus {m:?}")))?;
                Ring::integers_mod(n)
            }
            _ => Err(Error::Parse(format!("bad ring descriptor {j:?}"))),
        }
    }
}

pub fn elem_to_string(x: &Elem) -> String {
    x.to_string()
}

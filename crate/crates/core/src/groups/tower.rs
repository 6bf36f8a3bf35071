use num_traits::One;

use super::{check_prime, constant_group, mu};
use crate::error::{Error, Result};
use crate::exactalg::{Elem, Matrix, Ring};
use crate::hopf::{check_hopf_hom, hopf_product, HopfAlgebra};

/// Levels `G_1, ..., G_r` of a truncated p-divisible group of height `h`,
/// with `power_maps[i - 1]: A_1 -> A_i` the pullback of multiplication by
/// `p^(i-1)` and `step_maps[i - 1]: A_i -> A_(i+1)` the pullback of
/// multiplication by `p`.
#[derive(Clone, Debug)]
pub struct Tower {
    ring: Ring,
    p: usize,
    h: usize,
    name: String,
    levels: Vec<HopfAlgebra>,
    power_maps: Vec<Matrix>,
    step_maps: Vec<Matrix>,
}

/// Largest level rank a tower may reach.
pub const MAX_TOWER_RANK: usize = 1024;

fn check_shape(p: usize, r: usize, h: usize) -> Result<()> {
    check_prime(p as u64)?;
    if r == 0 || h == 0 {
        return Err(Error::InvalidParams(
            "tower length and height must be at least 1".into(),
        ));
    }
    let too_big = (0..h * r).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&x| x <= MAX_TOWER_RANK));
    if too_big.is_none() {
        return Err(Error::InvalidParams(format!(
            "level rank {p}^{} exceeds {MAX_TOWER_RANK}",
            h * r
        )));
    }
    Ok(())
}

impl Tower {
    /// `mu_p, mu_p^2, ..., mu_p^r`; height 1.
    pub fn mu(p: usize, r: usize, ring: &Ring) -> Result<Tower> {
        check_shape(p, r, 1)?;
        let levels = (1..=r).map(|i| mu(p.pow(i as u32), ring)).collect::<Result<Vec<_>>>()?;
        let power_maps = (1..=r)
            .map(|i| {
                let q = p.pow(i as u32 - 1);
                let mut m = Matrix::zero(ring, p, p.pow(i as u32));
                for e in 0..p {
                    m.set(e, e * q, Elem::one());
                }
                m
            })
            .collect();
        let step_maps = (1..r)
            .map(|i| {
                let n = p.pow(i as u32);
                let mut m = Matrix::zero(ring, n, n * p);
                for e in 0..n {
                    m.set(e, e * p, Elem::one());
                }
                m
            })
            .collect();
        Tower::assemble(ring, p, 1, format!("tower:mu:{p}:{r}"), levels, power_maps, step_maps)
    }

    /// Constant `(Z/p^i)^h` at level `i`.
    pub fn constant(p: usize, r: usize, h: usize, ring: &Ring) -> Result<Tower> {
        check_shape(p, r, h)?;
        let orders = |i: usize| vec![p.pow(i as u32); h];
        let levels = (1..=r)
            .map(|i| constant_group(&orders(i), ring))
            .collect::<Result<Vec<_>>>()?;
        // Pullback along u -> u mod p^j from (Z/p^i)^h to (Z/p^j)^h.
        let reduction = |i: usize, j: usize| {
            let (big, small) = (orders(i), orders(j));
            let nb: usize = big.iter().product();
            let ns: usize = small.iter().product();
            let mut m = Matrix::zero(ring, ns, nb);
            for u in 0..nb {
                let du = super::digits(u, &big);
                m.set(super::index_of(&du, &small), u, Elem::one());
            }
            m
        };
        let power_maps = (1..=r).map(|i| reduction(i, 1)).collect();
        let step_maps = (1..r).map(|i| reduction(i + 1, i)).collect();
        Tower::assemble(
            ring,
            p,
            h,
            format!("tower:constant:{p}:{r}:{h}"),
            levels,
            power_maps,
            step_maps,
        )
    }

    /// Levelwise product; heights add.
    pub fn product(t1: &Tower, t2: &Tower) -> Result<Tower> {
        if t1.p != t2.p || t1.levels.len() != t2.levels.len() || t1.ring != t2.ring {
            return Err(Error::InvalidParams(format!(
                "cannot multiply towers {} and {}: primes, lengths and rings must agree",
                t1.name, t2.name
            )));
        }
        check_shape(t1.p, t1.len(), t1.h + t2.h)?;
        let levels = t1
            .levels
            .iter()
            .zip(&t2.levels)
            .map(|(a, b)| hopf_product(a, b))
            .collect::<Result<Vec<_>>>()?;
        let power_maps = t1
            .power_maps
            .iter()
            .zip(&t2.power_maps)
            .map(|(a, b)| a.kron(b))
            .collect();
        let step_maps = t1.step_maps.iter().zip(&t2.step_maps).map(|(a, b)| a.kron(b)).collect();
        Tower::assemble(
            &t1.ring,
            t1.p,
            t1.h + t2.h,
            format!("tower:product:{}+{}", t1.name, t2.name),
            levels,
            power_maps,
            step_maps,
        )
    }

    fn assemble(
        ring: &Ring,
        p: usize,
        h: usize,
        name: String,
        levels: Vec<HopfAlgebra>,
        power_maps: Vec<Matrix>,
        step_maps: Vec<Matrix>,
    ) -> Result<Tower> {
        let t = Tower {
            ring: ring.clone(),
            p,
            h,
            name,
            levels,
            power_maps,
            step_maps,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let first = &self.levels[0];
        for (i, level) in self.levels.iter().enumerate() {
            let expected = self.p.pow((self.h * (i + 1)) as u32);
            if level.rank() != expected {
                return Err(Error::RankMismatch {
                    expected,
                    got: level.rank(),
                });
            }
            check_hopf_hom(first, level, &self.power_maps[i])
                .map_err(|e| Error::Inconsistent(format!("power map at level {}: {e}", i + 1)))?;
        }
        if self.power_maps[0] != Matrix::identity(&self.ring, first.rank()) {
            return Err(Error::Inconsistent("power map at level 1 is not the identity".into()));
        }
        let mut composite = self.power_maps[0].clone();
        for (i, step) in self.step_maps.iter().enumerate() {
            check_hopf_hom(&self.levels[i], &self.levels[i + 1], step)
                .map_err(|e| Error::Inconsistent(format!("step map at level {}: {e}", i + 1)))?;
            composite = composite.mul(step)?;
            if composite != self.power_maps[i + 1] {
                return Err(Error::Inconsistent(format!(
                    "power map at level {} is not the composite of step maps",
                    i + 2
                )));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level `i`, counting from 1.
    pub fn level(&self, i: usize) -> Result<&HopfAlgebra> {
        self.check_level(i)?;
        Ok(&self.levels[i - 1])
    }

    /// `A_1 -> A_i`, counting from 1.
    pub fn power_map(&self, i: usize) -> Result<&Matrix> {
        self.check_level(i)?;
        Ok(&self.power_maps[i - 1])
    }

    pub fn step_map(&self, i: usize) -> Result<&Matrix> {
        if i == 0 || i >= self.levels.len() {
            return Err(Error::InvalidParams(format!("no step map out of level {i}")));
        }
        Ok(&self.step_maps[i - 1])
    }

    fn check_level(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.levels.len() {
            return Err(Error::InvalidParams(format!(
                "level {i} out of range 1..={} for {}",
                self.levels.len(),
                self.name
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::int;

    #[test]
    fn mu_tower_power_map() {
        let z = Ring::Integers;
        let t = Tower::mu(2, 2, &z).unwrap();
        let phi = t.power_map(2).unwrap();
        assert_eq!(phi.row(1), &[int(0), int(0), int(1), int(0)]);
        assert_eq!(t.level(2).unwrap().rank(), 4);
        assert!(t.level(3).is_err());
    }

    #[test]
    fn constant_tower_fibres() {
        let z = Ring::Integers;
        let t = Tower::constant(3, 2, 1, &z).unwrap();
        let phi = t.power_map(2).unwrap();
        for c in 0..3 {
            let fibre: Vec<usize> = (0..9).filter(|&u| phi.get(c, u).is_one()).collect();
            let expected: Vec<usize> = (0..9).filter(|u| (3 * u) % 9 == 3 * c).collect();
            assert_eq!(fibre, expected);
        }
    }

    #[test]
    fn product_tower_rank() {
        let z = Ring::Integers;
        let t = Tower::product(&Tower::mu(2, 2, &z).unwrap(), &Tower::constant(2, 2, 1, &z).unwrap()).unwrap();
        assert_eq!(t.height(), 2);
        assert_eq!(t.level(2).unwrap().rank(), 16);
        assert!(Tower::mu(2, 20, &z).is_err());
        assert!(Tower::mu(4, 1, &z).is_err());
    }
}

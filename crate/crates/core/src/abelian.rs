//! Finite abelian groups `mu_{r1} x ... x mu_{rk}` in fixed product form,
//! their elements, their characters and exact character values.
//!
//! The dual group is identified with the group through the same residue
//! vectors: the character `b` sends `a` to `exp(2 pi i sum_j a_j b_j / r_j)`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::cyclonum::CycNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Arc<[u32]>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidInput("cyclic factors must be >= 1".into()));
        }
        Ok(AbelianGroup {
            factors: factors.into(),
        })
    }

    /// The cyclic group `mu_r`.
    pub fn cyclic(r: u32) -> Result<Self> {
        Self::new(vec![r])
    }

    pub fn trivial() -> Self {
        Self::new(vec![1]).expect("valid")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&r| r as u128).product()
    }

    /// Level of the cyclotomic field holding all character values.
    pub fn character_level(&self) -> u32 {
        self.factors.iter().fold(1, |acc, &r| acc.lcm(&r))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            residues: vec![0; self.rank()],
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character(self.identity())
    }

    /// The element with the given residues, reduced modulo the factors.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::GroupMismatch(format!(
                "expected {} residues for group {self}, got {}",
                self.rank(),
                residues.len()
            )));
        }
        Ok(GroupElement {
            group: self.clone(),
            residues: residues
                .iter()
                .zip(self.factors.iter())
                .map(|(&a, &r)| a.rem_euclid(r as i64) as u32)
                .collect(),
        })
    }

    pub fn character(&self, residues: &[i64]) -> Result<Character> {
        self.element(residues).map(Character)
    }

    /// All elements in lexicographic residue order.
    pub fn enumerate_elements(&self, limit: u128) -> Result<Vec<GroupElement>> {
        let order = self.order();
        if order > limit {
            return Err(Error::GroupTooLarge { order, limit });
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut residues = vec![0u32; self.rank()];
        loop {
            out.push(GroupElement {
                group: self.clone(),
                residues: residues.clone(),
            });
            if !advance(&mut residues, &self.factors) {
                break;
            }
        }
        Ok(out)
    }

    pub fn enumerate_characters(&self, limit: u128) -> Result<Vec<Character>> {
        Ok(self
            .enumerate_elements(limit)?
            .into_iter()
            .map(Character)
            .collect())
    }
}

/// Odometer increment, last coordinate fastest. Returns false on wrap-around.
pub(crate) fn advance(residues: &mut [u32], bounds: &[u32]) -> bool {
    for i in (0..residues.len()).rev() {
        residues[i] += 1;
        if residues[i] < bounds[i] {
            return true;
        }
        residues[i] = 0;
    }
    false
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|r| format!("mu_{r}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: AbelianGroup,
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&a| a == 0)
    }

    fn check_same(&self, other: &GroupElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_same(other)?;
        Ok(GroupElement {
            group: self.group.clone(),
            residues: self
                .residues
                .iter()
                .zip(&other.residues)
                .zip(self.group.factors.iter())
                .map(|((&a, &b), &r)| (a + b) % r)
                .collect(),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            residues: self
                .residues
                .iter()
                .zip(self.group.factors.iter())
                .map(|(&a, &r)| (r - a) % r)
                .collect(),
        }
    }

    /// Smallest `m >= 1` with `m * g = 0`.
    pub fn order(&self) -> u64 {
        self.residues
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &r)| (r / r.gcd(&a)) as u64)
            .fold(1, |acc, o| acc.lcm(&o))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A character of the group, stored as a residue vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(GroupElement);

impl Character {
    pub fn group(&self) -> &AbelianGroup {
        &self.0.group
    }

    pub fn residues(&self) -> &[u32] {
        &self.0.residues
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_identity()
    }

    /// Pointwise product of characters.
    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.0.add(&other.0).map(Character)
    }

    /// The exponent `e` with `chi(g) = zeta_N^e`, `N` the character level.
    pub fn exponent(&self, g: &GroupElement) -> Result<i64> {
        self.0.check_same(g)?;
        let level = self.group().character_level() as i64;
        let e = self
            .0
            .residues
            .iter()
            .zip(&g.residues)
            .zip(self.group().factors.iter())
            .map(|((&b, &a), &r)| (b as i64) * (a as i64) * (level / r as i64))
            .sum::<i64>();
        Ok(e.rem_euclid(level))
    }

    /// Exact value `chi(g)` in `Q(zeta_N)`.
    pub fn value(&self, g: &GroupElement) -> Result<CycNumber> {
        let e = self.exponent(g)?;
        Ok(CycNumber::root_of_unity(e, self.group().character_level()))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn character_value(rho: &Character, g: &GroupElement) -> Result<CycNumber> {
    rho.value(g)
}

/// The full `|G| x |G|` table `chi_rho(g)`, rows indexed by characters.
pub fn character_table(group: &AbelianGroup, limit: u128) -> Result<Vec<Vec<CycNumber>>> {
    let elements = group.enumerate_elements(limit)?;
    let characters = group.enumerate_characters(limit)?;
    characters
        .iter()
        .map(|rho| elements.iter().map(|g| rho.value(g)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclonum::rational_int;

    #[test]
    fn character_values() {
        let g6 = AbelianGroup::new(vec![2, 3]).unwrap();
        let g = g6.element(&[1, 2]).unwrap();
        assert_eq!(g6.trivial_character().value(&g).unwrap(), CycNumber::one(1));
        let rho = g6.character(&[1, 1]).unwrap();
        // zeta_2 * zeta_3^2 = zeta_6^3 * zeta_6^4 = zeta_6^7 = zeta_6
        assert_eq!(rho.value(&g).unwrap(), CycNumber::root_of_unity(1, 6));

        let mu2 = AbelianGroup::cyclic(2).unwrap();
        let sign = mu2.character(&[1]).unwrap();
        let value = sign.value(&mu2.element(&[1]).unwrap()).unwrap();
        assert_eq!(value.as_rational(), Some(rational_int(-1)));
    }

    #[test]
    fn mismatched_groups() {
        let a = AbelianGroup::cyclic(2).unwrap();
        let b = AbelianGroup::cyclic(3).unwrap();
        let err = a.trivial_character().value(&b.identity());
        assert!(matches!(err, Err(Error::GroupMismatch(_))));
        assert!(matches!(a.element(&[1, 1]), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn element_orders() {
        let mu6 = AbelianGroup::cyclic(6).unwrap();
        assert_eq!(mu6.identity().order(), 1);
        assert_eq!(mu6.element(&[2]).unwrap().order(), 3);
        let g6 = AbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g6.element(&[1, 1]).unwrap().order(), 6);
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            AbelianGroup::trivial()
                .enumerate_elements(10)
                .unwrap()
                .len(),
            1
        );
        let klein = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(klein.enumerate_elements(10).unwrap().len(), 4);
        let mu6 = AbelianGroup::cyclic(6).unwrap();
        let residues: Vec<u32> = mu6
            .enumerate_elements(10)
            .unwrap()
            .iter()
            .map(|g| g.residues()[0])
            .collect();
        assert_eq!(residues, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(
            mu6.enumerate_elements(5),
            Err(Error::GroupTooLarge { order: 6, limit: 5 })
        );
    }

    #[test]
    fn klein_table_is_real() {
        let klein = AbelianGroup::new(vec![2, 2]).unwrap();
        let table = character_table(&klein, 10).unwrap();
        for row in &table {
            for v in row {
                let q = v.as_rational().unwrap();
                assert!(q == rational_int(1) || q == rational_int(-1));
            }
        }
    }
}

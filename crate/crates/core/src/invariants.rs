//! Gerbe invariants from base invariants.
//!
//! Twisted-sector invariants are `1/|G|` times the base invariant on
//! admissible sector vectors and vanish otherwise. In the character basis
//! `a_rho = (1/|G|) sum_g chi_rho(g^{-1}) eps_g^* a` the invariants vanish
//! unless all characters agree, and then equal
//! `(1/|G|^2) <a_1, ..., a_n>_beta chi_rho(g_beta)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::{Character, GroupElement};
use crate::base::{base_invariant, BaseInsertion, BaseTheory, CurveClass};
use crate::cyclonum::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::gerbe::GerbeSpec;
use crate::limits::Limits;

/// `delta psibar^k` with `delta` in the sector `H^*(G_g)`, identified with
/// a base class through `eps_g^*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedInsertion {
    pub sector: GroupElement,
    pub class_index: usize,
    pub psi_power: u32,
}

impl TwistedInsertion {
    pub fn base(&self) -> BaseInsertion {
        BaseInsertion {
            class_index: self.class_index,
            psi_power: self.psi_power,
        }
    }
}

/// `a_rho psibar^k` in the character basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoInsertion {
    pub rho: Character,
    pub class_index: usize,
    pub psi_power: u32,
}

impl RhoInsertion {
    pub fn base(&self) -> BaseInsertion {
        BaseInsertion {
            class_index: self.class_index,
            psi_power: self.psi_power,
        }
    }
}

impl fmt::Display for TwistedInsertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}:{}", self.sector, self.class_index)?;
        if self.psi_power > 0 {
            write!(f, ":psi^{}", self.psi_power)?;
        }
        Ok(())
    }
}

fn order_rational(spec: &GerbeSpec) -> Rational {
    Rational::from_integer(BigInt::from(spec.group().order()))
}

fn check_characters(spec: &GerbeSpec, ins: &[RhoInsertion]) -> Result<()> {
    match ins.iter().find(|i| i.rho.group() != spec.group()) {
        Some(bad) => Err(Error::GroupMismatch(format!(
            "character {} belongs to {}, gerbe band is {}",
            bad.rho,
            bad.rho.group(),
            spec.group()
        ))),
        None => Ok(()),
    }
}

/// `<delta_1 psibar^k1, ..., delta_n psibar^kn>^G_{0,n,beta}`.
pub fn twisted_invariant(
    spec: &GerbeSpec,
    th: &BaseTheory,
    ins: &[TwistedInsertion],
    beta: &CurveClass,
) -> Result<Rational> {
    let base: Vec<BaseInsertion> = ins.iter().map(TwistedInsertion::base).collect();
    th.check_query(&base, beta)?;
    let sectors: Vec<GroupElement> = ins.iter().map(|i| i.sector.clone()).collect();
    if !spec.is_admissible(&sectors, beta)? {
        return Ok(Rational::zero());
    }
    Ok(base_invariant(th, &base, beta)? / order_rational(spec))
}

/// `g_beta = (kappa_1(beta)^{-1}, ..., kappa_k(beta)^{-1})`.
pub fn g_beta(spec: &GerbeSpec, beta: &CurveClass) -> Result<GroupElement> {
    spec.g_beta(beta)
}

/// `<a_{1,rho_1} psibar^k1, ..., a_{n,rho_n} psibar^kn>^G_{0,n,beta}`.
pub fn rho_invariant(
    spec: &GerbeSpec,
    th: &BaseTheory,
    ins: &[RhoInsertion],
    beta: &CurveClass,
) -> Result<CycNumber> {
    check_characters(spec, ins)?;
    let base: Vec<BaseInsertion> = ins.iter().map(RhoInsertion::base).collect();
    th.check_query(&base, beta)?;
    let level = spec.group().character_level();
    let order = order_rational(spec);
    let Some(first) = ins.first() else {
        // without insertions there is no character to select a block; the
        // class 1 = sum_rho 1_rho collapses to the untwisted sector
        if !spec.kappa_element(beta)?.is_identity() {
            return Ok(CycNumber::zero(level));
        }
        let value = base_invariant(th, &base, beta)?;
        return Ok(CycNumber::from_rational(value / order, level));
    };
    if ins.iter().any(|i| i.rho != first.rho) {
        return Ok(CycNumber::zero(level));
    }
    let value = base_invariant(th, &base, beta)?;
    if value.is_zero() {
        return Ok(CycNumber::zero(level));
    }
    let twist = first.rho.value(&spec.g_beta(beta)?)?;
    Ok(twist.scale(&(value / (order.clone() * order))))
}

/// Recomputes [`twisted_invariant`] through the character basis, using
/// `eps_g^* a = sum_rho chi_rho(g) a_rho`.
///
/// Expanding the product gives one term per tuple of characters; the
/// characters are enumerated as a single common `rho` because
/// [`rho_invariant`] vanishes on every mixed tuple.
pub fn twisted_from_rho(
    spec: &GerbeSpec,
    th: &BaseTheory,
    ins: &[TwistedInsertion],
    beta: &CurveClass,
    limits: &Limits,
) -> Result<Rational> {
    let base: Vec<BaseInsertion> = ins.iter().map(TwistedInsertion::base).collect();
    th.check_query(&base, beta)?;
    let level = spec.group().character_level();
    let mut total = CycNumber::zero(level);
    for rho in spec.group().enumerate_characters(limits.group)? {
        let rho_ins: Vec<RhoInsertion> = ins
            .iter()
            .map(|i| RhoInsertion {
                rho: rho.clone(),
                class_index: i.class_index,
                psi_power: i.psi_power,
            })
            .collect();
        let value = rho_invariant(spec, th, &rho_ins, beta)?;
        if value.is_zero() {
            continue;
        }
        let mut weight = CycNumber::one(level);
        for i in ins {
            weight = &weight * &rho.value(&i.sector)?;
        }
        total += &(&weight * &value);
    }
    total.as_rational().ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "character expansion of a twisted invariant is irrational: {total}"
        ))
    })
}

/// `|G|^(2g - 2)`.
pub fn genus_g_scale(spec: &GerbeSpec, genus: u32) -> Rational {
    let order = BigInt::from(spec.group().order());
    if genus == 0 {
        Rational::new(BigInt::one(), order.pow(2))
    } else {
        Rational::from_integer(order.pow(2 * genus - 2))
    }
}

/// Serializable form of an invariant value.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Rational(String),
    Cyclotomic(CycNumber),
}

impl From<CycNumber> for InvariantValue {
    fn from(value: CycNumber) -> Self {
        match value.as_rational() {
            Some(q) => InvariantValue::Rational(q.to_string()),
            None => InvariantValue::Cyclotomic(value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::base::builtin_theory;
    use crate::cyclonum::{rational, rational_int};

    fn twisted(spec: &GerbeSpec, residues: &[i64], class_index: usize) -> TwistedInsertion {
        TwistedInsertion {
            sector: spec.group().element(residues).unwrap(),
            class_index,
            psi_power: 0,
        }
    }

    fn rho(spec: &GerbeSpec, residues: &[i64], class_index: usize) -> RhoInsertion {
        RhoInsertion {
            rho: spec.group().character(residues).unwrap(),
            class_index,
            psi_power: 0,
        }
    }

    #[test]
    fn twisted_examples() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let one = CurveClass::degree(1);
        let ins = [twisted(&spec, &[1], 2), twisted(&spec, &[0], 2)];
        assert_eq!(
            twisted_invariant(&spec, &p2, &ins, &one).unwrap(),
            rational(1, 2)
        );
        let ins = [twisted(&spec, &[0], 2), twisted(&spec, &[0], 2)];
        assert_eq!(
            twisted_invariant(&spec, &p2, &ins, &one).unwrap(),
            Rational::zero()
        );
        let even = GerbeSpec::root(2, vec![2]).unwrap();
        let ins = [twisted(&even, &[1], 2), twisted(&even, &[1], 2)];
        assert_eq!(
            twisted_invariant(&even, &p2, &ins, &one).unwrap(),
            rational(1, 2)
        );
    }

    #[test]
    fn rho_examples() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let one = CurveClass::degree(1);
        let signs = [rho(&spec, &[1], 2), rho(&spec, &[1], 2)];
        let value = rho_invariant(&spec, &p2, &signs, &one).unwrap();
        assert_eq!(value.as_rational(), Some(rational(-1, 4)));
        let mixed = [rho(&spec, &[1], 2), rho(&spec, &[0], 2)];
        assert!(rho_invariant(&spec, &p2, &mixed, &one).unwrap().is_zero());
        let trivial = [rho(&spec, &[0], 2), rho(&spec, &[0], 2)];
        let value = rho_invariant(&spec, &p2, &trivial, &one).unwrap();
        assert_eq!(value.as_rational(), Some(rational(1, 4)));
    }

    #[test]
    fn transform_round_trip() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let one = CurveClass::degree(1);
        let limits = Limits::default();
        for ins in [
            [twisted(&spec, &[1], 2), twisted(&spec, &[0], 2)],
            [twisted(&spec, &[0], 2), twisted(&spec, &[0], 2)],
        ] {
            assert_eq!(
                twisted_from_rho(&spec, &p2, &ins, &one, &limits).unwrap(),
                twisted_invariant(&spec, &p2, &ins, &one).unwrap()
            );
        }
        let trivial = GerbeSpec::root(1, vec![1]).unwrap();
        let ins = [twisted(&trivial, &[0], 2), twisted(&trivial, &[0], 2)];
        assert_eq!(
            twisted_from_rho(&trivial, &p2, &ins, &one, &limits).unwrap(),
            rational_int(1)
        );
    }

    #[test]
    fn multi_root_twist_is_a_sixth_root() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::new(
            AbelianGroup::new(vec![2, 3]).unwrap(),
            vec![vec![1], vec![1]],
        )
        .unwrap();
        let ins = [rho(&spec, &[1, 1], 2), rho(&spec, &[1, 1], 2)];
        let value = rho_invariant(&spec, &p2, &ins, &CurveClass::degree(1)).unwrap();
        // chi_(1,1)(1,2) = zeta_6
        let expected = CycNumber::root_of_unity(1, 6).scale(&rational(1, 36));
        assert_eq!(value, expected);
    }

    #[test]
    fn unstable_is_an_error() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let ins = [twisted(&spec, &[1], 2), twisted(&spec, &[1], 2)];
        assert!(matches!(
            twisted_invariant(&spec, &p2, &ins, &CurveClass::degree(0)),
            Err(Error::UnstableTriple { .. })
        ));
    }

    #[test]
    fn genus_scale() {
        let mu2 = GerbeSpec::root(2, vec![1]).unwrap();
        let mu3 = GerbeSpec::root(3, vec![1]).unwrap();
        let g6 = GerbeSpec::new(
            AbelianGroup::new(vec![2, 3]).unwrap(),
            vec![vec![1], vec![1]],
        )
        .unwrap();
        assert_eq!(genus_g_scale(&mu2, 0), rational(1, 4));
        assert_eq!(genus_g_scale(&mu3, 1), rational_int(1));
        assert_eq!(genus_g_scale(&g6, 2), rational_int(36));
        assert_eq!(genus_g_scale(&g6, 3), rational_int(1296));
    }
}

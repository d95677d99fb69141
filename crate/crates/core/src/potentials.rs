//! Truncated genus-0 descendant potentials and the decomposition identity
//!
//! `F_G(t_{i rho, j}, Q) = (1/|G|^2) sum_rho F_X(t_{i rho, j}, Q_rho)`,
//! `Q_rho^beta = Q^beta chi_rho(g_beta)`.
//!
//! A monomial `Q^beta t_{s1} ... t_{sn}` with sorted slots stores
//! `invariant / prod(multiplicity!)`, which is what the `1/n!` sum over
//! ordered tuples collapses to. Monomials have at least one variable; the
//! constant `Q^beta` terms carry no character label and are left out.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::abelian::Character;
use crate::base::{base_invariant, BaseInsertion, BaseTheory, CurveClass};
use crate::combinat::{multiplicity_factorials, multiset_count, multisets};
use crate::cyclonum::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::gerbe::GerbeSpec;
use crate::invariants::{genus_g_scale, rho_invariant, RhoInsertion};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub beta_max: CurveClass,
    pub n_max: usize,
    pub psi_max: u32,
}

/// A formal variable `t_{i, j}` (base) or `t_{i rho, j}` (gerbe).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slot {
    pub class_index: usize,
    #[serde(serialize_with = "ser_rho")]
    pub rho: Option<Character>,
    pub psi: u32,
}

fn ser_rho<S: Serializer>(rho: &Option<Character>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match rho {
        Some(c) => s.collect_seq(c.residues()),
        None => s.serialize_none(),
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}", self.class_index)?;
        if let Some(rho) = &self.rho {
            write!(f, ",rho={rho}")?;
        }
        write!(f, ",{}]", self.psi)
    }
}

pub type TermKey = (CurveClass, Vec<Slot>);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TruncatedPotential {
    terms: BTreeMap<TermKey, CycNumber>,
}

impl TruncatedPotential {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `value` to the coefficient of the monomial; the slots may be in
    /// any order.
    pub fn add_term(&mut self, beta: CurveClass, mut slots: Vec<Slot>, value: CycNumber) {
        if value.is_zero() {
            return;
        }
        slots.sort();
        let key = (beta, slots);
        let merged = match self.terms.remove(&key) {
            Some(old) => &old + &value,
            None => value,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn coefficient(&self, beta: &CurveClass, slots: &[Slot]) -> Option<&CycNumber> {
        let mut sorted = slots.to_vec();
        sorted.sort();
        self.terms.get(&(beta.clone(), sorted))
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, CycNumber> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    beta: &'a CurveClass,
    term: &'a [Slot],
    coefficient: &'a CycNumber,
}

impl Serialize for TruncatedPotential {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            self.terms
                .iter()
                .map(|((beta, term), coefficient)| TermRecord {
                    beta,
                    term,
                    coefficient,
                }),
        )
    }
}

fn base_slots(th: &BaseTheory, psi_max: u32) -> Vec<Slot> {
    (0..th.basis().len())
        .flat_map(|class_index| {
            (0..=psi_max).map(move |psi| Slot {
                class_index,
                rho: None,
                psi,
            })
        })
        .collect()
}

/// Number of (beta, multiset) pairs a truncation visits over `alphabet`
/// variables.
fn monomial_count(tr: &Truncation, alphabet: usize) -> u128 {
    let classes = tr
        .beta_max
        .coords()
        .iter()
        .fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1));
    let per_class = (1..=tr.n_max).fold(0u128, |acc, n| {
        acc.saturating_add(multiset_count(alphabet, n))
    });
    classes.saturating_mul(per_class)
}

fn check_size(tr: &Truncation, alphabet: usize, limits: &Limits) -> Result<()> {
    let size = monomial_count(tr, alphabet);
    if size > limits.truncation {
        return Err(Error::TruncationTooLarge {
            size,
            limit: limits.truncation,
        });
    }
    Ok(())
}

fn stable(beta: &CurveClass, n: usize) -> bool {
    !beta.is_zero() || n >= 3
}

fn inverse_multiplicities(slots: &[Slot]) -> Rational {
    Rational::new(BigInt::from(1), multiplicity_factorials(slots))
}

/// `F^0_X` up to the truncation.
pub fn build_base_potential(
    th: &BaseTheory,
    tr: &Truncation,
    limits: &Limits,
) -> Result<TruncatedPotential> {
    let alphabet = base_slots(th, tr.psi_max);
    check_size(tr, alphabet.len(), limits)?;
    let mut pot = TruncatedPotential::new();
    for beta in tr.beta_max.classes_below() {
        for n in 1..=tr.n_max {
            if !stable(&beta, n) {
                continue;
            }
            for multiset in multisets(alphabet.len(), n) {
                let slots: Vec<Slot> = multiset.iter().map(|&k| alphabet[k].clone()).collect();
                let ins: Vec<BaseInsertion> = slots
                    .iter()
                    .map(|s| BaseInsertion {
                        class_index: s.class_index,
                        psi_power: s.psi,
                    })
                    .collect();
                let value = base_invariant(th, &ins, &beta)?;
                if value.is_zero() {
                    continue;
                }
                let coefficient = value * inverse_multiplicities(&slots);
                pot.add_term(
                    beta.clone(),
                    slots,
                    CycNumber::from_rational(coefficient, 1),
                );
            }
        }
    }
    Ok(pot)
}

/// `F^0_G` in the character basis, from [`rho_invariant`].
pub fn build_gerbe_potential(
    spec: &GerbeSpec,
    th: &BaseTheory,
    tr: &Truncation,
    limits: &Limits,
) -> Result<TruncatedPotential> {
    let characters = spec.group().enumerate_characters(limits.group)?;
    let alphabet: Vec<Slot> = characters
        .iter()
        .flat_map(|rho| {
            base_slots(th, tr.psi_max).into_iter().map(move |s| Slot {
                rho: Some(rho.clone()),
                ..s
            })
        })
        .collect();
    check_size(tr, alphabet.len(), limits)?;
    let mut pot = TruncatedPotential::new();
    for beta in tr.beta_max.classes_below() {
        for n in 1..=tr.n_max {
            if !stable(&beta, n) {
                continue;
            }
            for multiset in multisets(alphabet.len(), n) {
                let slots: Vec<Slot> = multiset.iter().map(|&k| alphabet[k].clone()).collect();
                let ins: Vec<RhoInsertion> = slots
                    .iter()
                    .map(|s| RhoInsertion {
                        rho: s.rho.clone().expect("gerbe slots carry a character"),
                        class_index: s.class_index,
                        psi_power: s.psi,
                    })
                    .collect();
                let value = rho_invariant(spec, th, &ins, &beta)?;
                if value.is_zero() {
                    continue;
                }
                let coefficient = value.scale(&inverse_multiplicities(&slots));
                pot.add_term(beta.clone(), slots, coefficient);
            }
        }
    }
    Ok(pot)
}

/// `Q_rho^beta / Q^beta = chi_rho(g_beta)`.
pub fn novikov_twist(spec: &GerbeSpec, rho: &Character, beta: &CurveClass) -> Result<CycNumber> {
    rho.value(&spec.g_beta(beta)?)
}

/// `(1/|G|^2) sum_rho F_X(t_{i rho, j}, Q_rho)`, built from the base
/// potential alone.
pub fn decomposition_rhs(
    spec: &GerbeSpec,
    th: &BaseTheory,
    tr: &Truncation,
    limits: &Limits,
) -> Result<TruncatedPotential> {
    let base = build_base_potential(th, tr, limits)?;
    let prefactor = genus_g_scale(spec, 0);
    let mut pot = TruncatedPotential::new();
    for rho in spec.group().enumerate_characters(limits.group)? {
        for ((beta, slots), coefficient) in base.terms() {
            let relabeled: Vec<Slot> = slots
                .iter()
                .map(|s| Slot {
                    rho: Some(rho.clone()),
                    ..s.clone()
                })
                .collect();
            let twisted = (coefficient * &novikov_twist(spec, &rho, beta)?).scale(&prefactor);
            pot.add_term(beta.clone(), relabeled, twisted);
        }
    }
    Ok(pot)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub beta: CurveClass,
    pub term: Vec<Slot>,
    pub lhs: CycNumber,
    pub rhs: CycNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub equal: bool,
    pub checked_terms: usize,
    pub witness: Option<Witness>,
}

/// Coefficient-wise comparison over the union of both supports; the
/// witness is the first differing key in term order.
pub fn compare_potentials(
    lhs: &TruncatedPotential,
    rhs: &TruncatedPotential,
) -> DecompositionReport {
    let mut keys: Vec<&TermKey> = lhs.terms.keys().chain(rhs.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    let level_of = |p: &TruncatedPotential| p.terms.values().next().map_or(1, CycNumber::level);
    let zero = CycNumber::zero(level_of(lhs).max(level_of(rhs)));
    for key in &keys {
        let l = lhs.terms.get(key).unwrap_or(&zero);
        let r = rhs.terms.get(key).unwrap_or(&zero);
        if l != r {
            return DecompositionReport {
                equal: false,
                checked_terms: keys.len(),
                witness: Some(Witness {
                    beta: key.0.clone(),
                    term: key.1.clone(),
                    lhs: l.clone(),
                    rhs: r.clone(),
                }),
            };
        }
    }
    DecompositionReport {
        equal: true,
        checked_terms: keys.len(),
        witness: None,
    }
}

/// Checks `F_G = (1/|G|^2) sum_rho F_X(t_rho, Q_rho)` on the truncation.
pub fn verify_decomposition(
    spec: &GerbeSpec,
    th: &BaseTheory,
    tr: &Truncation,
    limits: &Limits,
) -> Result<DecompositionReport> {
    let lhs = build_gerbe_potential(spec, th, tr, limits)?;
    let rhs = decomposition_rhs(spec, th, tr, limits)?;
    Ok(compare_potentials(&lhs, &rhs))
}

/// The genus-`g` prefactor reduces to the genus-0 one and steps by
/// `|G|^2` from `g` to `g + 1`.
pub fn genus_g_decomposition_factor_check(spec: &GerbeSpec, genus: u32) -> bool {
    let order = Rational::from_integer(BigInt::from(spec.group().order()));
    let square = order.clone() * order;
    let genus_zero = genus_g_scale(spec, 0) == Rational::from_integer(BigInt::from(1)) / &square;
    let step = genus_g_scale(spec, genus) * &square == genus_g_scale(spec, genus + 1);
    genus_zero && step && !genus_g_scale(spec, genus).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::base::builtin_theory;
    use crate::cyclonum::rational;

    fn tr(beta: u32, n: usize) -> Truncation {
        Truncation {
            beta_max: CurveClass::degree(beta),
            n_max: n,
            psi_max: 0,
        }
    }

    fn slot(class_index: usize, rho: Option<Character>) -> Slot {
        Slot {
            class_index,
            rho,
            psi: 0,
        }
    }

    #[test]
    fn base_potential_terms() {
        let p1 = builtin_theory("P1").unwrap();
        let limits = Limits::default();
        let pot = build_base_potential(&p1, &tr(1, 3), &limits).unwrap();
        let pt = slot(1, None);
        assert_eq!(
            pot.coefficient(&CurveClass::degree(1), &[pt.clone(), pt.clone()])
                .unwrap()
                .as_rational(),
            Some(rational(1, 2))
        );
        // classical <1, pt, 1> has multiplicity 2 for the unit
        let unit = slot(0, None);
        assert_eq!(
            pot.coefficient(&CurveClass::degree(0), &[pt, unit.clone(), unit])
                .unwrap()
                .as_rational(),
            Some(rational(1, 2))
        );
        assert!(build_base_potential(&p1, &tr(1, 0), &limits)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn gerbe_potential_sign_block() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let limits = Limits::default();
        let pot = build_gerbe_potential(&spec, &p2, &tr(1, 2), &limits).unwrap();
        let sign = spec.group().character(&[1]).unwrap();
        let trivial = spec.group().trivial_character();
        let pt_sign = slot(2, Some(sign));
        assert_eq!(
            pot.coefficient(&CurveClass::degree(1), &[pt_sign.clone(), pt_sign.clone()])
                .unwrap()
                .as_rational(),
            Some(rational(-1, 8))
        );
        assert!(pot
            .coefficient(&CurveClass::degree(1), &[pt_sign, slot(2, Some(trivial))])
            .is_none());
    }

    #[test]
    fn novikov_twists() {
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let sign = spec.group().character(&[1]).unwrap();
        let trivial = spec.group().trivial_character();
        let value = |rho: &Character, d| {
            novikov_twist(&spec, rho, &CurveClass::degree(d))
                .unwrap()
                .as_rational()
        };
        assert_eq!(value(&trivial, 5), Some(rational(1, 1)));
        assert_eq!(value(&sign, 1), Some(rational(-1, 1)));
        assert_eq!(value(&sign, 0), Some(rational(1, 1)));
    }

    #[test]
    fn decomposition_and_mutation() {
        let p2 = builtin_theory("P2").unwrap();
        let limits = Limits::default();
        let spec = GerbeSpec::root(2, vec![1]).unwrap();
        let report = verify_decomposition(&spec, &p2, &tr(2, 4), &limits).unwrap();
        assert!(report.equal, "{report:?}");
        assert!(report.checked_terms > 0);

        let corrupted = GerbeSpec::root(2, vec![2]).unwrap();
        let lhs = build_gerbe_potential(&corrupted, &p2, &tr(2, 4), &limits).unwrap();
        let rhs = decomposition_rhs(&spec, &p2, &tr(2, 4), &limits).unwrap();
        let report = compare_potentials(&lhs, &rhs);
        assert!(!report.equal);
        let witness = report.witness.unwrap();
        assert_eq!(witness.beta, CurveClass::degree(1));
        assert_eq!(witness.lhs, witness.rhs.scale(&rational(-1, 1)));
        let json = serde_json::to_value(&DecompositionReport {
            equal: false,
            checked_terms: 1,
            witness: Some(witness),
        })
        .unwrap();
        assert!(json["witness"]["lhs"]["coeffs"].is_array());
    }

    #[test]
    fn trivial_group_matches_base() {
        let p1 = builtin_theory("P1").unwrap();
        let limits = Limits::default();
        let spec = GerbeSpec::root(1, vec![1]).unwrap();
        let gerbe = build_gerbe_potential(&spec, &p1, &tr(2, 4), &limits).unwrap();
        let base = build_base_potential(&p1, &tr(2, 4), &limits).unwrap();
        assert_eq!(gerbe.len(), base.len());
        for ((beta, slots), value) in base.terms() {
            let lifted: Vec<Slot> = slots
                .iter()
                .map(|s| Slot {
                    rho: Some(spec.group().trivial_character()),
                    ..s.clone()
                })
                .collect();
            assert_eq!(gerbe.coefficient(beta, &lifted), Some(value));
        }
    }

    #[test]
    fn truncation_cap() {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::new(
            AbelianGroup::new(vec![2, 3]).unwrap(),
            vec![vec![1], vec![1]],
        )
        .unwrap();
        let small = Limits {
            truncation: 1000,
            ..Limits::default()
        };
        assert!(matches!(
            build_gerbe_potential(&spec, &p2, &tr(2, 5), &small),
            Err(Error::TruncationTooLarge { .. })
        ));
    }

    #[test]
    fn factor_chain() {
        for r in [2, 5, 24] {
            let spec = GerbeSpec::root(r, vec![1]).unwrap();
            for g in 0..4 {
                assert!(genus_g_decomposition_factor_check(&spec, g));
            }
        }
    }
}

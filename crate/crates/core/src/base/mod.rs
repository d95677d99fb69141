//! Genus-0 Gromov-Witten data of the base variety.
//!
//! A [`BaseTheory`] bundles a graded cohomology basis with its Poincare
//! pairing, the functional `beta -> c1(TX).beta`, and an invariant oracle.
//! Built-in providers cover `P1` and `P2` (primary insertions only, reduced
//! to Kontsevich numbers through the string and divisor equations); any
//! other data comes from JSON tables, see [`table`].

pub mod kontsevich;
pub mod table;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclonum::{rational_int, Rational};
use crate::error::{Error, Result};

pub use kontsevich::kontsevich_nd;
pub use table::{ingest_table, parse_table, TableFile};

/// An effective curve class, as non-negative coordinates in a fixed basis of
/// `H_2(X, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(Vec<u32>);

impl CurveClass {
    pub fn new(coords: Vec<u32>) -> Self {
        CurveClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        CurveClass(vec![0; rank])
    }

    /// Degree-`d` class on a rank-one lattice.
    pub fn degree(d: u32) -> Self {
        CurveClass(vec![d])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &CurveClass) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` if the difference is not effective.
    pub fn checked_sub(&self, other: &CurveClass) -> Option<CurveClass> {
        if !other.le(self) {
            return None;
        }
        Some(CurveClass(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Every class `beta'` with `0 <= beta' <= self`, lexicographically.
    pub fn classes_below(&self) -> Vec<CurveClass> {
        let bounds: Vec<u32> = self.0.iter().map(|&c| c + 1).collect();
        let mut current = vec![0u32; self.0.len()];
        let mut out = Vec::new();
        loop {
            out.push(CurveClass(current.clone()));
            if !crate::abelian::advance(&mut current, &bounds) {
                break;
            }
        }
        out
    }

    /// Evaluates an integer linear functional.
    pub fn pair(&self, functional: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(functional)
            .map(|(&c, &f)| c as i64 * f)
            .sum()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub label: String,
    /// Real degree; the codimension is half of it.
    pub degree: u32,
}

/// Graded basis of `H^*(X)` with the Poincare pairing. Slot 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBasis {
    classes: Vec<CohomologyClass>,
    pairing: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl CohomologyBasis {
    pub fn new(classes: Vec<CohomologyClass>, pairing: Vec<Vec<Rational>>) -> Result<Self> {
        let n = classes.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty cohomology basis".into()));
        }
        if classes[0].degree != 0 {
            return Err(Error::InvalidInput(
                "basis slot 0 must be the fundamental class (degree 0)".into(),
            ));
        }
        if let Some(c) = classes.iter().find(|c| c.degree % 2 != 0) {
            return Err(Error::InvalidInput(format!(
                "class {} has odd degree {}",
                c.label, c.degree
            )));
        }
        if pairing.len() != n || pairing.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput(format!(
                "pairing must be a {n}x{n} matrix"
            )));
        }
        let inverse = invert_matrix(&pairing).ok_or(Error::InconsistentPairing)?;
        Ok(CohomologyBasis {
            classes,
            pairing,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CohomologyClass] {
        &self.classes
    }

    pub fn label(&self, index: usize) -> &str {
        &self.classes[index].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    pub fn codim(&self, index: usize) -> u32 {
        self.classes[index].degree / 2
    }

    pub fn pairing(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    pub fn pairing_inverse(&self) -> &[Vec<Rational>] {
        &self.inverse
    }
}

/// Gauss-Jordan inverse over `Q`; `None` when singular.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A base insertion `phi_i psibar^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseInsertion {
    pub class_index: usize,
    pub psi_power: u32,
}

impl BaseInsertion {
    pub fn primary(class_index: usize) -> Self {
        BaseInsertion {
            class_index,
            psi_power: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Builtin {
    P1,
    P2,
}

#[derive(Clone, Debug)]
enum Provider {
    Builtin(Builtin),
    Table(table::TableData),
}

#[derive(Clone, Debug)]
pub struct BaseTheory {
    name: String,
    basis: CohomologyBasis,
    dim: u32,
    c1_tx: Vec<i64>,
    provider: Provider,
}

impl BaseTheory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &CohomologyBasis {
        &self.basis
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn c1_tx(&self) -> &[i64] {
        &self.c1_tx
    }

    /// Rank of `H_2(X, Z)` in the chosen coordinates.
    pub fn curve_rank(&self) -> usize {
        self.c1_tx.len()
    }

    pub fn is_builtin(&self) -> bool {
        matches!(self.provider, Provider::Builtin(_))
    }

    /// Virtual dimension of `M_{0,n}(X, beta)`.
    pub fn virtual_dim(&self, n: usize, beta: &CurveClass) -> i64 {
        self.dim as i64 + beta.pair(&self.c1_tx) + n as i64 - 3
    }

    /// Rejects unstable triples, rank mismatches and unknown class indices.
    pub fn check_query(&self, insertions: &[BaseInsertion], beta: &CurveClass) -> Result<()> {
        if beta.rank() != self.curve_rank() {
            return Err(Error::InvalidInput(format!(
                "curve class {beta} has rank {}, theory {} expects {}",
                beta.rank(),
                self.name,
                self.curve_rank()
            )));
        }
        if beta.is_zero() && insertions.len() < 3 {
            return Err(Error::UnstableTriple {
                n: insertions.len(),
                beta: beta.coords().to_vec(),
            });
        }
        if let Some(bad) = insertions
            .iter()
            .find(|i| i.class_index >= self.basis.len())
        {
            return Err(Error::InvalidInput(format!(
                "class index {} out of range",
                bad.class_index
            )));
        }
        Ok(())
    }

    /// Whether the insertions have total degree equal to the virtual
    /// dimension.
    pub fn dimension_matches(&self, insertions: &[BaseInsertion], beta: &CurveClass) -> bool {
        let total: i64 = insertions
            .iter()
            .map(|i| self.basis.codim(i.class_index) as i64 + i.psi_power as i64)
            .sum();
        total == self.virtual_dim(insertions.len(), beta)
    }
}

fn basis_from(labels: &[(&str, u32)], pairing: Vec<Vec<i64>>) -> CohomologyBasis {
    let classes = labels
        .iter()
        .map(|&(label, degree)| CohomologyClass {
            label: label.to_string(),
            degree,
        })
        .collect();
    let pairing = pairing
        .into_iter()
        .map(|row| row.into_iter().map(rational_int).collect())
        .collect();
    CohomologyBasis::new(classes, pairing).expect("built-in basis is valid")
}

/// `P1` or `P2` with their primary genus-0 theories.
pub fn builtin_theory(name: &str) -> Result<BaseTheory> {
    match name {
        "P1" => Ok(BaseTheory {
            name: "P1".into(),
            basis: basis_from(&[("1", 0), ("pt", 2)], vec![vec![0, 1], vec![1, 0]]),
            dim: 1,
            c1_tx: vec![2],
            provider: Provider::Builtin(Builtin::P1),
        }),
        "P2" => Ok(BaseTheory {
            name: "P2".into(),
            basis: basis_from(
                &[("1", 0), ("H", 2), ("pt", 4)],
                vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
            ),
            dim: 2,
            c1_tx: vec![3],
            provider: Provider::Builtin(Builtin::P2),
        }),
        other => Err(Error::UnknownTheory(other.to_string())),
    }
}

/// The genus-0 invariant `<phi_{i1} psibar^{k1}, ..., phi_{in} psibar^{kn}>_{0,n,beta}`.
pub fn base_invariant(
    theory: &BaseTheory,
    insertions: &[BaseInsertion],
    beta: &CurveClass,
) -> Result<Rational> {
    theory.check_query(insertions, beta)?;
    if let Provider::Builtin(_) = theory.provider {
        if insertions.iter().any(|i| i.psi_power > 0) {
            return Err(Error::UnsupportedDescendant {
                theory: theory.name.clone(),
            });
        }
    }
    if !theory.dimension_matches(insertions, beta) {
        return Ok(Rational::zero());
    }
    match &theory.provider {
        Provider::Builtin(which) => Ok(builtin_primary(*which, theory, insertions, beta)),
        Provider::Table(data) => data.lookup(theory, insertions, beta),
    }
}

/// Primary invariants of projective space, for dimension-matched queries.
fn builtin_primary(
    which: Builtin,
    theory: &BaseTheory,
    insertions: &[BaseInsertion],
    beta: &CurveClass,
) -> Rational {
    let d = beta.coords()[0];
    if d == 0 {
        // classical triple intersection; degree-zero invariants with more
        // than three primary insertions vanish
        return if insertions.len() == 3 {
            Rational::one()
        } else {
            Rational::zero()
        };
    }
    // string equation: the unit kills every primary invariant with beta != 0
    if insertions
        .iter()
        .any(|i| theory.basis.codim(i.class_index) == 0)
    {
        return Rational::zero();
    }
    // divisor equation strips every codimension-one class, each giving d
    let divisors = insertions
        .iter()
        .filter(|i| theory.basis.codim(i.class_index) == 1)
        .count() as u32;
    let factor = BigInt::from(d).pow(divisors);
    let remaining = insertions.len() as u32 - divisors;
    let core = match which {
        // <>_{0,0,1} = 1; the dimension gate already forced d = 1
        Builtin::P1 => {
            debug_assert_eq!(d, 1);
            debug_assert_eq!(remaining, 0);
            BigInt::one()
        }
        // 3d - 1 point insertions remain
        Builtin::P2 => {
            debug_assert_eq!(remaining, 3 * d - 1);
            kontsevich_nd(d)
        }
    };
    Rational::from_integer(factor * core)
}

//! Quantum products with Novikov-graded structure constants, associativity
//! checks, block structure of the gerbe product and a semisimplicity probe.
//!
//! Structure constants are truncated power series in `Q` and, optionally,
//! in deformation parameters `t_k` along chosen basis classes (the big
//! product restricted to a subspace). Truncation is by `beta <= beta_max`
//! componentwise and total `t`-degree `<= order`; both are ideals, so
//! truncated products are exact on every retained coefficient.

// index loops mirror the tensor notation
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::{base_invariant, invert_matrix, BaseInsertion, BaseTheory, CurveClass};
use crate::combinat::factorial;
use crate::cyclonum::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::gerbe::GerbeSpec;
use crate::invariants::{rho_invariant, RhoInsertion};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SeriesKey {
    pub beta: CurveClass,
    pub deformation: Vec<u32>,
}

pub type Series = BTreeMap<SeriesKey, CycNumber>;

/// Deformation directions (basis indices) and the maximal total degree in
/// their parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Deformation {
    pub directions: Vec<usize>,
    pub order: u32,
}

impl Deformation {
    pub fn none() -> Self {
        Self::default()
    }

    fn exponents(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in &self.directions {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    let used: u32 = prefix.iter().sum();
                    (0..=self.order - used).map(move |m| {
                        let mut next = prefix.clone();
                        next.push(m);
                        next
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct QuantumProduct {
    labels: Vec<String>,
    pairing: Vec<Vec<Rational>>,
    unit: Vec<Rational>,
    beta_max: CurveClass,
    deformation: Deformation,
    level: u32,
    /// `constants[a][b][c]` is `c_{ab}^c`.
    constants: Vec<Vec<Vec<Series>>>,
}

/// Values of `<phi_a, phi_b, phi_e, ...>` for sorted `a <= b <= e`, keyed
/// by curve class and deformation exponents; the result already includes
/// the `1 / prod m_k!` of the deformation insertions.
type Correlator<'a> = dyn Fn(usize, usize, usize, &CurveClass, &[u32]) -> Result<CycNumber> + 'a;

struct Assembly<'a> {
    labels: Vec<String>,
    pairing: Vec<Vec<Rational>>,
    unit: Vec<Rational>,
    beta_max: CurveClass,
    deformation: Deformation,
    level: u32,
    correlator: &'a Correlator<'a>,
}

impl Assembly<'_> {
    fn build(self, limits: &Limits) -> Result<QuantumProduct> {
        let dim = self.labels.len();
        let classes = self.beta_max.classes_below();
        let exponents = self.deformation.exponents();
        let size = (dim as u128).pow(3) * classes.len() as u128 * exponents.len() as u128;
        if size > limits.truncation {
            return Err(Error::TruncationTooLarge {
                size,
                limit: limits.truncation,
            });
        }
        let inverse = invert_matrix(&self.pairing).ok_or(Error::InconsistentPairing)?;
        let mut cache: HashMap<(usize, usize, usize), Series> = HashMap::new();
        let mut correlator = |a: usize, b: usize, e: usize| -> Result<Series> {
            let mut key = [a, b, e];
            key.sort_unstable();
            if let Some(hit) = cache.get(&(key[0], key[1], key[2])) {
                return Ok(hit.clone());
            }
            let mut series = Series::new();
            for beta in &classes {
                for m in &exponents {
                    let value = (self.correlator)(key[0], key[1], key[2], beta, m)?;
                    if !value.is_zero() {
                        let k = SeriesKey {
                            beta: beta.clone(),
                            deformation: m.clone(),
                        };
                        series.insert(k, value);
                    }
                }
            }
            cache.insert((key[0], key[1], key[2]), series.clone());
            Ok(series)
        };
        let mut constants = vec![vec![vec![Series::new(); dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                for e in 0..dim {
                    let three = correlator(a, b, e)?;
                    if three.is_empty() {
                        continue;
                    }
                    for (c, raise) in inverse[e].iter().enumerate() {
                        if raise.is_zero() {
                            continue;
                        }
                        let target = &mut constants[a][b][c];
                        for (k, v) in &three {
                            add_into(target, k.clone(), v.scale(raise));
                        }
                    }
                }
            }
        }
        Ok(QuantumProduct {
            labels: self.labels,
            pairing: self.pairing,
            unit: self.unit,
            beta_max: self.beta_max,
            deformation: self.deformation,
            level: self.level,
            constants,
        })
    }
}

fn add_into(series: &mut Series, key: SeriesKey, value: CycNumber) {
    if value.is_zero() {
        return;
    }
    let merged = match series.remove(&key) {
        Some(old) => &old + &value,
        None => value,
    };
    if !merged.is_zero() {
        series.insert(key, merged);
    }
}

fn inverse_factorials(m: &[u32]) -> Rational {
    let denom = m
        .iter()
        .fold(BigInt::one(), |acc, &k| acc * factorial(k as u64));
    Rational::new(BigInt::one(), denom)
}

impl QuantumProduct {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pairing(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn beta_max(&self) -> &CurveClass {
        &self.beta_max
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn constant(&self, a: usize, b: usize, c: usize) -> &Series {
        &self.constants[a][b][c]
    }

    /// Overwrites one coefficient of `c_{ab}^c`; meant for checker tests.
    pub fn set_constant(&mut self, a: usize, b: usize, c: usize, key: SeriesKey, value: CycNumber) {
        let series = &mut self.constants[a][b][c];
        series.remove(&key);
        add_into(series, key, value);
    }

    fn within(&self, key: &SeriesKey) -> bool {
        key.beta.le(&self.beta_max) && key.deformation.iter().sum::<u32>() <= self.deformation.order
    }

    fn origin(&self) -> SeriesKey {
        SeriesKey {
            beta: CurveClass::zero(self.beta_max.rank()),
            deformation: vec![0; self.deformation.directions.len()],
        }
    }

    fn series_mul(&self, x: &Series, y: &Series) -> Series {
        let mut out = Series::new();
        for (kx, vx) in x {
            for (ky, vy) in y {
                let key = SeriesKey {
                    beta: kx.beta.add(&ky.beta),
                    deformation: kx
                        .deformation
                        .iter()
                        .zip(&ky.deformation)
                        .map(|(a, b)| a + b)
                        .collect(),
                };
                if self.within(&key) {
                    add_into(&mut out, key, vx * vy);
                }
            }
        }
        out
    }

    /// The basis vector `phi_a` as a constant series vector.
    pub fn basis_vector(&self, a: usize) -> Vec<Series> {
        let mut v = vec![Series::new(); self.dim()];
        v[a].insert(self.origin(), CycNumber::one(self.level));
        v
    }

    fn constant_vector(&self, coords: &[Rational]) -> Vec<Series> {
        coords
            .iter()
            .map(|q| {
                let mut s = Series::new();
                add_into(
                    &mut s,
                    self.origin(),
                    CycNumber::from_rational(q.clone(), self.level),
                );
                s
            })
            .collect()
    }

    /// `x * y` for series-valued coordinate vectors.
    pub fn multiply(&self, x: &[Series], y: &[Series]) -> Vec<Series> {
        let dim = self.dim();
        let mut out = vec![Series::new(); dim];
        for a in 0..dim {
            if x[a].is_empty() {
                continue;
            }
            for b in 0..dim {
                if y[b].is_empty() {
                    continue;
                }
                let xy = self.series_mul(&x[a], &y[b]);
                for (c, slot) in out.iter_mut().enumerate() {
                    let cst = &self.constants[a][b][c];
                    if cst.is_empty() {
                        continue;
                    }
                    for (k, v) in self.series_mul(&xy, cst) {
                        add_into(slot, k, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| (0..dim).all(|c| self.constants[a][b][c] == self.constants[b][a][c]))
        })
    }

    /// The unit acts as the identity on every basis vector.
    pub fn is_unital(&self) -> bool {
        let unit = self.constant_vector(&self.unit);
        (0..self.dim()).all(|b| {
            let e = self.basis_vector(b);
            self.multiply(&unit, &e) == e
        })
    }

    /// First basis triple `(a, b, c)` with `(a*b)*c != a*(b*c)`.
    pub fn wdvv_violation(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        let basis: Vec<Vec<Series>> = (0..dim).map(|a| self.basis_vector(a)).collect();
        for a in 0..dim {
            for b in 0..dim {
                let ab = self.multiply(&basis[a], &basis[b]);
                for c in 0..dim {
                    let bc = self.multiply(&basis[b], &basis[c]);
                    if self.multiply(&ab, &basis[c]) != self.multiply(&basis[a], &bc) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Associativity on every basis triple, exactly, within the truncation.
pub fn check_wdvv(qp: &QuantumProduct) -> bool {
    qp.wdvv_violation().is_none()
}

fn base_labels(th: &BaseTheory) -> Vec<String> {
    th.basis()
        .classes()
        .iter()
        .map(|c| c.label.clone())
        .collect()
}

fn base_unit(dim: usize) -> Vec<Rational> {
    let mut unit = vec![Rational::zero(); dim];
    unit[0] = Rational::one();
    unit
}

/// The small quantum product of the base.
pub fn base_quantum_product(
    th: &BaseTheory,
    beta_max: &CurveClass,
    limits: &Limits,
) -> Result<QuantumProduct> {
    base_deformed_product(th, beta_max, &Deformation::none(), limits)
}

/// The big quantum product of the base restricted to the span of the
/// deformation directions.
pub fn base_deformed_product(
    th: &BaseTheory,
    beta_max: &CurveClass,
    deformation: &Deformation,
    limits: &Limits,
) -> Result<QuantumProduct> {
    if let Some(&bad) = deformation
        .directions
        .iter()
        .find(|&&d| d >= th.basis().len())
    {
        return Err(Error::InvalidInput(format!(
            "deformation direction {bad} out of range"
        )));
    }
    let correlator = |a: usize, b: usize, e: usize, beta: &CurveClass, m: &[u32]| {
        let mut ins = vec![
            BaseInsertion::primary(a),
            BaseInsertion::primary(b),
            BaseInsertion::primary(e),
        ];
        for (&dir, &count) in deformation.directions.iter().zip(m) {
            ins.extend(std::iter::repeat_n(
                BaseInsertion::primary(dir),
                count as usize,
            ));
        }
        let value = base_invariant(th, &ins, beta)? * inverse_factorials(m);
        Ok(CycNumber::from_rational(value, 1))
    };
    Assembly {
        labels: base_labels(th),
        pairing: th.basis().pairing().to_vec(),
        unit: base_unit(th.basis().len()),
        beta_max: beta_max.clone(),
        deformation: deformation.clone(),
        level: 1,
        correlator: &correlator,
    }
    .build(limits)
}

/// The small quantum product of the gerbe in the character basis; basis
/// index `k * dim(H^*(X)) + i` is `phi_i` in block `rho_k`, characters in
/// enumeration order.
///
/// The pairing is the orbifold pairing `(a_rho, b_sigma) = delta_{rho sigma}
/// (a, b)_X / |G|^2` and the unit is `sum_rho 1_rho`.
pub fn gerbe_quantum_product(
    spec: &GerbeSpec,
    th: &BaseTheory,
    beta_max: &CurveClass,
    limits: &Limits,
) -> Result<QuantumProduct> {
    let characters = spec.group().enumerate_characters(limits.group)?;
    let b = th.basis().len();
    let dim = characters.len() * b;
    let order = Rational::from_integer(BigInt::from(spec.group().order()));
    let scale = Rational::one() / (order.clone() * order);
    let mut pairing = vec![vec![Rational::zero(); dim]; dim];
    let mut unit = vec![Rational::zero(); dim];
    let mut labels = Vec::with_capacity(dim);
    for (k, rho) in characters.iter().enumerate() {
        unit[k * b] = Rational::one();
        for i in 0..b {
            labels.push(format!("{}_rho{}", th.basis().label(i), rho));
            for j in 0..b {
                pairing[k * b + i][k * b + j] = th.basis().pairing()[i][j].clone() * &scale;
            }
        }
    }
    let correlator = |x: usize, y: usize, z: usize, beta: &CurveClass, _m: &[u32]| {
        let ins: Vec<RhoInsertion> = [x, y, z]
            .iter()
            .map(|&idx| RhoInsertion {
                rho: characters[idx / b].clone(),
                class_index: idx % b,
                psi_power: 0,
            })
            .collect();
        rho_invariant(spec, th, &ins, beta)
    };
    Assembly {
        labels,
        pairing,
        unit,
        beta_max: beta_max.clone(),
        deformation: Deformation::none(),
        level: spec.group().character_level(),
        correlator: &correlator,
    }
    .build(limits)
}

/// Every structure constant mixing two different character blocks is zero.
pub fn check_block_diagonal(
    spec: &GerbeSpec,
    th: &BaseTheory,
    beta_max: &CurveClass,
    limits: &Limits,
) -> Result<bool> {
    let qp = gerbe_quantum_product(spec, th, beta_max, limits)?;
    let b = th.basis().len();
    let dim = qp.dim();
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let same = x / b == y / b && y / b == z / b;
                if !same && !qp.constant(x, y, z).is_empty() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The single constant `lambda` with
/// `c^G_{a rho, b rho}^{c rho}(beta) = lambda chi_rho(g_beta) c^X_{ab}^c(beta)`
/// for every block, triple and class, or `None` if no such constant exists.
/// Returns `Some(1)` vacuously when every constant vanishes.
pub fn block_proportionality(
    spec: &GerbeSpec,
    th: &BaseTheory,
    beta_max: &CurveClass,
    limits: &Limits,
) -> Result<Option<CycNumber>> {
    let gerbe = gerbe_quantum_product(spec, th, beta_max, limits)?;
    let base = base_quantum_product(th, beta_max, limits)?;
    let characters = spec.group().enumerate_characters(limits.group)?;
    let level = spec.group().character_level();
    let b = th.basis().len();
    let mut lambda: Option<CycNumber> = None;
    for (k, rho) in characters.iter().enumerate() {
        for x in 0..b {
            for y in 0..b {
                for z in 0..b {
                    let g = gerbe.constant(k * b + x, k * b + y, k * b + z);
                    let f = base.constant(x, y, z);
                    let keys: std::collections::BTreeSet<&SeriesKey> =
                        g.keys().chain(f.keys()).collect();
                    for key in keys {
                        let zero = CycNumber::zero(level);
                        let lhs = g.get(key).unwrap_or(&zero);
                        let twisted = match f.get(key) {
                            Some(v) => v * &rho.value(&spec.g_beta(&key.beta)?)?,
                            None => zero.clone(),
                        };
                        match (&lambda, twisted.is_zero()) {
                            (_, true) if !lhs.is_zero() => return Ok(None),
                            (_, true) => {}
                            (None, false) => lambda = Some(lhs * &twisted.inv()?),
                            (Some(l), false) => {
                                if *lhs != l * &twisted {
                                    return Ok(None);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Some(lambda.unwrap_or_else(|| CycNumber::one(level))))
}

/// Values of the Novikov variables (one per curve-class coordinate) and of
/// the deformation parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationPoint {
    pub novikov: Vec<Complex64>,
    pub deformation: Vec<Complex64>,
}

impl EvaluationPoint {
    pub fn novikov(values: Vec<Complex64>) -> Self {
        EvaluationPoint {
            novikov: values,
            deformation: vec![],
        }
    }

    /// Exact rational coordinates, if every value is real.
    fn exact(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let convert = |values: &[Complex64]| -> Option<Vec<Rational>> {
            values
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        Rational::from_f64(z.re)
                    } else {
                        None
                    }
                })
                .collect()
        };
        Some((convert(&self.novikov)?, convert(&self.deformation)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Semisimple,
    Degenerate,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub verdict: Verdict,
    /// Whether the exact trace-form test was available.
    pub exact: bool,
    #[serde(serialize_with = "ser_complex")]
    pub eigenvalues: Vec<Complex64>,
    pub min_gap: f64,
}

fn ser_complex<S: serde::Serializer>(
    values: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|z| [z.re, z.im]))
}

fn check_point(qp: &QuantumProduct, point: &EvaluationPoint) -> Result<()> {
    if point.novikov.len() != qp.beta_max.rank()
        || point.deformation.len() != qp.deformation.directions.len()
    {
        return Err(Error::InvalidInput(format!(
            "evaluation point needs {} Novikov and {} deformation values",
            qp.beta_max.rank(),
            qp.deformation.directions.len()
        )));
    }
    if point
        .novikov
        .iter()
        .chain(&point.deformation)
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::InvalidInput(
            "evaluation point must be finite".into(),
        ));
    }
    Ok(())
}

fn monomial_numeric(key: &SeriesKey, point: &EvaluationPoint) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (&e, q) in key.beta.coords().iter().zip(&point.novikov) {
        acc *= q.powu(e);
    }
    for (&e, t) in key.deformation.iter().zip(&point.deformation) {
        acc *= t.powu(e);
    }
    acc
}

fn monomial_exact(key: &SeriesKey, novikov: &[Rational], deformation: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for (&e, q) in key.beta.coords().iter().zip(novikov) {
        acc *= num_traits::pow(q.clone(), e as usize);
    }
    for (&e, t) in key.deformation.iter().zip(deformation) {
        acc *= num_traits::pow(t.clone(), e as usize);
    }
    acc
}

/// Eigenvalues of multiplication by `element` at `point`.
pub fn multiplication_eigenvalues(
    qp: &QuantumProduct,
    point: &EvaluationPoint,
    element: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_point(qp, point)?;
    let dim = qp.dim();
    if element.len() != dim {
        return Err(Error::InvalidInput(format!(
            "element needs {dim} coordinates"
        )));
    }
    // column b holds the coordinates of element * phi_b
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (a, x) in element.iter().enumerate() {
        if *x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for b in 0..dim {
            for c in 0..dim {
                let value: Complex64 = qp.constants[a][b][c]
                    .iter()
                    .map(|(k, v)| v.complex_embedding(15) * monomial_numeric(k, point))
                    .sum();
                m[(c, b)] += x * value;
            }
        }
    }
    let schur = nalgebra::Schur::try_new(m, 1e-15, 100_000)
        .ok_or_else(|| Error::InternalInconsistency("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..dim).map(|i| t[(i, i)]).collect())
}

/// Whether the trace form `Tr(L_a L_b)` is nondegenerate, evaluated
/// exactly; for a commutative algebra over a field of characteristic zero
/// this is equivalent to semisimplicity.
fn trace_form_nondegenerate(
    qp: &QuantumProduct,
    novikov: &[Rational],
    deformation: &[Rational],
) -> Result<bool> {
    let dim = qp.dim();
    let level = qp.level;
    let mut l = vec![vec![vec![CycNumber::zero(level); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let mut acc = CycNumber::zero(level);
                for (k, v) in &qp.constants[a][b][c] {
                    acc += &v.scale(&monomial_exact(k, novikov, deformation));
                }
                l[a][b][c] = acc;
            }
        }
    }
    // Tr(L_a L_b) = sum_{c,d} c_{ad}^c c_{bc}^d
    let mut form = vec![vec![CycNumber::zero(level); dim]; dim];
    for a in 0..dim {
        for b in a..dim {
            let mut acc = CycNumber::zero(level);
            for c in 0..dim {
                for d in 0..dim {
                    if !l[a][d][c].is_zero() && !l[b][c][d].is_zero() {
                        acc += &(&l[a][d][c] * &l[b][c][d]);
                    }
                }
            }
            form[b][a] = acc.clone();
            form[a][b] = acc;
        }
    }
    Ok(cyclotomic_rank(form)? == dim)
}

fn cyclotomic_rank(mut m: Vec<Vec<CycNumber>>) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv()?;
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Semisimplicity at `point`.
///
/// Multiplication by a generic element drawn from `seed` is diagonalized
/// numerically. When the point is real the trace form is also checked
/// exactly, and a degenerate trace form is reported as `Degenerate`.
/// Otherwise distinct eigenvalues (pairwise gaps above `tol`) give
/// `Semisimple` and anything else is `Inconclusive`.
pub fn semisimplicity_probe(
    qp: &QuantumProduct,
    point: &EvaluationPoint,
    tol: f64,
    seed: u64,
) -> Result<ProbeReport> {
    check_point(qp, point)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let element: Vec<Complex64> = (0..qp.dim())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let eigenvalues = multiplication_eigenvalues(qp, point, &element)?;
    let mut min_gap = f64::INFINITY;
    for i in 0..eigenvalues.len() {
        for j in i + 1..eigenvalues.len() {
            min_gap = min_gap.min((eigenvalues[i] - eigenvalues[j]).norm());
        }
    }
    let exact = match point.exact() {
        Some((q, t)) => Some(trace_form_nondegenerate(qp, &q, &t)?),
        None => None,
    };
    let verdict = match exact {
        Some(false) => Verdict::Degenerate,
        _ if min_gap > tol => Verdict::Semisimple,
        _ => Verdict::Inconclusive,
    };
    Ok(ProbeReport {
        verdict,
        exact: exact.is_some(),
        eigenvalues,
        min_gap,
    })
}

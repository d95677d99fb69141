//! Gerbe data and the integer combinatorics of twisted sectors and nodes.
//!
//! A gerbe over `X` banded by `G = mu_{r(1)} x ... x mu_{r(k)}` is described
//! by `k` integer functionals on curve classes. For a multi-root gerbe the
//! `j`-th functional is `beta -> int_beta c1(L_j)`; reduced mod `r(j)` it
//! gives the `j`-th component of `kappa(beta) in G`.
//!
//! A sector vector `(g_1, ..., g_n)` is admissible for `beta` iff for every
//! factor `sum_i a_ij = kappa_j(beta) mod r(j)`, equivalently iff each
//! orbifold Euler characteristic `1 + deg - sum ages` is an integer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::abelian::{AbelianGroup, GroupElement};
use crate::base::CurveClass;
use crate::cyclonum::{rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeSpec {
    group: AbelianGroup,
    functionals: Vec<Vec<i64>>,
}

impl GerbeSpec {
    /// `functionals[j]` are the coefficients of the `j`-th degree functional
    /// in the curve-class basis.
    pub fn new(group: AbelianGroup, functionals: Vec<Vec<i64>>) -> Result<Self> {
        if functionals.len() != group.rank() {
            return Err(Error::InvalidInput(format!(
                "{} functionals given for {} cyclic factors",
                functionals.len(),
                group.rank()
            )));
        }
        let rank = functionals.first().map_or(0, Vec::len);
        if rank == 0 || functionals.iter().any(|f| f.len() != rank) {
            return Err(Error::InvalidInput(
                "functionals must share a positive curve-class rank".into(),
            ));
        }
        Ok(GerbeSpec { group, functionals })
    }

    /// The root gerbe of order `r` of a line bundle with degree functional
    /// `functional`.
    pub fn root(r: u32, functional: Vec<i64>) -> Result<Self> {
        Self::new(AbelianGroup::cyclic(r)?, vec![functional])
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn functionals(&self) -> &[Vec<i64>] {
        &self.functionals
    }

    pub fn curve_rank(&self) -> usize {
        self.functionals[0].len()
    }

    pub fn factor_count(&self) -> usize {
        self.group.rank()
    }

    fn factor(&self, j: usize) -> u32 {
        self.group.factors()[j]
    }

    fn check_beta(&self, beta: &CurveClass) -> Result<()> {
        if beta.rank() != self.curve_rank() {
            return Err(Error::InvalidInput(format!(
                "curve class {beta} has rank {}, gerbe expects {}",
                beta.rank(),
                self.curve_rank()
            )));
        }
        Ok(())
    }

    /// Unreduced integer value of the `j`-th functional.
    pub fn kappa_integer(&self, j: usize, beta: &CurveClass) -> i64 {
        beta.pair(&self.functionals[j])
    }

    /// Residue of `kappa_j(beta)` modulo `r(j)`.
    pub fn kappa(&self, j: usize, beta: &CurveClass) -> u32 {
        self.kappa_integer(j, beta)
            .rem_euclid(self.factor(j) as i64) as u32
    }

    /// `kappa(beta)` as a group element.
    pub fn kappa_element(&self, beta: &CurveClass) -> Result<GroupElement> {
        self.check_beta(beta)?;
        let residues: Vec<i64> = (0..self.factor_count())
            .map(|j| self.kappa_integer(j, beta))
            .collect();
        self.group.element(&residues)
    }

    /// `g_beta = kappa(beta)^{-1}`.
    pub fn g_beta(&self, beta: &CurveClass) -> Result<GroupElement> {
        Ok(self.kappa_element(beta)?.inverse())
    }

    fn check_vector(&self, g_vec: &[GroupElement]) -> Result<()> {
        if let Some(g) = g_vec.iter().find(|g| g.group() != &self.group) {
            return Err(Error::GroupMismatch(format!(
                "sector {g} lives in {}, gerbe band is {}",
                g.group(),
                self.group
            )));
        }
        Ok(())
    }

    pub fn is_admissible(&self, g_vec: &[GroupElement], beta: &CurveClass) -> Result<bool> {
        self.check_vector(g_vec)?;
        self.check_beta(beta)?;
        Ok((0..self.factor_count()).all(|j| {
            let r = self.factor(j) as u64;
            let sum: u64 = g_vec.iter().map(|g| g.residues()[j] as u64).sum();
            sum % r == self.kappa(j, beta) as u64
        }))
    }

    /// All admissible vectors of length `n`, in lexicographic order. There
    /// are exactly `|G|^(n-1)` of them for `n >= 1`.
    pub fn enumerate_admissible_vectors(
        &self,
        n: usize,
        beta: &CurveClass,
        limit: u128,
    ) -> Result<Vec<Vec<GroupElement>>> {
        self.check_beta(beta)?;
        let order = self.group.order();
        let size = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(order));
        match size {
            Some(s) if s <= limit => {}
            _ => {
                return Err(Error::EnumerationTooLarge {
                    size: size.unwrap_or(u128::MAX),
                    limit,
                })
            }
        }
        if n == 0 {
            let empty_ok = self.is_admissible(&[], beta)?;
            return Ok(if empty_ok { vec![vec![]] } else { vec![] });
        }
        let target = self.kappa_element(beta)?;
        let elements = self.group.enumerate_elements(limit)?;
        let mut out = Vec::new();
        let mut idx = vec![0u32; n - 1];
        let bounds = vec![elements.len() as u32; n - 1];
        loop {
            let head: Vec<GroupElement> =
                idx.iter().map(|&i| elements[i as usize].clone()).collect();
            let mut partial = self.group.identity();
            for g in &head {
                partial = partial.add(g)?;
            }
            let last = target.add(&partial.inverse())?;
            let mut vector = head;
            vector.push(last);
            out.push(vector);
            if !crate::abelian::advance(&mut idx, &bounds) {
                break;
            }
        }
        // the free prefix is lexicographic and the last entry is determined
        Ok(out)
    }

    /// Per-factor `(theta, rho, r_i, m_i)` of a sector.
    pub fn sector_data(&self, g: &GroupElement) -> Result<Vec<SectorData>> {
        self.check_vector(std::slice::from_ref(g))?;
        Ok((0..self.factor_count())
            .map(|j| SectorData::from_residue(g.residues()[j], self.factor(j)))
            .collect())
    }

    /// Integer `d_i` per factor satisfying `g_ij = exp(2 pi i d_ij / r_ij)`
    /// and `sum_i d_ij / r_ij = kappa_j(beta) / r(j)`.
    pub fn choose_d(
        &self,
        g_vec: &[GroupElement],
        beta: &CurveClass,
        rule: DRule,
    ) -> Result<DCertificate> {
        if !self.is_admissible(g_vec, beta)? {
            return Err(Error::NotAdmissible);
        }
        let n = g_vec.len();
        let mut d = Vec::with_capacity(self.factor_count());
        for j in 0..self.factor_count() {
            let r = self.factor(j);
            let sectors: Vec<SectorData> = g_vec
                .iter()
                .map(|g| SectorData::from_residue(g.residues()[j], r))
                .collect();
            let mut row: Vec<i64> = sectors.iter().map(|s| s.m_i as i64).collect();
            if n > 0 {
                let solved = match rule {
                    DRule::LastSolved => n - 1,
                    DRule::FirstSolved => 0,
                };
                let target = rational(self.kappa_integer(j, beta), r as i64);
                let others: Rational = sectors
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != solved)
                    .map(|(_, s)| rational(s.m_i as i64, s.r_i as i64))
                    .sum();
                let value = (target - others) * BigInt::from(sectors[solved].r_i);
                if !value.is_integer() {
                    return Err(Error::InternalInconsistency(format!(
                        "d certificate for factor {j} is not integral"
                    )));
                }
                row[solved] = i64::try_from(value.to_integer()).map_err(|_| {
                    Error::InternalInconsistency("d certificate overflows i64".into())
                })?;
            }
            d.push(row);
        }
        Ok(DCertificate { d })
    }

    /// Node data for a member of the boundary index set.
    pub fn node_data(
        &self,
        index: &BoundaryIndex,
        g_vec: &[GroupElement],
        beta: &CurveClass,
        cert: Option<&DCertificate>,
    ) -> Result<Vec<NodeData>> {
        index.validate(g_vec.len(), beta)?;
        self.split_data(&index.t, &index.beta_prime, g_vec, cert)
    }

    /// Node data for an arbitrary split: the marked points `t` (0-based) and
    /// class `beta_prime` on one side. Unlike [`GerbeSpec::node_data`] this
    /// also accepts splits outside the boundary index set, such as the
    /// complement `(T^C, beta - beta')`.
    pub fn split_data(
        &self,
        t: &[usize],
        beta_prime: &CurveClass,
        g_vec: &[GroupElement],
        cert: Option<&DCertificate>,
    ) -> Result<Vec<NodeData>> {
        self.check_vector(g_vec)?;
        self.check_beta(beta_prime)?;
        if let Some(&bad) = t.iter().find(|&&i| i >= g_vec.len()) {
            return Err(Error::InvalidBoundaryIndex(format!(
                "marked point {} out of range for n = {}",
                bad + 1,
                g_vec.len()
            )));
        }
        let mut out = Vec::with_capacity(self.factor_count());
        for j in 0..self.factor_count() {
            let r = self.factor(j) as i64;
            let kappa = self.kappa_integer(j, beta_prime);
            // r * theta_{T,beta'} = kappa(beta') - sum_{i in T} a_ij  (mod r)
            let residue_sum: i64 = t.iter().map(|&i| g_vec[i].residues()[j] as i64).sum();
            let scaled = (kappa - residue_sum).rem_euclid(r);
            let g = r.gcd(&scaled);
            let (r_node, m_node) = ((r / g) as u32, (scaled / g) as u32);
            let d_node = match cert {
                Some(cert) => {
                    let row = cert.d.get(j).ok_or_else(|| {
                        Error::InvalidInput("certificate has too few factors".into())
                    })?;
                    let mut total = rational(kappa, r);
                    for &i in t {
                        let s = SectorData::from_residue(g_vec[i].residues()[j], r as u32);
                        total -= rational(row[i], s.r_i as i64);
                    }
                    let value = total * BigInt::from(r_node);
                    if !value.is_integer() {
                        return Err(Error::InternalInconsistency(format!(
                            "node certificate for factor {j} is not integral"
                        )));
                    }
                    Some(i64::try_from(value.to_integer()).map_err(|_| {
                        Error::InternalInconsistency("node certificate overflows i64".into())
                    })?)
                }
                None => None,
            };
            out.push(NodeData {
                theta: rational(scaled, r),
                r_node,
                m_node,
                d_node,
            });
        }
        Ok(out)
    }

    /// The node element `g_{T,beta'}` with residues `r(j) * theta_j`.
    pub fn node_element(
        &self,
        t: &[usize],
        beta_prime: &CurveClass,
        g_vec: &[GroupElement],
    ) -> Result<GroupElement> {
        let data = self.split_data(t, beta_prime, g_vec, None)?;
        let residues: Vec<i64> = data
            .iter()
            .zip(self.group.factors())
            .map(|(nd, &r)| (nd.theta.clone() * BigInt::from(r)).to_integer())
            .map(|v| i64::try_from(v).expect("residue fits"))
            .collect();
        self.group.element(&residues)
    }

    /// Ages `m_i / r_i` per factor and point, and the Euler characteristic
    /// `1 + kappa_j(beta)/r(j) - sum_i age_ij` per factor.
    pub fn ages_and_chi(&self, g_vec: &[GroupElement], beta: &CurveClass) -> Result<AgesAndChi> {
        self.check_vector(g_vec)?;
        self.check_beta(beta)?;
        let mut ages = Vec::with_capacity(self.factor_count());
        let mut chi = Vec::with_capacity(self.factor_count());
        for j in 0..self.factor_count() {
            let r = self.factor(j);
            let row: Vec<Rational> = g_vec
                .iter()
                .map(|g| SectorData::from_residue(g.residues()[j], r).age())
                .collect();
            let total: Rational = row.iter().cloned().sum();
            chi.push(Rational::one() + rational(self.kappa_integer(j, beta), r as i64) - total);
            ages.push(row);
        }
        Ok(AgesAndChi { ages, chi })
    }
}

impl fmt::Display for GerbeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.group.factors().iter().map(|x| x.to_string()).collect();
        let l: Vec<String> = self
            .functionals
            .iter()
            .map(|f| {
                f.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect();
        write!(f, "r={},L={}", r.join(":"), l.join(":"))
    }
}

/// `(theta_i, rho_i, r_i, m_i)` for one cyclic factor of one sector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorData {
    #[serde(serialize_with = "ser_rational")]
    pub theta: Rational,
    pub rho: u32,
    pub r_i: u32,
    pub m_i: u32,
}

impl SectorData {
    /// Uses `gcd(r, 0) = r`, so the untwisted sector gets `r_i = 1, m_i = 0`.
    pub fn from_residue(a: u32, r: u32) -> Self {
        let g = r.gcd(&a);
        SectorData {
            theta: rational(a as i64, r as i64),
            rho: a,
            r_i: r / g,
            m_i: a / g,
        }
    }

    pub fn age(&self) -> Rational {
        rational(self.m_i as i64, self.r_i as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeData {
    #[serde(serialize_with = "ser_rational")]
    pub theta: Rational,
    pub r_node: u32,
    pub m_node: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_node: Option<i64>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Which `d_i` absorbs the constraint; the others take their canonical
/// residues `m_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DRule {
    #[default]
    LastSolved,
    FirstSolved,
}

/// `d[j][i]`: the integer attached to point `i` for factor `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DCertificate {
    pub d: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgesAndChi {
    /// `ages[j][i]`
    pub ages: Vec<Vec<Rational>>,
    pub chi: Vec<Rational>,
}

impl AgesAndChi {
    pub fn chi_integral(&self) -> bool {
        self.chi.iter().all(|c| c.is_integer())
    }
}

/// A pair `(T, beta')` indexing a boundary divisor; `t` holds 0-based
/// marked-point indices and never contains the last point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryIndex {
    pub t: Vec<usize>,
    pub beta_prime: CurveClass,
}

impl BoundaryIndex {
    /// Checks membership in the boundary index set for `(n, beta)`: both
    /// sides of the split must be stable and `n` is never in `T`.
    pub fn validate(&self, n: usize, beta: &CurveClass) -> Result<()> {
        let fail = |why: &str| Err(Error::InvalidBoundaryIndex(format!("{self}: {why}")));
        if n == 0 {
            return fail("no marked points");
        }
        if self.t.iter().any(|&i| i >= n) {
            return fail("marked point out of range");
        }
        if self.t.contains(&(n - 1)) {
            return fail("the last marked point must not be in T");
        }
        if self.t.windows(2).any(|w| w[0] >= w[1]) {
            return fail("T must be strictly increasing");
        }
        let Some(rest) = beta.checked_sub(&self.beta_prime) else {
            return fail("beta' is not <= beta");
        };
        if self.beta_prime.is_zero() && self.t.len() < 2 {
            return fail("degree-zero side needs two marked points");
        }
        if rest.is_zero() && self.t.len() + 2 > n {
            return fail("complementary degree-zero side needs two marked points");
        }
        Ok(())
    }

    /// `T^C` as 0-based indices.
    pub fn complement_points(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|i| !self.t.contains(i)).collect()
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({{{}}}, {})", t.join(","), self.beta_prime)
    }
}

/// The boundary index set of `M_{0,n,beta}`, ordered by `beta'` then `T`.
pub fn enumerate_boundary_indices(n: usize, beta: &CurveClass) -> Vec<BoundaryIndex> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let free = n - 1;
    for beta_prime in beta.classes_below() {
        let mut subsets: Vec<Vec<usize>> = (0u64..(1u64 << free))
            .map(|mask| (0..free).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for t in subsets {
            let index = BoundaryIndex {
                t,
                beta_prime: beta_prime.clone(),
            };
            if index.validate(n, beta).is_ok() {
                out.push(index);
            }
        }
    }
    out
}

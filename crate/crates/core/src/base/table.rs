//! JSON tables of base invariants.
//!
//! ```json
//! {
//!   "name": "P2", "dim": 2,
//!   "basis": [{"label": "1", "degree": 0}, {"label": "H", "degree": 2}, {"label": "pt", "degree": 4}],
//!   "pairing": [["0","0","1"], ["0","1","0"], ["1","0","0"]],
//!   "c1_tx": [3],
//!   "complete_up_to": {"beta": [2], "n": 5},
//!   "invariants": [
//!     {"beta": [1], "insertions": [{"class": "pt", "psi": 0}, {"class": "pt", "psi": 0}], "value": "1"}
//!   ]
//! }
//! ```
//!
//! Rationals are strings `"p/q"` so values stay exact. Unlisted queries
//! return zero only inside the declared `complete_up_to` bounds.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    base_invariant, BaseInsertion, BaseTheory, CohomologyBasis, CohomologyClass, CurveClass,
    Provider,
};
use crate::combinat::multisets;
use crate::cyclonum::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub name: String,
    pub dim: u32,
    pub basis: Vec<TableClass>,
    pub pairing: Vec<Vec<String>>,
    pub c1_tx: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_up_to: Option<TableBound>,
    pub invariants: Vec<TableEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableClass {
    pub label: String,
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableBound {
    pub beta: Vec<u32>,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub beta: Vec<u32>,
    pub insertions: Vec<TableInsertion>,
    pub value: String,
    /// Reserved; only genus-0 entries are used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableInsertion {
    pub class: String,
    #[serde(default)]
    pub psi: u32,
}

type Key = (CurveClass, Vec<BaseInsertion>);

#[derive(Clone, Debug)]
pub(super) struct TableData {
    entries: HashMap<Key, Rational>,
    complete: Option<(CurveClass, usize)>,
}

impl TableData {
    pub(super) fn lookup(
        &self,
        theory: &BaseTheory,
        insertions: &[BaseInsertion],
        beta: &CurveClass,
    ) -> Result<Rational> {
        let mut sorted = insertions.to_vec();
        sorted.sort();
        if let Some(value) = self.entries.get(&(beta.clone(), sorted)) {
            return Ok(value.clone());
        }
        match &self.complete {
            Some((bound, n)) if beta.le(bound) && insertions.len() <= *n => Ok(Rational::default()),
            _ => {
                let labels: Vec<String> = insertions
                    .iter()
                    .map(|i| {
                        let label = theory.basis.label(i.class_index);
                        if i.psi_power > 0 {
                            format!("{label}*psi^{}", i.psi_power)
                        } else {
                            label.to_string()
                        }
                    })
                    .collect();
                Err(Error::MissingTableEntry(format!(
                    "<{}>_{{0,{},{}}}",
                    labels.join(","),
                    insertions.len(),
                    beta
                )))
            }
        }
    }
}

fn semantic(message: String) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message,
    }
}

/// Parses table JSON text into a theory.
pub fn parse_table(text: &str) -> Result<BaseTheory> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_theory()
}

pub fn ingest_table(path: impl AsRef<Path>) -> Result<BaseTheory> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

impl TableFile {
    pub fn into_theory(self) -> Result<BaseTheory> {
        let classes: Vec<CohomologyClass> = self
            .basis
            .iter()
            .map(|c| CohomologyClass {
                label: c.label.clone(),
                degree: c.degree,
            })
            .collect();
        let pairing = self
            .pairing
            .iter()
            .map(|row| row.iter().map(|v| parse_rational(v)).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        let basis = match CohomologyBasis::new(classes, pairing) {
            Err(Error::InvalidInput(m)) => return Err(semantic(m)),
            other => other?,
        };
        let rank = self.c1_tx.len();
        if rank == 0 {
            return Err(semantic("c1_tx must have at least one coordinate".into()));
        }
        let check_rank = |beta: &[u32], what: &str| {
            if beta.len() != rank {
                Err(semantic(format!(
                    "{what}: curve class {beta:?} has rank {}, expected {rank}",
                    beta.len()
                )))
            } else {
                Ok(CurveClass::new(beta.to_vec()))
            }
        };
        let complete = match &self.complete_up_to {
            Some(bound) => Some((check_rank(&bound.beta, "complete_up_to")?, bound.n)),
            None => None,
        };
        let mut entries = HashMap::new();
        for (idx, entry) in self.invariants.iter().enumerate() {
            if entry.genus.unwrap_or(0) != 0 {
                continue;
            }
            let beta = check_rank(&entry.beta, &format!("invariant #{idx}"))?;
            let mut insertions = entry
                .insertions
                .iter()
                .map(|ins| {
                    basis
                        .index_of(&ins.class)
                        .map(|class_index| BaseInsertion {
                            class_index,
                            psi_power: ins.psi,
                        })
                        .ok_or_else(|| {
                            semantic(format!("invariant #{idx}: unknown class {:?}", ins.class))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            insertions.sort();
            let value = parse_rational(&entry.value)
                .map_err(|e| semantic(format!("invariant #{idx}: {e}")))?;
            if entries.insert((beta, insertions), value).is_some() {
                return Err(semantic(format!("invariant #{idx} is listed twice")));
            }
        }
        Ok(BaseTheory {
            name: self.name,
            basis,
            dim: self.dim,
            c1_tx: self.c1_tx,
            provider: Provider::Table(TableData { entries, complete }),
        })
    }

    /// Tabulates every nonzero invariant of `theory` with `beta <= beta_max`,
    /// `n <= n_max` and psi powers `<= psi_max`, declaring the table complete
    /// within those bounds.
    pub fn export(
        theory: &BaseTheory,
        beta_max: &CurveClass,
        n_max: usize,
        psi_max: u32,
    ) -> Result<TableFile> {
        let basis = theory.basis();
        let slots: Vec<BaseInsertion> = (0..basis.len())
            .flat_map(|class_index| {
                (0..=psi_max).map(move |psi_power| BaseInsertion {
                    class_index,
                    psi_power,
                })
            })
            .collect();
        let mut invariants = Vec::new();
        for beta in beta_max.classes_below() {
            for n in 0..=n_max {
                if beta.is_zero() && n < 3 {
                    continue;
                }
                for multiset in multisets(slots.len(), n) {
                    let ins: Vec<BaseInsertion> = multiset.iter().map(|&s| slots[s]).collect();
                    if !theory.dimension_matches(&ins, &beta) {
                        continue;
                    }
                    let value = base_invariant(theory, &ins, &beta)?;
                    if value == Rational::default() {
                        continue;
                    }
                    invariants.push(TableEntry {
                        beta: beta.coords().to_vec(),
                        insertions: ins
                            .iter()
                            .map(|i| TableInsertion {
                                class: basis.label(i.class_index).to_string(),
                                psi: i.psi_power,
                            })
                            .collect(),
                        value: value.to_string(),
                        genus: None,
                    });
                }
            }
        }
        Ok(TableFile {
            name: theory.name().to_string(),
            dim: theory.dim(),
            basis: basis
                .classes()
                .iter()
                .map(|c| TableClass {
                    label: c.label.clone(),
                    degree: c.degree,
                })
                .collect(),
            pairing: basis
                .pairing()
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            c1_tx: theory.c1_tx().to_vec(),
            complete_up_to: Some(TableBound {
                beta: beta_max.coords().to_vec(),
                n: n_max,
            }),
            invariants,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::builtin_theory;
    use crate::cyclonum::rational_int;

    const MINIMAL: &str = r#"{
        "name": "toy", "dim": 1,
        "basis": [{"label": "1", "degree": 0}, {"label": "pt", "degree": 2}],
        "pairing": [["0", "1"], ["1", "0"]],
        "c1_tx": [2],
        "invariants": [
            {"beta": [1], "insertions": [{"class": "pt"}, {"class": "pt", "psi": 0}], "value": "1"}
        ]
    }"#;

    #[test]
    fn minimal_table() {
        let th = parse_table(MINIMAL).unwrap();
        let pt = BaseInsertion::primary(1);
        assert_eq!(
            base_invariant(&th, &[pt, pt], &CurveClass::degree(1)).unwrap(),
            rational_int(1)
        );
        // dimension-correct but unlisted, no completeness declared
        assert!(matches!(
            base_invariant(&th, &[pt, pt, pt], &CurveClass::degree(1)),
            Err(Error::MissingTableEntry(_))
        ));
        // dimension mismatch is zero without consulting the table
        assert_eq!(
            base_invariant(&th, &[pt, pt], &CurveClass::degree(2)).unwrap(),
            Rational::default()
        );
    }

    #[test]
    fn singular_pairing() {
        let text = MINIMAL.replace(r#"[["0", "1"], ["1", "0"]]"#, r#"[["1", "1"], ["1", "1"]]"#);
        assert!(matches!(
            parse_table(&text),
            Err(Error::InconsistentPairing)
        ));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_table("{\n  \"name\": \"x\",\n  \"dim\": oops\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_label() {
        let text = MINIMAL.replace(r#"{"class": "pt"}"#, r#"{"class": "H"}"#);
        assert!(matches!(parse_table(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn conic_entry_round_trips() {
        let p2 = builtin_theory("P2").unwrap();
        let file = TableFile::export(&p2, &CurveClass::degree(2), 5, 0).unwrap();
        let json = serde_json::to_string(&file).unwrap();
        let th = parse_table(&json).unwrap();
        let pts = vec![BaseInsertion::primary(2); 5];
        assert_eq!(
            base_invariant(&th, &pts, &CurveClass::degree(2)).unwrap(),
            rational_int(1)
        );
        // inside declared bounds, unlisted means zero
        let units = vec![BaseInsertion::primary(0); 4];
        assert_eq!(
            base_invariant(&th, &units, &CurveClass::degree(0)).unwrap(),
            Rational::default()
        );
    }
}

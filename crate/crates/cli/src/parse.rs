//! Command-line syntax for gerbes, curve classes and insertions.
//!
//! - gerbe: `r=2,L=1`; several factors `r=2:3,L=1:2`; a functional with
//!   several curve coordinates `L=1/0`
//! - curve class: `2` or `1,0`
//! - insertion: `g=1:pt`, `rho=1,2:H:1` (residues, class label, psi power)
//!   or a bare `pt[:k]` for the base theory

use gerbegw::{AbelianGroup, BaseTheory, CurveClass, GerbeSpec};

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn int<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, CliError> {
    text.trim()
        .parse()
        .map_err(|_| bad(format!("{what}: cannot read {text:?} as an integer")))
}

pub fn gerbe(text: &str) -> Result<GerbeSpec, CliError> {
    let mut factors = None;
    let mut functionals = None;
    for field in text.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("gerbe field {field:?} is not key=value")))?;
        match key.trim() {
            "r" => {
                let rs = value
                    .split(':')
                    .map(|r| int::<u32>(r, "gerbe order"))
                    .collect::<Result<Vec<_>, _>>()?;
                factors = Some(rs);
            }
            "L" => {
                let ls = value
                    .split(':')
                    .map(|f| {
                        f.split('/')
                            .map(|c| int::<i64>(c, "gerbe degree"))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                functionals = Some(ls);
            }
            other => return Err(bad(format!("unknown gerbe field {other:?}"))),
        }
    }
    let factors = factors.ok_or_else(|| bad("gerbe needs r=..."))?;
    let functionals = functionals.ok_or_else(|| bad("gerbe needs L=..."))?;
    if factors.len() != functionals.len() {
        return Err(bad(format!(
            "gerbe has {} orders but {} degree functionals",
            factors.len(),
            functionals.len()
        )));
    }
    if factors.contains(&0) {
        return Err(bad("gerbe orders must be positive"));
    }
    let group = AbelianGroup::new(factors)?;
    Ok(GerbeSpec::new(group, functionals)?)
}

pub fn group(text: &str) -> Result<AbelianGroup, CliError> {
    let factors = text
        .split(':')
        .map(|r| int::<u32>(r, "group order"))
        .collect::<Result<Vec<_>, _>>()?;
    if factors.contains(&0) {
        return Err(bad("group orders must be positive"));
    }
    Ok(AbelianGroup::new(factors)?)
}

pub fn curve_class(text: &str) -> Result<CurveClass, CliError> {
    let coords = text
        .split(',')
        .map(|c| int::<u32>(c, "curve class"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveClass::new(coords))
}

pub fn residues(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',').map(|a| int::<i64>(a, "residue")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    Sector(Vec<i64>),
    Character(Vec<i64>),
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub label: Label,
    pub class_index: usize,
    pub psi_power: u32,
}

pub fn insertion(text: &str, theory: &BaseTheory) -> Result<Insertion, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let (label, rest) = match parts[0].split_once('=') {
        Some(("g", r)) => (Label::Sector(residues(r)?), &parts[1..]),
        Some(("rho", r)) => (Label::Character(residues(r)?), &parts[1..]),
        Some((other, _)) => {
            return Err(bad(format!(
                "insertion prefix {other:?}, expected g or rho"
            )))
        }
        None => (Label::Plain, &parts[..]),
    };
    let (class, psi) = match rest {
        [class] => (*class, 0),
        [class, psi] => (*class, int::<u32>(psi, "psi power")?),
        _ => return Err(bad(format!("malformed insertion {text:?}"))),
    };
    let class_index = theory
        .basis()
        .index_of(class)
        .ok_or_else(|| bad(format!("unknown class {class:?} in {}", theory.name())))?;
    Ok(Insertion {
        label,
        class_index,
        psi_power: psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gerbegw::builtin_theory;

    #[test]
    fn gerbes() {
        let spec = gerbe("r=2,L=1").unwrap();
        assert_eq!(spec.group().factors(), &[2]);
        let multi = gerbe("r=2:3,L=1:2").unwrap();
        assert_eq!(multi.functionals(), &[vec![1], vec![2]]);
        let wide = gerbe("L=1/0,r=4").unwrap();
        assert_eq!(wide.functionals(), &[vec![1, 0]]);
        assert!(gerbe("r=2").is_err());
        assert!(gerbe("r=2:3,L=1").is_err());
        assert!(gerbe("r=x,L=1").is_err());
    }

    #[test]
    fn insertions() {
        let p2 = builtin_theory("P2").unwrap();
        let ins = insertion("g=1:pt", &p2).unwrap();
        assert_eq!(
            (ins.label, ins.class_index, ins.psi_power),
            (Label::Sector(vec![1]), 2, 0)
        );
        let ins = insertion("rho=1,2:H:3", &p2).unwrap();
        assert_eq!(ins.label, Label::Character(vec![1, 2]));
        assert_eq!(ins.psi_power, 3);
        assert_eq!(insertion("pt", &p2).unwrap().label, Label::Plain);
        assert!(insertion("g=1:nope", &p2).is_err());
        assert!(insertion("h=1:pt", &p2).is_err());
        assert!(insertion("g=1:pt:1:2", &p2).is_err());
    }
}

use std::fmt::Write as _;

use gerbegw::base::table::ingest_table;
use gerbegw::base::{base_invariant, builtin_theory, BaseInsertion, BaseTheory};
use gerbegw::combinat::multisets;
use gerbegw::frobenius::{
    base_deformed_product, block_proportionality, check_block_diagonal, gerbe_quantum_product,
    semisimplicity_probe, Deformation, EvaluationPoint,
};
use gerbegw::gerbe::{enumerate_boundary_indices, DRule, GerbeSpec};
use gerbegw::invariants::{
    rho_invariant, twisted_from_rho, twisted_invariant, InvariantValue, RhoInsertion,
    TwistedInsertion,
};
use gerbegw::potentials::{
    build_base_potential, build_gerbe_potential, verify_decomposition, TruncatedPotential,
    Truncation,
};
use gerbegw::{abelian::character_table, Complex64, CycNumber, GroupElement, Limits};
use serde_json::{json, Value};

use crate::parse::{self, Label};
use crate::{BaseArgs, Cli, CliError, Command, Format, TruncationArgs};

type Failure = (Option<String>, CliError);

fn fail<E: Into<CliError>>(e: E) -> Failure {
    (None, e.into())
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let limits = cli.limit.map(Limits::uniform).unwrap_or_default();
    match &cli.command {
        Command::Invariant {
            base,
            gerbe,
            beta,
            ins,
        } => invariant(cli.format, base, gerbe.as_deref(), beta, ins).map_err(fail),
        Command::Sectors { gerbe, n, beta } => {
            sectors(cli.format, gerbe, *n, beta, &limits).map_err(fail)
        }
        Command::Verify {
            base,
            gerbe,
            truncation,
            tol,
            seed,
        } => verify(cli.format, base, gerbe, truncation, *tol, *seed, &limits),
        Command::Chartable { group } => chartable(cli.format, group, &limits).map_err(fail),
        Command::Potential {
            base,
            gerbe,
            truncation,
        } => potential(cli.format, base, gerbe.as_deref(), truncation, &limits).map_err(fail),
        Command::Nodes {
            gerbe,
            n,
            beta,
            sectors,
        } => nodes(cli.format, gerbe, *n, beta, sectors).map_err(fail),
    }
}

fn theory(args: &BaseArgs) -> Result<BaseTheory, CliError> {
    match (&args.base, &args.table) {
        (Some(name), None) => Ok(builtin_theory(name)?),
        (None, Some(path)) => Ok(ingest_table(path)?),
        (None, None) => Err(CliError::Parse(
            "one of --base or --table is required".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Parse("--base and --table are exclusive".into())),
    }
}

fn json_out(mut value: Value) -> String {
    value["schema"] = json!(1);
    format!(
        "{}\n",
        serde_json::to_string_pretty(&value).expect("serializable")
    )
}

fn value_json(value: CycNumber) -> Value {
    serde_json::to_value(InvariantValue::from(value)).expect("serializable")
}

fn invariant(
    format: Format,
    base: &BaseArgs,
    gerbe: Option<&str>,
    beta: &str,
    ins: &[String],
) -> Result<String, CliError> {
    let th = theory(base)?;
    let beta = parse::curve_class(beta)?;
    let parsed = ins
        .iter()
        .map(|text| parse::insertion(text, &th))
        .collect::<Result<Vec<_>, _>>()?;
    let kinds: Vec<std::mem::Discriminant<Label>> = parsed
        .iter()
        .map(|i| std::mem::discriminant(&i.label))
        .collect();
    if kinds.windows(2).any(|w| w[0] != w[1]) {
        return Err(CliError::Parse(
            "insertions mix g=, rho= and bare labels".into(),
        ));
    }
    let value = match (gerbe, parsed.first().map(|i| &i.label)) {
        (None, None | Some(Label::Plain)) => {
            let base_ins: Vec<BaseInsertion> = parsed
                .iter()
                .map(|i| BaseInsertion {
                    class_index: i.class_index,
                    psi_power: i.psi_power,
                })
                .collect();
            CycNumber::from_rational(base_invariant(&th, &base_ins, &beta)?, 1)
        }
        (None, Some(_)) => {
            return Err(CliError::Parse(
                "g= and rho= insertions need --gerbe".into(),
            ))
        }
        (Some(_), None | Some(Label::Plain)) => {
            return Err(CliError::Parse(
                "with --gerbe every insertion needs g= or rho=".into(),
            ))
        }
        (Some(text), Some(Label::Sector(_))) => {
            let spec = parse::gerbe(text)?;
            let ins = parsed
                .iter()
                .map(|i| match &i.label {
                    Label::Sector(r) => Ok(TwistedInsertion {
                        sector: spec.group().element(r)?,
                        class_index: i.class_index,
                        psi_power: i.psi_power,
                    }),
                    _ => unreachable!("kinds checked above"),
                })
                .collect::<Result<Vec<_>, gerbegw::Error>>()?;
            CycNumber::from_rational(twisted_invariant(&spec, &th, &ins, &beta)?, 1)
        }
        (Some(text), Some(Label::Character(_))) => {
            let spec = parse::gerbe(text)?;
            let ins = parsed
                .iter()
                .map(|i| match &i.label {
                    Label::Character(r) => Ok(RhoInsertion {
                        rho: spec.group().character(r)?,
                        class_index: i.class_index,
                        psi_power: i.psi_power,
                    }),
                    _ => unreachable!("kinds checked above"),
                })
                .collect::<Result<Vec<_>, gerbegw::Error>>()?;
            rho_invariant(&spec, &th, &ins, &beta)?
        }
    };
    Ok(match format {
        Format::Human => format!("{value}\n"),
        Format::Json => json_out(json!({ "value": value_json(value) })),
    })
}

fn residues(g: &GroupElement) -> Value {
    json!(g.residues())
}

fn sectors(
    format: Format,
    gerbe: &str,
    n: usize,
    beta: &str,
    limits: &Limits,
) -> Result<String, CliError> {
    let spec = parse::gerbe(gerbe)?;
    let beta = parse::curve_class(beta)?;
    let vectors = spec.enumerate_admissible_vectors(n, &beta, limits.enumeration)?;
    let mut rows = Vec::with_capacity(vectors.len());
    for vector in &vectors {
        let data = vector
            .iter()
            .map(|g| spec.sector_data(g))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((vector, data));
    }
    Ok(match format {
        Format::Json => json_out(json!({
            "count": vectors.len(),
            "vectors": rows.iter().map(|(v, data)| json!({
                "sectors": v.iter().map(residues).collect::<Vec<_>>(),
                "data": data,
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut out = format!(
                "{} admissible vectors for n={n}, beta={beta} over {}\n",
                vectors.len(),
                spec
            );
            for (v, data) in &rows {
                let sectors: Vec<String> = v.iter().map(|g| g.to_string()).collect();
                let triples: Vec<String> = data
                    .iter()
                    .map(|point| {
                        point
                            .iter()
                            .map(|s| format!("({},{},{})", s.rho, s.r_i, s.m_i))
                            .collect::<Vec<_>>()
                            .join("")
                    })
                    .collect();
                let _ = writeln!(out, "{}  {}", sectors.join(" "), triples.join(" "));
            }
            out
        }
    })
}

/// Transform round trip on every dimension-matched query with at most
/// three insertions.
fn transform_suite(
    spec: &GerbeSpec,
    th: &BaseTheory,
    tr: &Truncation,
    limits: &Limits,
) -> Result<(usize, Option<String>), CliError> {
    let elements = spec.group().enumerate_elements(limits.group)?;
    let slots: Vec<BaseInsertion> = (0..th.basis().len())
        .flat_map(|class_index| {
            (0..=tr.psi_max).map(move |psi_power| BaseInsertion {
                class_index,
                psi_power,
            })
        })
        .collect();
    let mut checked = 0usize;
    for beta in tr.beta_max.classes_below() {
        for n in 1..=tr.n_max.min(3) {
            if beta.is_zero() && n < 3 {
                continue;
            }
            let size = (elements.len() as u128).saturating_pow(n as u32);
            if size > limits.enumeration {
                return Err(gerbegw::Error::EnumerationTooLarge {
                    size,
                    limit: limits.enumeration,
                }
                .into());
            }
            for multiset in multisets(slots.len(), n) {
                let base: Vec<BaseInsertion> = multiset.iter().map(|&k| slots[k]).collect();
                if !th.dimension_matches(&base, &beta) {
                    continue;
                }
                let mut idx = vec![0usize; n];
                loop {
                    let ins: Vec<TwistedInsertion> = base
                        .iter()
                        .zip(&idx)
                        .map(|(b, &k)| TwistedInsertion {
                            sector: elements[k].clone(),
                            class_index: b.class_index,
                            psi_power: b.psi_power,
                        })
                        .collect();
                    let direct = twisted_invariant(spec, th, &ins, &beta)?;
                    let round_trip = twisted_from_rho(spec, th, &ins, &beta, limits)?;
                    checked += 1;
                    if direct != round_trip {
                        let sectors: Vec<String> =
                            ins.iter().map(|i| i.sector.to_string()).collect();
                        return Ok((
                            checked,
                            Some(format!(
                                "beta={beta} sectors {}: {direct} vs {round_trip}",
                                sectors.join(" ")
                            )),
                        ));
                    }
                    // odometer over sector indices
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < elements.len() {
                            break;
                        }
                        idx[pos] = 0;
                        if pos == 0 {
                            pos = usize::MAX;
                            break;
                        }
                    }
                    if pos == usize::MAX || n == 0 {
                        break;
                    }
                }
            }
        }
    }
    Ok((checked, None))
}

/// WDVV for the base product deformed along the top class, using every
/// correlator with at most `n_max` points. The decomposition holds for any
/// input data; this is what catches a table that is not a genuine theory.
fn base_associativity(
    th: &BaseTheory,
    tr: &Truncation,
    limits: &Limits,
) -> Result<Option<String>, CliError> {
    let top = (0..th.basis().len())
        .max_by_key(|&i| th.basis().codim(i))
        .expect("nonempty basis");
    let deformation = Deformation {
        directions: vec![top],
        order: tr.n_max.saturating_sub(3) as u32,
    };
    let qp = base_deformed_product(th, &tr.beta_max, &deformation, limits)?;
    Ok(qp.wdvv_violation().map(|(a, b, c)| {
        let labels = qp.labels();
        format!(
            "({} * {}) * {} != {} * ({} * {})",
            labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
        )
    }))
}

fn truncation(args: &TruncationArgs) -> Result<Truncation, CliError> {
    Ok(Truncation {
        beta_max: parse::curve_class(&args.beta_max)?,
        n_max: args.n_max,
        psi_max: args.psi_max,
    })
}

fn verify(
    format: Format,
    base: &BaseArgs,
    gerbe: &str,
    args: &TruncationArgs,
    tol: f64,
    seed: u64,
    limits: &Limits,
) -> Result<String, Failure> {
    let th = theory(base).map_err(fail)?;
    let spec = parse::gerbe(gerbe).map_err(fail)?;
    let tr = truncation(args).map_err(fail)?;
    let report = verify_decomposition(&spec, &th, &tr, limits).map_err(fail)?;
    let diagonal = check_block_diagonal(&spec, &th, &tr.beta_max, limits).map_err(fail)?;
    let lambda = block_proportionality(&spec, &th, &tr.beta_max, limits).map_err(fail)?;
    let (transform_checked, transform_witness) =
        transform_suite(&spec, &th, &tr, limits).map_err(fail)?;
    let associativity = base_associativity(&th, &tr, limits).map_err(fail)?;
    let qp = gerbe_quantum_product(&spec, &th, &tr.beta_max, limits).map_err(fail)?;
    let point = EvaluationPoint::novikov(vec![Complex64::new(1.0, 0.0); tr.beta_max.rank()]);
    let probe = semisimplicity_probe(&qp, &point, tol, seed).map_err(fail)?;

    let passed = report.equal
        && diagonal
        && lambda.is_some()
        && transform_witness.is_none()
        && associativity.is_none();
    let output = match format {
        Format::Json => json_out(json!({
            "passed": passed,
            "decomposition": report,
            "block_diagonal": diagonal,
            "block_constant": lambda.clone().map(value_json),
            "transform": { "checked": transform_checked, "witness": transform_witness },
            "base_associativity": { "passed": associativity.is_none(), "witness": associativity },
            "probe": probe,
        })),
        Format::Human => {
            let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
            let mut out = String::new();
            let _ = writeln!(
                out,
                "decomposition   {} ({} coefficients)",
                verdict(report.equal),
                report.checked_terms
            );
            if let Some(w) = &report.witness {
                let term: Vec<String> = w.term.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(
                    out,
                    "  first difference at beta={} {}: {} vs {}",
                    w.beta,
                    term.join(" "),
                    w.lhs,
                    w.rhs
                );
            }
            let _ = writeln!(out, "block diagonal  {}", verdict(diagonal));
            let _ = writeln!(
                out,
                "block constant  {}",
                lambda
                    .as_ref()
                    .map_or("FAIL".to_string(), |l| format!("PASS ({l})"))
            );
            let _ = writeln!(
                out,
                "transform       {} ({transform_checked} queries)",
                verdict(transform_witness.is_none())
            );
            if let Some(w) = &transform_witness {
                let _ = writeln!(out, "  {w}");
            }
            let _ = writeln!(out, "associativity   {}", verdict(associativity.is_none()));
            if let Some(w) = &associativity {
                let _ = writeln!(out, "  {w}");
            }
            let _ = writeln!(
                out,
                "probe at q=1    {:?} (min gap {:.3e})",
                probe.verdict, probe.min_gap
            );
            let _ = writeln!(out, "{}", verdict(passed));
            out
        }
    };
    if passed {
        Ok(output)
    } else {
        Err((Some(output), CliError::IdentityFailed))
    }
}

fn chartable(format: Format, group: &str, limits: &Limits) -> Result<String, CliError> {
    let group = parse::group(group)?;
    let table = character_table(&group, limits.group)?;
    let elements = group.enumerate_elements(limits.group)?;
    Ok(match format {
        Format::Json => json_out(json!({
            "group": group.factors(),
            "elements": elements.iter().map(residues).collect::<Vec<_>>(),
            "table": table.iter().map(|row| row.iter().cloned().map(value_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let cells: Vec<Vec<String>> = table
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            let header: Vec<String> = elements.iter().map(|g| g.to_string()).collect();
            let width = cells
                .iter()
                .flatten()
                .chain(&header)
                .map(String::len)
                .max()
                .unwrap_or(1);
            let mut out = format!("{:>width$} |", "");
            for h in &header {
                let _ = write!(out, " {h:>width$}");
            }
            out.push('\n');
            for (rho, row) in elements.iter().zip(&cells) {
                let _ = write!(out, "{:>width$} |", rho.to_string());
                for c in row {
                    let _ = write!(out, " {c:>width$}");
                }
                out.push('\n');
            }
            out
        }
    })
}

fn describe(pot: &TruncatedPotential, th: &BaseTheory) -> String {
    let mut out = String::new();
    for ((beta, slots), coefficient) in pot.terms() {
        let vars: Vec<String> = slots
            .iter()
            .map(|s| {
                let mut v = th.basis().label(s.class_index).to_string();
                if let Some(rho) = &s.rho {
                    let _ = write!(v, "_rho{rho}");
                }
                if s.psi > 0 {
                    let _ = write!(v, "^psi{}", s.psi);
                }
                v
            })
            .collect();
        let _ = writeln!(out, "Q^{beta}  [{}]  {coefficient}", vars.join(" "));
    }
    out
}

fn potential(
    format: Format,
    base: &BaseArgs,
    gerbe: Option<&str>,
    args: &TruncationArgs,
    limits: &Limits,
) -> Result<String, CliError> {
    let th = theory(base)?;
    let tr = truncation(args)?;
    let pot = match gerbe {
        Some(text) => build_gerbe_potential(&parse::gerbe(text)?, &th, &tr, limits)?,
        None => build_base_potential(&th, &tr, limits)?,
    };
    Ok(match format {
        Format::Json => json_out(json!({
            "labels": th.basis().classes().iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
            "terms": pot,
        })),
        Format::Human => describe(&pot, &th),
    })
}

fn nodes(
    format: Format,
    gerbe: &str,
    n: usize,
    beta: &str,
    sectors: &[String],
) -> Result<String, CliError> {
    let spec = parse::gerbe(gerbe)?;
    let beta = parse::curve_class(beta)?;
    let g_vec = sectors
        .iter()
        .map(|s| Ok(spec.group().element(&parse::residues(s)?)?))
        .collect::<Result<Vec<GroupElement>, CliError>>()?;
    if !g_vec.is_empty() && g_vec.len() != n {
        return Err(CliError::Parse(format!(
            "{} sectors given for n = {n}",
            g_vec.len()
        )));
    }
    let cert = if g_vec.is_empty() {
        None
    } else {
        Some(spec.choose_d(&g_vec, &beta, DRule::LastSolved)?)
    };
    let indices = enumerate_boundary_indices(n, &beta);
    let mut records = Vec::with_capacity(indices.len());
    for index in &indices {
        let data = match &cert {
            Some(c) => Some(spec.node_data(index, &g_vec, &beta, Some(c))?),
            None => None,
        };
        records.push((index, data));
    }
    Ok(match format {
        Format::Json => json_out(json!({
            "count": indices.len(),
            "certificate": cert,
            "indices": records.iter().map(|(index, data)| json!({
                "t": index.t.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "beta_prime": index.beta_prime,
                "node": data,
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut out = format!(
                "{} boundary indices for n={n}, beta={beta}\n",
                indices.len()
            );
            for (index, data) in &records {
                let _ = write!(out, "{index}");
                if let Some(data) = data {
                    for nd in data {
                        let _ = write!(
                            out,
                            "  theta={} r={} m={} d={}",
                            nd.theta,
                            nd.r_node,
                            nd.m_node,
                            nd.d_node.map_or("-".into(), |d| d.to_string())
                        );
                    }
                }
                out.push('\n');
            }
            out
        }
    })
}

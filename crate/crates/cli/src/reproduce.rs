//! The composite run behind `reproduce-paper`.

use std::collections::BTreeMap;

use clap::ValueEnum;
use linpoly::arith::{is_prime, prime_power};
use linpoly::galois::{
    proposition_check, proposition_check_with, verify_theorem, Budget, PropositionReport, TheoremTable, Verdict,
};
use linpoly::groups::{divisibility_deduction, Deduction};
use linpoly::linpoly::LinearizedPoly;
use linpoly::parse::parse_field;
use linpoly::rng::stream;
use linpoly::series::{random_instance, run_lemma, LemmaReport, DEFAULT_TRUNCATION};
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Theorem,
    Proposition,
    Deduction,
    Multiplicity,
    Hensel,
}

impl Section {
    pub const ALL: [Section; 5] =
        [Section::Theorem, Section::Proposition, Section::Deduction, Section::Multiplicity, Section::Hensel];
}

/// `(q, n)` pairs certified by the theorem section.
pub const THEOREM_CASES: [(u64, usize); 4] = [(2, 3), (3, 3), (4, 3), (2, 5)];
pub const HENSEL_INSTANCES: usize = 50;

#[derive(Debug, Serialize)]
pub struct TheoremSection {
    pub tables: Vec<TheoremTable>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct PropositionSection {
    pub reports: Vec<PropositionReport>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct DeductionSection {
    pub cases: usize,
    pub failures: Vec<(u64, u64)>,
    pub forced_branches: Vec<Deduction>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct MultiplicityRow {
    pub q: u64,
    pub n: usize,
    pub polynomials: usize,
    pub by_m: BTreeMap<usize, usize>,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct MultiplicitySection {
    pub rows: Vec<MultiplicityRow>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct HenselSection {
    pub truncation: usize,
    pub instances: Vec<LemmaReport>,
    pub pass: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct ReproduceReport {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proposition: Option<PropositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deduction: Option<DeductionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<MultiplicitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hensel: Option<HenselSection>,
    pub pass: bool,
}

impl ReproduceReport {
    /// `(section, pass)` for every section that ran.
    pub fn summary(&self) -> Vec<(&'static str, bool)> {
        let mut out = Vec::new();
        if let Some(s) = &self.theorem {
            out.push(("theorem", s.pass));
        }
        if let Some(s) = &self.proposition {
            out.push(("proposition", s.pass));
        }
        if let Some(s) = &self.deduction {
            out.push(("deduction", s.pass));
        }
        if let Some(s) = &self.multiplicity {
            out.push(("multiplicity", s.pass));
        }
        if let Some(s) = &self.hensel {
            out.push(("hensel", s.pass));
        }
        out
    }
}

pub fn theorem_section(seed: u64, budget: &Budget) -> Result<TheoremSection, CliError> {
    let tables =
        THEOREM_CASES.iter().map(|&(q, n)| verify_theorem(q, n, budget, seed, false)).collect::<Result<Vec<_>, _>>()?;
    let pass = tables.iter().all(|t| t.pass);
    Ok(TheoremSection { tables, pass })
}

/// Every `L` of the theorem cases plus `X^16 + X^(2^m)` over `F_2`.
pub fn proposition_section(seed: u64, theorem: Option<&TheoremSection>) -> Result<PropositionSection, CliError> {
    let mut reports = Vec::new();
    for &(q, n) in &THEOREM_CASES {
        let field = linpoly::galois::field_of_order(q, seed)?;
        let table = theorem.and_then(|t| t.tables.iter().find(|t| t.q == q && t.n == n));
        for l in LinearizedPoly::all_with_interior_term(&field, n)? {
            let row = table.and_then(|t| t.rows.iter().find(|r| r.key == l.key()));
            let certified = row.is_some_and(|r| r.verdict == Verdict::CertifiedGL);
            let bound = row.and_then(|r| r.order_lower_bound.as_ref());
            let r = proposition_check_with(&l, certified, bound)?;
            reports.push(r);
        }
    }
    let f2 = parse_field("2", seed)?;
    for m in 1..4 {
        let mut interior = vec![f2.zero(); 3];
        interior[m - 1] = f2.one();
        reports.push(proposition_check(&LinearizedPoly::from_interior(&f2, &interior)?, None)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(PropositionSection { reports, pass })
}

pub fn deduction_section() -> Result<DeductionSection, CliError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut forced_branches = Vec::new();
    for n in (3..=13u64).filter(|&n| is_prime(n)) {
        for q in (2..=32u64).filter(|&q| prime_power(q).is_some()) {
            let d = divisibility_deduction(q, n)?;
            cases += 1;
            if !d.no_admissible_m {
                failures.push((q, n));
            }
            if d.forced_branch.is_some() {
                forced_branches.push(d);
            }
        }
    }
    Ok(DeductionSection { cases, pass: failures.is_empty(), failures, forced_branches })
}

pub fn multiplicity_section(seed: u64) -> Result<MultiplicitySection, CliError> {
    let mut rows = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let field = parse_field(&q.to_string(), seed)?;
        for n in 2..=5usize {
            let ls = LinearizedPoly::all_with_interior_term(&field, n)?;
            let mut by_m = BTreeMap::new();
            let mut failures = Vec::new();
            for l in &ls {
                match l.multiplicity_decomposition() {
                    Ok(d) => *by_m.entry(d.m).or_insert(0) += 1,
                    Err(e) => failures.push(format!("{l}: {e}")),
                }
            }
            rows.push(MultiplicityRow { q, n, polynomials: ls.len(), by_m, failures });
        }
    }
    let pass = rows.iter().all(|r| r.failures.is_empty());
    Ok(MultiplicitySection { rows, pass })
}

/// The seeded instances shared by the lifting and polygon checks.
pub fn hensel_section(seed: u64) -> Result<HenselSection, CliError> {
    let mut rng = stream(seed, "hensel-instances");
    let instances = (0..HENSEL_INSTANCES)
        .map(|_| run_lemma(&random_instance(&mut rng)?, DEFAULT_TRUNCATION))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = instances.iter().all(|r| r.pass);
    Ok(HenselSection { truncation: DEFAULT_TRUNCATION, instances, pass })
}

/// Runs the requested sections (all when empty).
pub fn reproduce_paper(seed: u64, sections: &[Section]) -> Result<ReproduceReport, CliError> {
    let want = |s: Section| sections.is_empty() || sections.contains(&s);
    let mut report = ReproduceReport { seed, ..Default::default() };
    if want(Section::Theorem) {
        report.theorem = Some(theorem_section(seed, &Budget::default())?);
    }
    if want(Section::Proposition) {
        report.proposition = Some(proposition_section(seed, report.theorem.as_ref())?);
    }
    if want(Section::Deduction) {
        report.deduction = Some(deduction_section()?);
    }
    if want(Section::Multiplicity) {
        report.multiplicity = Some(multiplicity_section(seed)?);
    }
    if want(Section::Hensel) {
        report.hensel = Some(hensel_section(seed)?);
    }
    report.pass = report.summary().iter().all(|(_, p)| *p);
    Ok(report)
}

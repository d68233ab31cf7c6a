use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use congmon::reduce::ReductionMap;
use congmon::verify::{render_columns, render_reports, render_summary, SummaryRow};
use congmon::{Orbit, Solution, UnitGroup, VerificationReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// A solution with its usual invariants attached. The JSON form is a
/// superset of the plain solution schema, so it still parses as one.
#[derive(Serialize)]
pub struct SolutionRow<'a> {
    n: u32,
    counts: &'a [u32],
    degree: u64,
    multiplicity: u64,
    level: u64,
    orbit_size: usize,
}

impl<'a> SolutionRow<'a> {
    pub fn new(group: &UnitGroup, a: &'a Solution) -> Self {
        let orbit = group.orbit_set(a);
        Self {
            n: a.modulus(),
            counts: a.counts(),
            degree: a.degree(),
            multiplicity: a.multiplicity(),
            level: orbit.iter().map(Solution::multiplicity).min().unwrap_or(0),
            orbit_size: orbit.len(),
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            tuple(self.counts),
            self.degree.to_string(),
            self.multiplicity.to_string(),
            self.level.to_string(),
            self.orbit_size.to_string(),
        ]
    }
}

const SOLUTION_HEADER: [&str; 5] = ["counts", "degree", "multiplicity", "level", "orbit_size"];

fn tuple(v: &[u32]) -> String {
    let items: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", items.join(","))
}

fn json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn table_rows(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    out.write_all(render_columns(header, rows).as_bytes())?;
    Ok(())
}

pub fn solutions(
    out: &mut dyn Write,
    format: Format,
    n: u32,
    rows: &[SolutionRow<'_>],
) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a, 'b> {
        n: u32,
        elements: &'a [SolutionRow<'b>],
    }
    match format {
        Format::Json => json(out, &Doc { n, elements: rows }),
        Format::Csv => {
            let body: Vec<_> = rows.iter().map(SolutionRow::cells).collect();
            csv_rows(out, &SOLUTION_HEADER, &body)
        }
        Format::Table => {
            let body: Vec<_> = rows.iter().map(SolutionRow::cells).collect();
            table_rows(out, &SOLUTION_HEADER, &body)
        }
    }
}

pub fn orbits(out: &mut dyn Write, format: Format, orbits: &[Orbit]) -> Result<()> {
    let header = ["representative", "degree", "size", "level", "elements"];
    let body: Vec<Vec<String>> = orbits
        .iter()
        .map(|o| {
            let members: Vec<String> = o.elements.iter().map(|a| tuple(a.counts())).collect();
            vec![
                tuple(o.representative.counts()),
                o.degree().to_string(),
                o.size.to_string(),
                o.level.to_string(),
                members.join(" "),
            ]
        })
        .collect();
    match format {
        Format::Json => json(out, orbits),
        Format::Csv => csv_rows(out, &header, &body),
        Format::Table => table_rows(out, &header, &body),
    }
}

pub fn reduction(
    out: &mut dyn Write,
    format: Format,
    rm: &ReductionMap,
    generators: &[Vec<u32>],
) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a> {
        reduction: &'a ReductionMap,
        generators: &'a [Vec<u32>],
    }
    let header = ["vector", "degree"];
    let body: Vec<Vec<String>> = generators
        .iter()
        .map(|x| {
            vec![
                tuple(x),
                x.iter().map(|&v| v as u64).sum::<u64>().to_string(),
            ]
        })
        .collect();
    match format {
        Format::Json => json(
            out,
            &Doc {
                reduction: rm,
                generators,
            },
        ),
        Format::Csv => csv_rows(out, &header, &body),
        Format::Table => {
            let support: Vec<String> = rm.canonical_support.iter().map(u32::to_string).collect();
            writeln!(out, "modulus   {}", rm.modulus)?;
            writeln!(out, "support   {{{}}}", support.join(","))?;
            for (s, vars) in &rm.groups {
                let names: Vec<String> = vars.iter().map(|i| format!("x{}", i + 1)).collect();
                writeln!(out, "group {s}   {}", names.join(" "))?;
            }
            if !rm.dropped.is_empty() {
                let names: Vec<String> = rm.dropped.iter().map(|i| format!("x{}", i + 1)).collect();
                writeln!(out, "dropped   {}", names.join(" "))?;
            }
            writeln!(out)?;
            table_rows(out, &header, &body)
        }
    }
}

pub fn reports(out: &mut dyn Write, format: Format, reports: &[VerificationReport]) -> Result<()> {
    match format {
        Format::Json => json(out, reports),
        Format::Table => {
            out.write_all(render_reports(reports).as_bytes())?;
            Ok(())
        }
        Format::Csv => {
            let header = ["check", "n", "tier", "status", "witnesses", "scope"];
            let body: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let tier = serde_json::to_value(r.tier)?;
                    Ok(vec![
                        r.check_name.to_string(),
                        r.modulus.to_string(),
                        tier.as_str().unwrap_or_default().to_string(),
                        r.status.to_string(),
                        r.witnesses.len().to_string(),
                        r.scope.clone(),
                    ])
                })
                .collect::<Result<_>>()?;
            csv_rows(out, &header, &body)
        }
    }
}

pub fn summary(out: &mut dyn Write, format: Format, rows: &[SummaryRow]) -> Result<()> {
    match format {
        Format::Json => json(out, rows),
        Format::Table => {
            out.write_all(render_summary(rows).as_bytes())?;
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

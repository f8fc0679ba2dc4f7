//! Report assembly and the json, csv and text writers.

use std::collections::BTreeMap;
use std::io::{self, Write};

use congruence_core::bernoulli::BernoulliCache;
use congruence_core::registry::{
    gessel_start, summarize, winning_readings, CheckId, CongruenceReport, Counts, Status, ROW_ASSUMPTION,
};
use serde::Serialize;

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub p_range: [u64; 2],
    #[serde(rename = "K")]
    pub k: u32,
    pub version: &'static str,
    pub checks: Vec<CheckId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_2n: Option<u64>,
    pub max_order: u64,
    /// Smallest order from which the C09 identity holds through `max_order`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gessel_start: Option<String>,
    /// C25 reading that passed everywhere, or `none`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c25_reading: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c34_rows: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub exploratory: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: BTreeMap<String, Counts>,
    pub totals: Totals,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub records: Vec<CongruenceReport>,
    pub summary: Summary,
}

impl Report {
    pub fn build(cfg: &RunConfig, cache: &BernoulliCache, records: Vec<CongruenceReport>) -> Self {
        let selected = |n: u8| cfg.checks.contains(&CheckId(n));
        let gessel = selected(9).then(|| match gessel_start(cache, cfg.max_order) {
            Some(n) => n.to_string(),
            None => "none".to_string(),
        });
        let c25 = selected(25).then(|| {
            let wins = winning_readings(&records);
            if wins.is_empty() {
                "none".to_string()
            } else {
                wins.join(",")
            }
        });
        let checks = summarize(&records);
        let mut totals = Totals { records: records.len(), ..Totals::default() };
        for c in checks.values() {
            totals.pass += c.pass;
            totals.fail += c.fail;
            totals.skipped += c.skipped;
            totals.exploratory += c.exploratory;
        }
        Report {
            meta: Meta {
                p_range: [cfg.p_min, cfg.p_max],
                k: cfg.k,
                version: env!("CARGO_PKG_VERSION"),
                checks: cfg.checks.clone(),
                max_2n: cfg.max_2n,
                max_order: cfg.max_order,
                gessel_start: gessel,
                c25_reading: c25,
                c34_rows: selected(34).then_some(ROW_ASSUMPTION),
            },
            records,
            summary: Summary { checks, totals },
        }
    }

    /// Failures that count against the exit code. Exploratory records never do.
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> io::Result<()> {
        match format {
            Format::Json => self.write_json(w),
            Format::Csv => self.write_csv(w),
            Format::Text => self.write_text(w),
        }
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        w.flush()
    }

    /// Header lines start with `#`; everything else is one CSV row per record.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for line in self.header_lines() {
            writeln!(w, "# {line}")?;
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["id", "p", "params", "modulus", "lhs", "rhs", "status", "note"])?;
        for r in &self.records {
            out.write_record(csv_row(r))?;
        }
        out.flush()
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        for line in self.header_lines() {
            writeln!(w, "{line}")?;
        }
        writeln!(w)?;
        for r in &self.records {
            let p = r.p.map(|p| format!("p={p}")).unwrap_or_else(|| "p=-".into());
            let note = r.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
            writeln!(
                w,
                "{} {:<6} {:<28} mod {:<8} {} vs {}  {}{}",
                r.id,
                p,
                r.params.to_string(),
                r.modulus,
                r.lhs,
                r.rhs,
                r.status.as_str(),
                note
            )?;
        }
        writeln!(w)?;
        writeln!(w, "{:<5} {:>7} {:>7} {:>7} {:>11}", "check", "pass", "fail", "skipped", "exploratory")?;
        for (id, c) in &self.summary.checks {
            writeln!(w, "{:<5} {:>7} {:>7} {:>7} {:>11}", id, c.pass, c.fail, c.skipped, c.exploratory)?;
        }
        let t = &self.summary.totals;
        writeln!(w, "{:<5} {:>7} {:>7} {:>7} {:>11}", "total", t.pass, t.fail, t.skipped, t.exploratory)?;
        w.flush()
    }

    fn header_lines(&self) -> Vec<String> {
        let m = &self.meta;
        let mut lines = vec![
            format!("congruence-lab {}", m.version),
            format!("primes {}..{}, K={}, max_order={}", m.p_range[0], m.p_range[1], m.k, m.max_order),
        ];
        if let Some(n) = m.max_2n {
            lines.push(format!("max_2n {n}"));
        }
        if let Some(g) = &m.gessel_start {
            lines.push(format!("gessel_start {g}"));
        }
        if let Some(c) = &m.c25_reading {
            lines.push(format!("c25_reading {c}"));
        }
        if let Some(c) = m.c34_rows {
            lines.push(format!("c34_rows {c}"));
        }
        lines
    }
}

pub fn csv_row(r: &CongruenceReport) -> [String; 8] {
    [
        r.id.to_string(),
        r.p.map(|p| p.to_string()).unwrap_or_default(),
        r.params.to_string(),
        r.modulus.clone(),
        r.lhs.clone(),
        r.rhs.clone(),
        r.status.as_str().to_string(),
        r.note.clone().unwrap_or_default(),
    ]
}

use serde::Serialize;

use super::{Analyzer, CosetMethod, CosetTable, SearchOptions};
use crate::error::{Error, Result};
use crate::game::Configuration;
use crate::geometry::IncidenceStructure;

/// Witnesses kept per report.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstCaseReport {
    pub structure: String,
    pub num_points: usize,
    pub num_lines: usize,
    pub rank: usize,
    pub method: CosetMethod,
    pub covering_radius: usize,
    /// `(weight, number of cosets whose leaders have that weight)`, ascending.
    pub spectrum: Vec<(usize, u64)>,
    /// Least leaders of the covering-radius cosets in lexicographic order.
    pub witnesses: Vec<Configuration>,
    /// Number of cosets at the covering radius.
    pub worst_cosets: u64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    structure: &'a str,
    num_points: usize,
    num_lines: usize,
    rank: usize,
    num_cosets: String,
    method: CosetMethod,
    covering_radius: usize,
    worst_cosets: String,
    spectrum: Vec<(usize, String)>,
    witnesses: Vec<WitnessJson>,
}

#[derive(Serialize)]
struct WitnessJson {
    bits: String,
    lit: Vec<usize>,
}

impl WorstCaseReport {
    pub fn num_cosets(&self) -> u64 {
        self.spectrum.iter().map(|&(_, c)| c).sum()
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            structure: &self.structure,
            num_points: self.num_points,
            num_lines: self.num_lines,
            rank: self.rank,
            num_cosets: self.num_cosets().to_string(),
            method: self.method,
            covering_radius: self.covering_radius,
            worst_cosets: self.worst_cosets.to_string(),
            spectrum: self.spectrum.iter().map(|&(w, c)| (w, c.to_string())).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|c| WitnessJson {
                    bits: c.to_hex(),
                    lit: c.lit_points().collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} points, {} lines, rank {}, {} cosets ({:?})\n",
            self.structure,
            self.num_points,
            self.num_lines,
            self.rank,
            self.num_cosets(),
            self.method
        );
        out.push_str(&format!(
            "covering radius {} ({} cosets)\n",
            self.covering_radius, self.worst_cosets
        ));
        out.push_str("spectrum:\n");
        for (w, c) in &self.spectrum {
            out.push_str(&format!("  {w:>3}  {c}\n"));
        }
        out.push_str("witnesses:\n");
        for c in &self.witnesses {
            let lit: Vec<String> = c.lit_points().map(|p| p.to_string()).collect();
            out.push_str(&format!("  {}  {{{}}}\n", c.to_hex(), lit.join(",")));
        }
        out
    }
}

impl Analyzer<'_> {
    pub fn worst_case(&self) -> Result<WorstCaseReport> {
        let table = self.table()?;
        Ok(report_from_table(self.structure(), self.code().rank(), table))
    }

    /// Worst case from a freshly built table using the given method.
    pub fn worst_case_with(&self, method: CosetMethod) -> Result<WorstCaseReport> {
        let table = CosetTable::build(self.code(), method, self.options())?;
        Ok(report_from_table(self.structure(), self.code().rank(), &table))
    }
}

fn report_from_table(s: &IncidenceStructure, rank: usize, table: &CosetTable) -> WorstCaseReport {
    let radius = table.covering_radius();
    let spectrum: Vec<(usize, u64)> = table
        .spectrum()
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect();
    let worst_cosets = spectrum.last().map(|&(_, c)| c).unwrap_or(0);

    let mut leaders: Vec<_> = Vec::new();
    for (syn, &w) in table.weights().iter().enumerate() {
        if w as usize != radius {
            continue;
        }
        let leader = table.leader(syn as u64);
        let pos = leaders
            .binary_search_by(|probe: &crate::bits::BitVec| probe.lex_cmp(&leader))
            .unwrap_or_else(|p| p);
        if pos < MAX_WITNESSES {
            leaders.insert(pos, leader);
            leaders.truncate(MAX_WITNESSES);
        }
    }
    let dark = Configuration::dark(s);
    WorstCaseReport {
        structure: s.id(),
        num_points: s.num_points(),
        num_lines: s.num_lines(),
        rank,
        method: table.method(),
        covering_radius: radius,
        spectrum,
        witnesses: leaders.into_iter().map(|b| dark.with_bits(b)).collect(),
        worst_cosets,
    }
}

pub(super) fn check_feasible(analyzer: &Analyzer<'_>) -> Result<()> {
    let code = analyzer.code();
    let r = code.redundancy();
    let cap = analyzer.options().max_bits;
    if r > cap as usize {
        let s = analyzer.structure();
        return Err(Error::TooLarge(format!(
            "{}: m = {}, k = {}, 2^{r} cosets exceed the 2^{cap} limit",
            s.id(),
            s.num_points(),
            code.rank(),
        )));
    }
    Ok(())
}

/// Exact covering radius, coset-weight spectrum and witnesses.
pub fn worst_case(s: &IncidenceStructure, opts: &SearchOptions) -> Result<WorstCaseReport> {
    let analyzer = Analyzer::new(s, *opts)?;
    check_feasible(&analyzer)?;
    analyzer.worst_case()
}

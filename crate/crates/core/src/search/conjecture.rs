//! Largest configurations that no single switch reduces, and whether they
//! are the worst case.
//!
//! A single flip of line `L` reduces a board exactly when more than half of
//! `L`'s bulbs are lit, so the configurations immune to single flips are the
//! "caps": at most `floor(|L| / 2)` lit bulbs on every line.

use serde::Serialize;

use super::{Analyzer, SearchOptions};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::game::Configuration;
use crate::geometry::{IncidenceStructure, Kind};

/// Every maximum cap of a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapSearch {
    pub max_size: usize,
    /// All caps of size `max_size`, in lexicographic order.
    pub maxima: Vec<BitVec>,
}

/// Backtracking over points in index order, including before excluding, with
/// per-line occupancy limits. Branches that cannot reach the best size found
/// so far are cut.
pub fn max_caps(s: &IncidenceStructure) -> CapSearch {
    struct Search<'a> {
        s: &'a IncidenceStructure,
        limit: Vec<usize>,
        occupancy: Vec<usize>,
        current: BitVec,
        best: usize,
        maxima: Vec<BitVec>,
    }

    impl Search<'_> {
        fn run(&mut self, point: usize, size: usize) {
            let np = self.s.num_points();
            if size + (np - point) < self.best {
                return;
            }
            if point == np {
                if size > self.best {
                    self.best = size;
                    self.maxima.clear();
                }
                self.maxima.push(self.current.clone());
                return;
            }
            let through = &self.s.lines_through[point];
            if through.iter().all(|&l| self.occupancy[l as usize] < self.limit[l as usize]) {
                for &l in through {
                    self.occupancy[l as usize] += 1;
                }
                self.current.set(point, true);
                self.run(point + 1, size + 1);
                self.current.set(point, false);
                for &l in through {
                    self.occupancy[l as usize] -= 1;
                }
            }
            self.run(point + 1, size);
        }
    }

    let mut search = Search {
        s,
        limit: s.lines().iter().map(|l| l.len() / 2).collect(),
        occupancy: vec![0; s.num_lines()],
        current: BitVec::zeros(s.num_points()),
        best: 0,
        maxima: Vec::new(),
    };
    search.run(0, 0);
    CapSearch {
        max_size: search.best,
        maxima: search.maxima,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigJson {
    pub bits: String,
    pub lit: Vec<usize>,
}

impl From<&Configuration> for ConfigJson {
    fn from(c: &Configuration) -> Self {
        ConfigJson {
            bits: c.to_hex(),
            lit: c.lit_points().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub structure: String,
    pub order: u32,
    /// Largest cap size T.
    pub max_cap_size: usize,
    pub maximum_caps: usize,
    /// First maximum caps in lexicographic order.
    pub cap_examples: Vec<ConfigJson>,
    pub all_maxima_irreducible: bool,
    /// First maximum cap that some switch combination does reduce.
    pub reducible_maximum: Option<ConfigJson>,
    pub covering_radius: usize,
    pub cap_equals_covering_radius: bool,
    /// Lighting any unlit bulb of any maximum cap allows a one-line reduction.
    pub maxima_extensions_single_flip: bool,
    /// Same, for the worst-case witnesses of the covering radius.
    pub witness_extensions_single_flip: bool,
    pub witnesses: Vec<ConfigJson>,
    /// T equals the covering radius and every maximum cap is irreducible.
    pub conjecture_holds: bool,
}

impl ConjectureReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!(
            "{}: T = {} ({} maximum caps), covering radius {}\n",
            self.structure, self.max_cap_size, self.maximum_caps, self.covering_radius
        );
        out.push_str(&format!("irreducible: {}\n", yn(self.all_maxima_irreducible)));
        out.push_str(&format!("T equals covering radius: {}\n", yn(self.cap_equals_covering_radius)));
        out.push_str(&format!(
            "one extra bulb always reducible by one flip: {}\n",
            yn(self.maxima_extensions_single_flip && self.witness_extensions_single_flip)
        ));
        if let Some(c) = &self.reducible_maximum {
            out.push_str(&format!("reducible maximum cap: {} {:?}\n", c.bits, c.lit));
        }
        out.push_str(&format!("conjecture holds: {}\n", yn(self.conjecture_holds)));
        out
    }
}

fn extensions_single_flip(s: &IncidenceStructure, c: &Configuration) -> Result<bool> {
    for p in (0..s.num_points()).filter(|&p| !c.is_lit(p)) {
        if c.with_point_toggled(p).single_line_reduction(s)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the largest single-flip-immune configurations with the exact
/// worst case on an even-order plane or space.
pub fn conjecture_check(s: &IncidenceStructure, opts: &SearchOptions) -> Result<ConjectureReport> {
    let order = match (s.kind(), s.order()) {
        (Kind::Projective | Kind::Affine, Some(q)) if q % 2 == 0 => q,
        _ => {
            return Err(Error::Ineligible(format!(
                "{}: even order required",
                s.id()
            )))
        }
    };
    let analyzer = Analyzer::new(s, *opts)?;
    super::worst::check_feasible(&analyzer)?;
    let worst = analyzer.worst_case()?;
    let table = analyzer.table()?;
    let code = analyzer.code();

    let caps = max_caps(s);
    let dark = Configuration::dark(s);
    let maxima: Vec<Configuration> = caps.maxima.iter().map(|b| dark.with_bits(b.clone())).collect();

    let mut reducible_maximum = None;
    let mut maxima_ext = true;
    for c in &maxima {
        let syn = code.syndrome(c.bits()).expect("redundancy within cap");
        if reducible_maximum.is_none() && table.weight(syn) < c.lit_count() {
            reducible_maximum = Some(ConfigJson::from(c));
        }
        if maxima_ext && !extensions_single_flip(s, c)? {
            maxima_ext = false;
        }
    }
    let mut witness_ext = true;
    for w in &worst.witnesses {
        if !extensions_single_flip(s, w)? {
            witness_ext = false;
        }
    }

    let all_irreducible = reducible_maximum.is_none();
    let equal = caps.max_size == worst.covering_radius;
    Ok(ConjectureReport {
        structure: s.id(),
        order,
        max_cap_size: caps.max_size,
        maximum_caps: maxima.len(),
        cap_examples: maxima.iter().take(super::MAX_WITNESSES).map(ConfigJson::from).collect(),
        all_maxima_irreducible: all_irreducible,
        reducible_maximum,
        covering_radius: worst.covering_radius,
        cap_equals_covering_radius: equal,
        maxima_extensions_single_flip: maxima_ext,
        witness_extensions_single_flip: witness_ext,
        witnesses: worst.witnesses.iter().map(ConfigJson::from).collect(),
        conjecture_holds: all_irreducible && equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{affine_space, grid_board, projective_space};
    use crate::gf::make_field;

    #[test]
    fn fano_caps_are_single_points() {
        // Lines of size 3 allow one lit bulb each, and any two points share a line.
        let s = projective_space(&make_field(2, 1).unwrap(), 2).unwrap();
        let caps = max_caps(&s);
        assert_eq!(caps.max_size, 1);
        assert_eq!(caps.maxima.len(), 7);
    }

    #[test]
    fn pg24_caps_are_hyperovals() {
        let s = projective_space(&make_field(2, 2).unwrap(), 2).unwrap();
        let caps = max_caps(&s);
        assert_eq!(caps.max_size, 6);
        assert_eq!(caps.maxima.len(), 168);
        for cap in &caps.maxima {
            for l in 0..s.num_lines() {
                let k = cap.and_count(s.line_bits(l));
                assert!(k == 0 || k == 2);
            }
        }
        assert!(caps.maxima.windows(2).all(|w| w[0].lex_cmp(&w[1]).is_lt()));
    }

    #[test]
    fn rejects_odd_order_and_grids() {
        let s = projective_space(&make_field(3, 1).unwrap(), 2).unwrap();
        let err = conjecture_check(&s, &SearchOptions::default()).unwrap_err();
        assert!(err.to_string().contains("even order required"));
        let g = grid_board(4).unwrap();
        assert!(conjecture_check(&g, &SearchOptions::default()).is_err());
    }

    #[test]
    fn ag22_compares_cap_with_radius() {
        let s = affine_space(&make_field(2, 1).unwrap(), 2).unwrap();
        let r = conjecture_check(&s, &SearchOptions::default()).unwrap();
        assert_eq!(r.max_cap_size, 1);
        assert_eq!(r.covering_radius, 1);
        assert!(r.cap_equals_covering_radius);
        assert!(r.all_maxima_irreducible);
    }
}

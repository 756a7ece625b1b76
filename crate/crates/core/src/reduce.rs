//! Constructive reductions.
//!
//! * Fano plane: flip any line holding at least two lit bulbs.
//! * Pair elimination, for spaces where every point lies on an even number
//!   `N` of lines: to switch off lit bulbs `a` and `b`, flip every line
//!   through `a` and every line through `b` except the line `ab`. Each of
//!   `a`, `b` is toggled `N - 1` times, the rest of `ab` is untouched, and
//!   any other point is toggled once from each side.
//! * Single-bulb elimination in affine planes of odd order `q`: let `L` be
//!   a line through lit `a` and `M` another. Flip the `q` lines through `a`
//!   other than `L`, then for each of the `q - 1` points of `M \ {a}` the
//!   line through it parallel to `L`. Those `q - 1` lines are exactly the
//!   rest of `L`'s parallel class, so every point off `L` is toggled twice,
//!   points of `L \ {a}` not at all, and `a` itself `q` times.

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::game::{Configuration, ConfigurationRecord, SwitchPlan};
use crate::geometry::{IncidenceStructure, Kind};
use crate::search::Analyzer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// One line with at least two lit bulbs in PG(2,2).
    FanoLine,
    /// Two lit bulbs switched off, nothing else changed.
    PairElimination,
    /// One lit bulb switched off in an odd-order affine plane.
    AffineSingle,
    /// Jump to a minimum-weight member of the coset, found by exact search.
    CosetMinimum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: Rule,
    /// Bulbs the step switches off.
    pub extinguished: Vec<usize>,
    /// Bulbs the step switches on. Empty for pair and affine steps.
    pub lit: Vec<usize>,
    pub plan: SwitchPlan,
}

impl ReductionStep {
    fn from_effect(rule: Rule, before: &Configuration, after: &Configuration, plan: SwitchPlan) -> Self {
        let changed = before.bits().xor(after.bits());
        let (extinguished, lit) = changed.iter_ones().partition(|&p| before.is_lit(p));
        ReductionStep {
            rule,
            extinguished,
            lit,
            plan,
        }
    }

    /// Bits the step flips.
    pub fn changed(&self, num_points: usize) -> BitVec {
        BitVec::from_indices(num_points, self.extinguished.iter().chain(&self.lit).copied())
    }
}

fn is_fano(s: &IncidenceStructure) -> bool {
    s.kind() == Kind::Projective && s.order() == Some(2) && s.dimension() == 2
}

/// Pair elimination needs unique joining lines and an even number of lines
/// through every point.
pub fn pair_eligible(s: &IncidenceStructure) -> bool {
    matches!(s.kind(), Kind::Projective | Kind::Affine)
        && s.uniform_point_degree().is_some_and(|n| n % 2 == 0)
}

pub fn affine_eligible(s: &IncidenceStructure) -> bool {
    s.kind() == Kind::Affine
        && s.dimension() == 2
        && s.order().is_some_and(|q| q % 2 == 1)
        && s.parallel_class_of().is_some()
}

/// Flips the lowest-index line holding at least two lit bulbs.
pub fn reduce_fano_step(s: &IncidenceStructure, c: &Configuration) -> Result<ReductionStep> {
    if !is_fano(s) {
        return Err(Error::Ineligible(format!("{} is not the Fano plane", s.id())));
    }
    if c.lit_count() < 2 {
        return Err(Error::Ineligible(format!(
            "{} lit bulb(s); the Fano step needs at least 2",
            c.lit_count()
        )));
    }
    let line = (0..s.num_lines())
        .find(|&l| c.bits().and_count(s.line_bits(l)) >= 2)
        .ok_or_else(|| Error::Verification("no line holds two lit bulbs".into()))?;
    let plan = SwitchPlan::from_lines(s, [line])?;
    let after = c.apply_plan(s, &plan)?;
    if after.lit_count() >= c.lit_count() {
        return Err(Error::Verification(format!("line {line} did not reduce the board")));
    }
    Ok(ReductionStep::from_effect(Rule::FanoLine, c, &after, plan))
}

/// Switches off lit bulbs `a` and `b` without touching anything else.
pub fn reduce_pair_step(s: &IncidenceStructure, c: &Configuration, a: usize, b: usize) -> Result<ReductionStep> {
    if !pair_eligible(s) {
        return Err(Error::Ineligible(format!(
            "{} does not have an even number of lines through each point",
            s.id()
        )));
    }
    if a == b {
        return Err(Error::InvalidInput("pair step needs two distinct bulbs".into()));
    }
    for p in [a, b] {
        if p >= s.num_points() {
            return Err(Error::IndexOutOfRange {
                index: p,
                size: s.num_points(),
            });
        }
        if !c.is_lit(p) {
            return Err(Error::Unlit(p));
        }
    }
    if s.line_through(a, b)?.is_none() {
        return Err(Error::Verification(format!("points {a} and {b} have no unique joining line")));
    }
    // The joining line appears in both lists and cancels.
    let through = s.lines_through(a)?.iter().chain(s.lines_through(b)?);
    let plan = SwitchPlan::from_lines(s, through.map(|&l| l as usize))?;
    surgical(s, c, plan, &[a, b], Rule::PairElimination)
}

/// Switches off lit bulb `a` in an affine plane of odd order.
pub fn reduce_affine_step(s: &IncidenceStructure, c: &Configuration, a: usize) -> Result<ReductionStep> {
    if s.kind() != Kind::Affine {
        return Err(Error::NotAffine);
    }
    if !affine_eligible(s) {
        return Err(Error::Ineligible(format!(
            "{}: single-bulb elimination needs an affine plane of odd order",
            s.id()
        )));
    }
    if a >= s.num_points() {
        return Err(Error::IndexOutOfRange {
            index: a,
            size: s.num_points(),
        });
    }
    if !c.is_lit(a) {
        return Err(Error::Unlit(a));
    }
    let through = s.lines_through(a)?;
    let kept = through[0] as usize;
    let first_flipped = through[1] as usize;
    let mut lines: Vec<usize> = through[1..].iter().map(|&l| l as usize).collect();
    for &p in s.line(first_flipped)? {
        let p = p as usize;
        if p != a {
            lines.push(s.parallel_line_through(p, kept)?);
        }
    }
    let plan = SwitchPlan::from_lines(s, lines)?;
    surgical(s, c, plan, &[a], Rule::AffineSingle)
}

fn surgical(
    s: &IncidenceStructure,
    c: &Configuration,
    plan: SwitchPlan,
    targets: &[usize],
    rule: Rule,
) -> Result<ReductionStep> {
    let after = c.apply_plan(s, &plan)?;
    let changed = c.bits().xor(after.bits());
    if changed != BitVec::from_indices(s.num_points(), targets.iter().copied()) {
        return Err(Error::Verification(format!(
            "{rule:?} plan changed {changed:?} instead of exactly {targets:?}"
        )));
    }
    Ok(ReductionStep {
        rule,
        extinguished: targets.to_vec(),
        lit: Vec::new(),
        plan,
    })
}

/// Which constructive rule drives [`reduce_to_floor`] on a structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloorStrategy {
    Fano,
    Affine,
    Pairs,
}

pub fn floor_strategy(s: &IncidenceStructure) -> Option<FloorStrategy> {
    if is_fano(s) {
        Some(FloorStrategy::Fano)
    } else if affine_eligible(s) {
        Some(FloorStrategy::Affine)
    } else if pair_eligible(s) {
        Some(FloorStrategy::Pairs)
    } else {
        None
    }
}

/// Applies constructive steps until none applies. Lit points are consumed in
/// ascending order.
pub fn reduce_to_floor(s: &IncidenceStructure, c: &Configuration) -> Result<(Configuration, Vec<ReductionStep>)> {
    let strategy = floor_strategy(s).ok_or_else(|| {
        Error::Ineligible(format!(
            "no constructive reduction for {}; use exact search instead",
            s.id()
        ))
    })?;
    let mut current = c.clone();
    let mut steps = Vec::new();
    loop {
        let lit_now: Vec<usize> = current.lit_points().take(2).collect();
        let mut lit = lit_now.into_iter();
        let step = match strategy {
            FloorStrategy::Fano if current.lit_count() >= 2 => reduce_fano_step(s, &current)?,
            FloorStrategy::Affine => match lit.next() {
                Some(a) => reduce_affine_step(s, &current, a)?,
                None => break,
            },
            FloorStrategy::Pairs => match (lit.next(), lit.next()) {
                (Some(a), Some(b)) => reduce_pair_step(s, &current, a, b)?,
                _ => break,
            },
            FloorStrategy::Fano => break,
        };
        current = current.apply_plan(s, &step.plan)?;
        steps.push(step);
    }
    Ok((current, steps))
}

/// One jump to the lexicographically least minimum-weight member of the
/// coset, when that lowers the lit count. Works on any structure the exact
/// search can handle.
pub fn reduce_by_search(analyzer: &Analyzer<'_>, c: &Configuration) -> Result<(Configuration, Vec<ReductionStep>)> {
    let s = analyzer.structure();
    let min = analyzer.coset_min_weight(c)?;
    if min.weight >= c.lit_count() {
        return Ok((c.clone(), Vec::new()));
    }
    let plan = analyzer
        .code()
        .express(&c.bits().xor(min.minimizer.bits()))
        .ok_or_else(|| Error::Verification("minimizer is not in the coset".into()))?;
    let after = c.apply_plan(s, &plan)?;
    if after != min.minimizer {
        return Err(Error::Verification("expressed plan misses the minimizer".into()));
    }
    let step = ReductionStep::from_effect(Rule::CosetMinimum, c, &after, plan);
    Ok((after, vec![step]))
}

/// A replayable record of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub structure: String,
    pub initial: ConfigurationRecord,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final")]
    pub final_config: ConfigurationRecord,
    pub initial_lit: usize,
    pub final_lit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub rule: Rule,
    pub extinguished: Vec<usize>,
    pub lit: Vec<usize>,
    pub lines: Vec<usize>,
}

impl Certificate {
    pub fn new(initial: &Configuration, steps: &[ReductionStep], final_config: &Configuration) -> Self {
        Certificate {
            structure: initial.structure_id().to_string(),
            initial: initial.to_record(),
            steps: steps
                .iter()
                .map(|st| StepRecord {
                    rule: st.rule,
                    extinguished: st.extinguished.clone(),
                    lit: st.lit.clone(),
                    lines: st.plan.lines().collect(),
                })
                .collect(),
            final_config: final_config.to_record(),
            initial_lit: initial.lit_count(),
            final_lit: final_config.lit_count(),
        }
    }

    /// Replays every step and checks that each flips exactly the bulbs it
    /// claims and that the run ends at the recorded final configuration.
    pub fn replay(&self, s: &IncidenceStructure) -> Result<Configuration> {
        let mut current = self.initial.clone().into_configuration(s)?;
        if current.lit_count() != self.initial_lit {
            return Err(Error::Verification("recorded initial lit count disagrees".into()));
        }
        for (i, step) in self.steps.iter().enumerate() {
            let plan = SwitchPlan::from_lines(s, step.lines.iter().copied())?;
            let next = current.apply_plan(s, &plan)?;
            let changed = current.bits().xor(next.bits());
            let claimed = BitVec::from_indices(s.num_points(), step.extinguished.iter().chain(&step.lit).copied());
            let directions_ok = step.extinguished.iter().all(|&p| current.is_lit(p))
                && step.lit.iter().all(|&p| !current.is_lit(p));
            if changed != claimed || !directions_ok {
                return Err(Error::Verification(format!("step {i} does not match its recorded effect")));
            }
            current = next;
        }
        let expected = self.final_config.clone().into_configuration(s)?;
        if current != expected {
            return Err(Error::Verification("replay ends at a different configuration".into()));
        }
        if current.lit_count() != self.final_lit {
            return Err(Error::Verification("recorded final lit count disagrees".into()));
        }
        Ok(current)
    }
}

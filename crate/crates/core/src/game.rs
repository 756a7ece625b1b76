//! Rules of play: which bulbs are lit, and what flipping switches does.

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::geometry::IncidenceStructure;

/// Lit bulbs on a particular structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    bits: BitVec,
    structure_id: String,
}

/// A set of switches to flip. Only the parity of each switch matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwitchPlan {
    lines: BitVec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Configuration {
    pub fn dark(s: &IncidenceStructure) -> Self {
        Configuration {
            bits: BitVec::zeros(s.num_points()),
            structure_id: s.id(),
        }
    }

    pub fn all_lit(s: &IncidenceStructure) -> Self {
        Configuration {
            bits: BitVec::ones(s.num_points()),
            structure_id: s.id(),
        }
    }

    pub fn from_bits(s: &IncidenceStructure, bits: BitVec) -> Result<Self> {
        if bits.len() != s.num_points() {
            return Err(Error::InvalidInput(format!(
                "configuration has {} bits, {} has {} points",
                bits.len(),
                s.id(),
                s.num_points()
            )));
        }
        Ok(Configuration {
            bits,
            structure_id: s.id(),
        })
    }

    pub fn from_lit<I: IntoIterator<Item = usize>>(s: &IncidenceStructure, lit: I) -> Result<Self> {
        let mut bits = BitVec::zeros(s.num_points());
        for p in lit {
            if p >= s.num_points() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    size: s.num_points(),
                });
            }
            bits.set(p, true);
        }
        Ok(Configuration {
            bits,
            structure_id: s.id(),
        })
    }

    pub fn from_hex(s: &IncidenceStructure, hex: &str) -> Result<Self> {
        Self::from_bits(s, BitVec::from_hex(s.num_points(), hex)?)
    }

    pub fn to_hex(&self) -> String {
        self.bits.to_hex()
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn structure_id(&self) -> &str {
        &self.structure_id
    }

    pub fn lit_count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_lit(&self, point: usize) -> bool {
        self.bits.get(point)
    }

    pub fn lit_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Same structure, different bits.
    pub fn with_bits(&self, bits: BitVec) -> Self {
        assert_eq!(bits.len(), self.bits.len());
        Configuration {
            bits,
            structure_id: self.structure_id.clone(),
        }
    }

    pub fn with_point_toggled(&self, point: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.flip(point);
        self.with_bits(bits)
    }

    fn check_structure(&self, s: &IncidenceStructure) -> Result<()> {
        if self.bits.len() != s.num_points() || self.structure_id != s.id() {
            return Err(Error::StructureMismatch {
                expected: s.id(),
                found: self.structure_id.clone(),
            });
        }
        Ok(())
    }

    /// Flips one switch.
    pub fn toggle(&self, s: &IncidenceStructure, line: usize) -> Result<Self> {
        self.check_structure(s)?;
        s.line(line)?;
        Ok(self.with_bits(self.bits.xor(s.line_bits(line))))
    }

    pub fn apply_plan(&self, s: &IncidenceStructure, plan: &SwitchPlan) -> Result<Self> {
        self.check_structure(s)?;
        plan.check(s)?;
        let mut bits = self.bits.clone();
        for l in plan.lines() {
            bits.xor_assign(s.line_bits(l));
        }
        Ok(self.with_bits(bits))
    }

    /// Whether the plan leaves strictly fewer bulbs lit.
    pub fn is_reduced_by(&self, s: &IncidenceStructure, plan: &SwitchPlan) -> Result<bool> {
        Ok(self.apply_plan(s, plan)?.lit_count() < self.lit_count())
    }

    pub fn parity(&self) -> Parity {
        if self.lit_count().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Lowest-index line whose flip alone reduces the lit count, i.e. a line
    /// with more than half of its bulbs lit.
    pub fn single_line_reduction(&self, s: &IncidenceStructure) -> Result<Option<usize>> {
        self.check_structure(s)?;
        Ok((0..s.num_lines()).find(|&l| {
            let lit = self.bits.and_count(s.line_bits(l));
            2 * lit > s.lines()[l].len()
        }))
    }

    pub fn to_record(&self) -> ConfigurationRecord {
        ConfigurationRecord {
            structure: self.structure_id.clone(),
            num_points: self.bits.len(),
            bits: self.to_hex(),
        }
    }
}

/// Serialized form: structure id plus little-endian hex bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationRecord {
    pub structure: String,
    pub num_points: usize,
    pub bits: String,
}

impl ConfigurationRecord {
    pub fn into_configuration(self, s: &IncidenceStructure) -> Result<Configuration> {
        if self.structure != s.id() || self.num_points != s.num_points() {
            return Err(Error::StructureMismatch {
                expected: s.id(),
                found: self.structure,
            });
        }
        Configuration::from_hex(s, &self.bits)
    }
}

impl SwitchPlan {
    pub fn empty(s: &IncidenceStructure) -> Self {
        SwitchPlan {
            lines: BitVec::zeros(s.num_lines()),
        }
    }

    /// Lines listed more than once cancel in pairs.
    pub fn from_lines<I: IntoIterator<Item = usize>>(s: &IncidenceStructure, lines: I) -> Result<Self> {
        let mut bits = BitVec::zeros(s.num_lines());
        for l in lines {
            if l >= s.num_lines() {
                return Err(Error::IndexOutOfRange {
                    index: l,
                    size: s.num_lines(),
                });
            }
            bits.flip(l);
        }
        Ok(SwitchPlan { lines: bits })
    }

    pub fn from_bits(bits: BitVec) -> Self {
        SwitchPlan { lines: bits }
    }

    pub fn bits(&self) -> &BitVec {
        &self.lines
    }

    /// Lines flipped an odd number of times, ascending.
    pub fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.lines.iter_ones()
    }

    pub fn len(&self) -> usize {
        self.lines.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_zero()
    }

    /// Plan equivalent to running both plans.
    pub fn then(&self, other: &SwitchPlan) -> SwitchPlan {
        SwitchPlan {
            lines: self.lines.xor(&other.lines),
        }
    }

    fn check(&self, s: &IncidenceStructure) -> Result<()> {
        if self.lines.len() != s.num_lines() {
            return Err(Error::InvalidInput(format!(
                "plan covers {} lines, {} has {}",
                self.lines.len(),
                s.id(),
                s.num_lines()
            )));
        }
        Ok(())
    }
}

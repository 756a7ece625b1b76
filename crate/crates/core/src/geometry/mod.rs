//! Incidence structures used as game boards: the square grid, and projective
//! and affine spaces over a finite field with lines as switches.

mod axioms;
mod build;
mod io;

pub use axioms::{verify_axioms, AxiomCheck, AxiomReport};
pub use build::{affine_space, grid_board, projective_space, MAX_GRID_SIDE, MAX_POINTS};
pub use io::{parse_incidence_text, StructureRecord};

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Grid,
    Projective,
    Affine,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Grid => "grid",
            Kind::Projective => "projective",
            Kind::Affine => "affine",
        })
    }
}

/// Points, lines, and incidence. Lines are sorted point-index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    kind: Kind,
    order: Option<u32>,
    dimension: u32,
    side: Option<u32>,
    num_points: usize,
    lines: Vec<Vec<u32>>,
    point_labels: Vec<String>,
    parallel_class_of: Option<Vec<u32>>,
    // derived from `lines`
    pub(crate) lines_through: Vec<Vec<u32>>,
    line_bits: Vec<BitVec>,
}

impl IncidenceStructure {
    /// Assembles a structure from raw parts. Point indices must be in range;
    /// each line is sorted and deduplicated, but no axiom is enforced here
    /// (see [`verify_axioms`]).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        kind: Kind,
        order: Option<u32>,
        dimension: u32,
        side: Option<u32>,
        num_points: usize,
        mut lines: Vec<Vec<u32>>,
        point_labels: Option<Vec<String>>,
        parallel_class_of: Option<Vec<u32>>,
    ) -> Result<Self> {
        for line in &mut lines {
            line.sort_unstable();
            line.dedup();
            if let Some(&bad) = line.iter().find(|&&p| p as usize >= num_points) {
                return Err(Error::IndexOutOfRange {
                    index: bad as usize,
                    size: num_points,
                });
            }
        }
        if let Some(classes) = &parallel_class_of {
            if classes.len() != lines.len() {
                return Err(Error::InvalidInput(format!(
                    "{} parallel class entries for {} lines",
                    classes.len(),
                    lines.len()
                )));
            }
        }
        let point_labels = match point_labels {
            Some(labels) if labels.len() != num_points => {
                return Err(Error::InvalidInput(format!(
                    "{} labels for {} points",
                    labels.len(),
                    num_points
                )))
            }
            Some(labels) => labels,
            None => (0..num_points).map(|i| i.to_string()).collect(),
        };

        let mut lines_through = vec![Vec::new(); num_points];
        for (li, line) in lines.iter().enumerate() {
            for &p in line {
                lines_through[p as usize].push(li as u32);
            }
        }
        let line_bits = lines
            .iter()
            .map(|l| BitVec::from_indices(num_points, l.iter().map(|&p| p as usize)))
            .collect();

        Ok(IncidenceStructure {
            kind,
            order,
            dimension,
            side,
            num_points,
            lines,
            point_labels,
            parallel_class_of,
            lines_through,
            line_bits,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Field order `q`; `None` for grids.
    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Side length, grids only.
    pub fn side(&self) -> Option<u32> {
        self.side
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> Result<&[u32]> {
        self.lines
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index,
                size: self.lines.len(),
            })
    }

    /// Characteristic vector of a line over the points.
    pub fn line_bits(&self, index: usize) -> &BitVec {
        &self.line_bits[index]
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn parallel_class_of(&self) -> Option<&[u32]> {
        self.parallel_class_of.as_deref()
    }

    /// Sorted indices of the lines through `point`.
    pub fn lines_through(&self, point: usize) -> Result<&[u32]> {
        self.lines_through
            .get(point)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: point,
                size: self.num_points,
            })
    }

    /// Lines containing both points, in index order.
    pub fn common_lines(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let la = self.lines_through(a)?;
        let lb = self.lines_through(b)?;
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < la.len() && j < lb.len() {
            match la[i].cmp(&lb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(la[i] as usize);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    /// The unique line through two distinct points, when it exists.
    pub fn line_through(&self, a: usize, b: usize) -> Result<Option<usize>> {
        let common = self.common_lines(a, b)?;
        Ok(match common.as_slice() {
            [l] => Some(*l),
            _ => None,
        })
    }

    pub fn line_contains(&self, line: usize, point: usize) -> bool {
        self.lines[line].binary_search(&(point as u32)).is_ok()
    }

    /// True when every line has an even number of points, which makes the
    /// parity of the lit count invariant under play.
    pub fn all_lines_even(&self) -> bool {
        self.lines.iter().all(|l| l.len() % 2 == 0)
    }

    /// Number of lines through each point when that number is uniform.
    pub fn uniform_point_degree(&self) -> Option<usize> {
        let first = self.lines_through.first()?.len();
        self.lines_through
            .iter()
            .all(|l| l.len() == first)
            .then_some(first)
    }

    /// Stable identifier such as `PG(2,4)`, `AG(2,3)` or `grid(10)`.
    pub fn id(&self) -> String {
        match self.kind {
            Kind::Grid => format!("grid({})", self.side.unwrap_or(0)),
            Kind::Projective => format!("PG({},{})", self.dimension, self.order.unwrap_or(0)),
            Kind::Affine => format!("AG({},{})", self.dimension, self.order.unwrap_or(0)),
        }
    }

    /// Lines grouped by parallel class, affine structures only.
    pub fn parallel_classes(&self) -> Result<Vec<Vec<usize>>> {
        let classes = self.parallel_class_of.as_ref().ok_or(Error::NotAffine)?;
        let count = classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (li, &c) in classes.iter().enumerate() {
            out[c as usize].push(li);
        }
        Ok(out)
    }

    /// The line through `point` parallel to `line`.
    pub fn parallel_line_through(&self, point: usize, line: usize) -> Result<usize> {
        if self.kind != Kind::Affine {
            return Err(Error::NotAffine);
        }
        let classes = self.parallel_class_of.as_ref().ok_or(Error::NotAffine)?;
        self.line(line)?;
        if self.line_contains(line, point) {
            return Err(Error::PointOnLine { point, line });
        }
        let class = classes[line];
        self.lines_through(point)?
            .iter()
            .map(|&l| l as usize)
            .find(|&l| classes[l] == class)
            .ok_or_else(|| {
                Error::Verification(format!(
                    "no line through point {point} in the parallel class of line {line}"
                ))
            })
    }
}

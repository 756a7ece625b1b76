//! Exchange formats for incidence structures.
//!
//! Text: a header line `<num_points> <num_lines>` followed by one line per
//! geometric line with its sorted point indices separated by single spaces.
//! Every line ends with `\n`.

use serde::{Deserialize, Serialize};

use super::{IncidenceStructure, Kind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub id: String,
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u32>,
    pub dimension: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    pub num_points: usize,
    pub num_lines: usize,
    pub lines: Vec<Vec<u32>>,
    pub point_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parallel_class_of: Option<Vec<u32>>,
}

impl IncidenceStructure {
    pub fn to_record(&self) -> StructureRecord {
        StructureRecord {
            id: self.id(),
            kind: self.kind,
            order: self.order,
            dimension: self.dimension,
            n: self.side,
            num_points: self.num_points,
            num_lines: self.lines.len(),
            lines: self.lines.clone(),
            point_labels: self.point_labels.clone(),
            parallel_class_of: self.parallel_class_of.clone(),
        }
    }

    pub fn from_record(r: StructureRecord) -> Result<Self> {
        if r.lines.len() != r.num_lines {
            return Err(Error::InvalidInput(format!(
                "record lists {} lines but declares {}",
                r.lines.len(),
                r.num_lines
            )));
        }
        IncidenceStructure::from_parts(
            r.kind,
            r.order,
            r.dimension,
            r.n,
            r.num_points,
            r.lines,
            Some(r.point_labels),
            r.parallel_class_of,
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_record()).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn to_incidence_text(&self) -> String {
        let mut out = format!("{} {}\n", self.num_points, self.lines.len());
        for line in &self.lines {
            let parts: Vec<String> = line.iter().map(u32::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses the text format into `(num_points, lines)`.
pub fn parse_incidence_text(text: &str) -> Result<(usize, Vec<Vec<u32>>)> {
    let mut rows = text.lines();
    let header = rows
        .next()
        .ok_or_else(|| Error::InvalidInput("empty incidence text".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidInput(format!("bad header {header:?}: {e}")))?;
    let [num_points, num_lines] = nums[..] else {
        return Err(Error::InvalidInput(format!("bad header {header:?}")));
    };
    let lines: Vec<Vec<u32>> = rows
        .map(|row| {
            row.split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidInput(format!("bad line {row:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if lines.len() != num_lines {
        return Err(Error::InvalidInput(format!(
            "header declares {num_lines} lines, found {}",
            lines.len()
        )));
    }
    Ok((num_points, lines))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{affine_space, projective_space};
    use crate::gf::make_field;

    #[test]
    fn fano_text_export() {
        let s = projective_space(&make_field(2, 1).unwrap(), 2).unwrap();
        let text = s.to_incidence_text();
        assert!(text.starts_with("7 7\n0 1 2\n"));
        assert_eq!(text.lines().count(), 8);
        let (np, lines) = parse_incidence_text(&text).unwrap();
        assert_eq!(np, 7);
        assert_eq!(lines, s.lines());
    }

    #[test]
    fn json_round_trip_keeps_parallel_classes() {
        let s = affine_space(&make_field(2, 2).unwrap(), 2).unwrap();
        let json = s.to_json();
        let record: StructureRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(record.kind, Kind::Affine);
        assert_eq!(record.num_lines, 20);
        assert_eq!(IncidenceStructure::from_record(record).unwrap(), s);
    }

    #[test]
    fn text_rejects_short_bodies() {
        assert!(parse_incidence_text("3 2\n0 1\n").is_err());
        assert!(parse_incidence_text("").is_err());
        assert!(parse_incidence_text("3\n").is_err());
    }
}

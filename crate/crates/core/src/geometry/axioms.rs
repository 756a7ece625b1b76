use serde::Serialize;

use super::{IncidenceStructure, Kind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// First counterexample found, on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub structure: String,
    pub num_points: usize,
    pub num_lines: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} points, {} lines\n",
            self.structure, self.num_points, self.num_lines
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name
            ));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!(": {ce}"));
            }
            out.push('\n');
        }
        out
    }
}

struct Checks(Vec<AxiomCheck>);

impl Checks {
    fn push(&mut self, name: &str, counterexample: Option<String>) {
        self.0.push(AxiomCheck {
            name: name.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }

    fn expect_eq(&mut self, name: &str, found: usize, expected: usize) {
        let ce = (found != expected).then(|| format!("found {found}, expected {expected}"));
        self.push(name, ce);
    }
}

struct Expected {
    points: usize,
    lines: usize,
    line_size: usize,
    point_degree: usize,
}

fn expected_counts(s: &IncidenceStructure) -> Option<Expected> {
    let d = s.dimension();
    match s.kind() {
        Kind::Grid => {
            let n = s.side()? as usize;
            Some(Expected {
                points: n * n,
                lines: 2 * n,
                line_size: n,
                point_degree: 2,
            })
        }
        Kind::Projective | Kind::Affine => {
            let q = s.order()? as usize;
            if q < 2 {
                return None;
            }
            // (q^d - 1)/(q - 1) lines through a point in either geometry.
            let degree = (0..d).map(|i| q.pow(i)).sum::<usize>();
            if s.kind() == Kind::Projective {
                let points = degree + q.pow(d);
                Some(Expected {
                    points,
                    lines: points * degree / (q + 1),
                    line_size: q + 1,
                    point_degree: degree,
                })
            } else {
                let points = q.pow(d);
                Some(Expected {
                    points,
                    lines: points * degree / q,
                    line_size: q,
                    point_degree: degree,
                })
            }
        }
    }
}

/// Checks the incidence axioms for the structure's kind and reports each one
/// with the first counterexample on failure.
pub fn verify_axioms(s: &IncidenceStructure) -> AxiomReport {
    let mut checks = Checks(Vec::new());
    let np = s.num_points();
    let expected = expected_counts(s);

    if let Some(e) = &expected {
        checks.expect_eq("point count", np, e.points);
        checks.expect_eq("line count", s.num_lines(), e.lines);
        let bad_line = s
            .lines()
            .iter()
            .enumerate()
            .find(|(_, l)| l.len() != e.line_size)
            .map(|(i, l)| format!("line {i} has {} points, expected {}", l.len(), e.line_size));
        checks.push("points per line", bad_line);
        let bad_point = (0..np)
            .map(|p| (p, s.lines_through[p].len()))
            .find(|&(_, deg)| deg != e.point_degree)
            .map(|(p, deg)| format!("point {p} lies on {deg} lines, expected {}", e.point_degree));
        checks.push("lines per point", bad_point);
    }

    let size_sum: usize = s.lines().iter().map(Vec::len).sum();
    let double_count = match s.uniform_point_degree() {
        Some(deg) if size_sum == np * deg => None,
        Some(deg) => Some(format!("sum of line sizes {size_sum} != {np} x {deg}")),
        None => Some("lines per point is not uniform".to_string()),
    };
    checks.push("double counting", double_count);

    let pair_check = pair_incidence(s);
    match s.kind() {
        Kind::Grid => checks.push(
            "two points share at most one line",
            pair_check.first_above(1),
        ),
        Kind::Projective | Kind::Affine => checks.push(
            "two points lie on exactly one line",
            pair_check.first_above(1).or_else(|| pair_check.first_zero()),
        ),
    }

    if s.kind() == Kind::Projective {
        if let Some(q) = s.order().filter(|q| q % 2 == 1) {
            let odd = (0..np)
                .find(|&p| s.lines_through[p].len() % 2 == 1)
                .map(|p| format!("point {p} lies on {} lines (q = {q})", s.lines_through[p].len()));
            checks.push("even number of lines through each point", odd);
        }
    }

    if s.kind() == Kind::Affine {
        verify_parallel_classes(s, expected.as_ref(), &mut checks);
    }

    AxiomReport {
        structure: s.id(),
        num_points: np,
        num_lines: s.num_lines(),
        checks: checks.0,
    }
}

struct PairCounts {
    np: usize,
    counts: Vec<u8>,
}

impl PairCounts {
    fn first_above(&self, limit: u8) -> Option<String> {
        self.find(|c| c > limit).map(|(a, b, c)| {
            format!("points {a} and {b} lie on {c} common lines")
        })
    }

    fn first_zero(&self) -> Option<String> {
        self.find(|c| c == 0)
            .map(|(a, b, _)| format!("points {a} and {b} lie on no common line"))
    }

    fn find(&self, pred: impl Fn(u8) -> bool) -> Option<(usize, usize, u8)> {
        for a in 0..self.np {
            for b in a + 1..self.np {
                let c = self.counts[a * self.np + b];
                if pred(c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }
}

fn pair_incidence(s: &IncidenceStructure) -> PairCounts {
    let np = s.num_points();
    let mut counts = vec![0u8; np * np];
    for line in s.lines() {
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                let slot = &mut counts[a as usize * np + b as usize];
                *slot = slot.saturating_add(1);
            }
        }
    }
    PairCounts { np, counts }
}

fn verify_parallel_classes(s: &IncidenceStructure, expected: Option<&Expected>, checks: &mut Checks) {
    let Ok(classes) = s.parallel_classes() else {
        checks.push("parallel classes present", Some("no parallel class data".into()));
        return;
    };
    let np = s.num_points();
    if let Some(e) = expected {
        checks.expect_eq("parallel class count", classes.len(), e.point_degree);
    }
    let mut partition = None;
    for (ci, class) in classes.iter().enumerate() {
        let mut hits = vec![0u32; np];
        for &l in class {
            for &p in &s.lines()[l] {
                hits[p as usize] += 1;
            }
        }
        if let Some(p) = hits.iter().position(|&h| h != 1) {
            partition = Some(format!(
                "class {ci} covers point {p} {} times",
                hits[p]
            ));
            break;
        }
    }
    checks.push("each parallel class partitions the points", partition);

    // Playfair: through a point off a line there is exactly one disjoint line.
    if s.dimension() == 2 {
        let mut bad = None;
        'outer: for l in 0..s.num_lines() {
            for p in (0..np).filter(|&p| !s.line_contains(l, p)) {
                let disjoint: Vec<u32> = s.lines_through[p]
                    .iter()
                    .copied()
                    .filter(|&m| s.line_bits(m as usize).and_count(s.line_bits(l)) == 0)
                    .collect();
                if disjoint.len() != 1 {
                    bad = Some(format!(
                        "point {p} has {} lines disjoint from line {l}",
                        disjoint.len()
                    ));
                    break 'outer;
                }
                let class_of = s.parallel_class_of().unwrap();
                if class_of[disjoint[0] as usize] != class_of[l] {
                    bad = Some(format!(
                        "line {} is disjoint from line {l} but in another class",
                        disjoint[0]
                    ));
                    break 'outer;
                }
            }
        }
        checks.push("unique parallel through each outside point", bad);
    }
}

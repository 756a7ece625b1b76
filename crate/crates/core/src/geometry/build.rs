use super::{IncidenceStructure, Kind};
use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// Largest point count any constructed structure may have.
pub const MAX_POINTS: u64 = 4096;
pub const MAX_GRID_SIDE: u32 = 32;

/// The n×n board: points row-major, lines are the rows then the columns.
pub fn grid_board(n: u32) -> Result<IncidenceStructure> {
    if !(1..=MAX_GRID_SIDE).contains(&n) {
        return Err(Error::GridSize(n));
    }
    let n_us = n as usize;
    let mut lines = Vec::with_capacity(2 * n_us);
    for r in 0..n {
        lines.push((0..n).map(|c| r * n + c).collect());
    }
    for c in 0..n {
        lines.push((0..n).map(|r| r * n + c).collect());
    }
    let labels = (0..n_us * n_us)
        .map(|i| format!("({},{})", i / n_us, i % n_us))
        .collect();
    IncidenceStructure::from_parts(Kind::Grid, None, 2, Some(n), n_us * n_us, lines, Some(labels), None)
}

fn check_dimension(d: u32) -> Result<()> {
    if d >= 2 && d.is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(d))
    }
}

fn projective_point_count(q: u64, d: u32) -> Option<u64> {
    // 1 + q + ... + q^d
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for _ in 0..=d {
        total = total.checked_add(term)?;
        term = term.checked_mul(q)?;
    }
    Some(total)
}

struct ProjectiveFrame {
    /// Canonical representatives in enumeration order.
    points: Vec<Vec<usize>>,
    lines: Vec<Vec<u32>>,
}

/// Points of PG(d,q) as normalized coordinate vectors and its lines as
/// sorted point sets, both in lexicographic order.
fn projective_frame(field: &FiniteField, d: u32) -> Result<ProjectiveFrame> {
    check_dimension(d)?;
    let q = field.order();
    let count = projective_point_count(q as u64, d).unwrap_or(u64::MAX);
    if count > MAX_POINTS {
        return Err(Error::TooManyPoints {
            what: format!("PG({d},{q})"),
            size: count,
            cap: MAX_POINTS,
        });
    }
    let dim = d as usize + 1;
    let total = q.pow(dim as u32);

    // Enumerate GF(q)^(d+1) with the first coordinate most significant and
    // keep the vectors whose first nonzero entry is 1.
    let code = |v: &[usize]| v.iter().fold(0usize, |acc, &x| acc * q + x);
    let mut index_of = vec![u32::MAX; total];
    let mut points = Vec::with_capacity(count as usize);
    for (c, slot_index) in index_of.iter_mut().enumerate() {
        let mut v = vec![0usize; dim];
        let mut rest = c;
        for slot in v.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            *slot_index = points.len() as u32;
            points.push(v);
        }
    }
    debug_assert_eq!(points.len() as u64, count);

    let normalize = |v: &mut [usize]| {
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            let s = field.inv_unchecked(lead);
            for x in v.iter_mut() {
                *x = field.mul_unchecked(*x, s);
            }
        }
    };

    let np = points.len();
    let mut covered = vec![0u64; (np * np).div_ceil(64)];
    let mut lines = Vec::new();
    let mut buf = vec![0usize; dim];
    for i in 0..np {
        for j in i + 1..np {
            let bit = i * np + j;
            if covered[bit / 64] >> (bit % 64) & 1 == 1 {
                continue;
            }
            let mut line = vec![i as u32, j as u32];
            for t in 1..q {
                for (slot, (&a, &b)) in buf.iter_mut().zip(points[i].iter().zip(&points[j])) {
                    *slot = field.add_unchecked(a, field.mul_unchecked(t, b));
                }
                normalize(&mut buf);
                line.push(index_of[code(&buf)]);
            }
            line.sort_unstable();
            for (x, &a) in line.iter().enumerate() {
                for &b in &line[x + 1..] {
                    let bit = a as usize * np + b as usize;
                    covered[bit / 64] |= 1 << (bit % 64);
                }
            }
            lines.push(line);
        }
    }
    lines.sort();
    Ok(ProjectiveFrame { points, lines })
}

fn label(coords: &[usize]) -> String {
    let parts: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// PG(d,q) with lines as switches. Only d = 2 or even d is accepted.
pub fn projective_space(field: &FiniteField, d: u32) -> Result<IncidenceStructure> {
    let frame = projective_frame(field, d)?;
    let labels = frame.points.iter().map(|v| label(v)).collect();
    IncidenceStructure::from_parts(
        Kind::Projective,
        Some(field.order() as u32),
        d,
        None,
        frame.points.len(),
        frame.lines,
        Some(labels),
        None,
    )
}

/// AG(d,q): PG(d,q) with the hyperplane `x0 = 0` removed. Every surviving
/// line meets that hyperplane in one point, and lines sharing that point
/// form a parallel class.
pub fn affine_space(field: &FiniteField, d: u32) -> Result<IncidenceStructure> {
    let frame = projective_frame(field, d)?;
    // Points with x0 = 0 are enumerated first.
    let at_infinity = frame.points.iter().take_while(|v| v[0] == 0).count();
    let num_points = frame.points.len() - at_infinity;
    let labels = frame.points[at_infinity..]
        .iter()
        .map(|v| label(&v[1..]))
        .collect();

    let mut lines: Vec<(Vec<u32>, u32)> = frame
        .lines
        .into_iter()
        .filter_map(|line| {
            let ideal: Vec<u32> = line.iter().copied().filter(|&p| (p as usize) < at_infinity).collect();
            let finite: Vec<u32> = line
                .iter()
                .filter(|&&p| p as usize >= at_infinity)
                .map(|&p| p - at_infinity as u32)
                .collect();
            match ideal.as_slice() {
                [direction] if !finite.is_empty() => Some((finite, *direction)),
                _ => None,
            }
        })
        .collect();
    lines.sort();
    let (lines, classes): (Vec<_>, Vec<_>) = lines.into_iter().unzip();
    IncidenceStructure::from_parts(
        Kind::Affine,
        Some(field.order() as u32),
        d,
        None,
        num_points,
        lines,
        Some(labels),
        Some(classes),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{field_of_order, make_field};

    #[test]
    fn grid_shapes() {
        let g = grid_board(2).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (4, 4));
        assert!(g.lines().iter().all(|l| l.len() == 2));
        let g = grid_board(10).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (100, 20));
        assert!(g.lines().iter().all(|l| l.len() == 10));
        let g = grid_board(3).unwrap();
        assert_eq!(g.lines_through(4).unwrap(), &[1, 4]);
        assert_eq!(g.point_labels()[4], "(1,1)");
        assert_eq!(grid_board(0), Err(Error::GridSize(0)));
        assert_eq!(grid_board(33), Err(Error::GridSize(33)));
    }

    #[test]
    fn fano_plane() {
        let s = projective_space(&make_field(2, 1).unwrap(), 2).unwrap();
        assert_eq!((s.num_points(), s.num_lines()), (7, 7));
        assert!(s.lines().iter().all(|l| l.len() == 3));
        assert_eq!(s.point_labels()[0], "(0,0,1)");
        assert_eq!(s.lines()[0], vec![0, 1, 2]);
        assert_eq!(s.id(), "PG(2,2)");
    }

    #[test]
    fn pg24_counts() {
        let s = projective_space(&make_field(2, 2).unwrap(), 2).unwrap();
        assert_eq!((s.num_points(), s.num_lines()), (21, 21));
        assert!(s.lines().iter().all(|l| l.len() == 5));
    }

    #[test]
    fn pg43_has_forty_lines_per_point() {
        let s = projective_space(&make_field(3, 1).unwrap(), 4).unwrap();
        assert_eq!(s.num_points(), 121);
        assert_eq!(s.uniform_point_degree(), Some(40));
        assert_eq!(40, (3u32.pow(4) - 1) / 2);
        assert!(s.lines().iter().all(|l| l.len() == 4));
    }

    #[test]
    fn affine_counts_and_classes() {
        let s = affine_space(&make_field(2, 1).unwrap(), 2).unwrap();
        assert_eq!((s.num_points(), s.num_lines()), (4, 6));
        let s = affine_space(&make_field(2, 2).unwrap(), 2).unwrap();
        assert_eq!((s.num_points(), s.num_lines()), (16, 20));
        let classes = s.parallel_classes().unwrap();
        assert_eq!(classes.len(), 5);
        assert!(classes.iter().all(|c| c.len() == 4));
        assert!(s.lines().iter().all(|l| l.len() == 4));
    }

    #[test]
    fn affine_deletes_one_line_and_its_points() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            let p = projective_space(&f, 2).unwrap();
            let a = affine_space(&f, 2).unwrap();
            assert_eq!(p.num_points() - a.num_points(), q as usize + 1);
            assert_eq!(p.num_lines() - a.num_lines(), 1);
        }
    }

    #[test]
    fn affine_playfair_in_ag23() {
        let s = affine_space(&make_field(3, 1).unwrap(), 2).unwrap();
        for line in 0..s.num_lines() {
            for point in (0..s.num_points()).filter(|&p| !s.line_contains(line, p)) {
                let disjoint = s
                    .lines_through(point)
                    .unwrap()
                    .iter()
                    .filter(|&&l| s.line_bits(l as usize).and_count(s.line_bits(line)) == 0)
                    .count();
                assert_eq!(disjoint, 1);
            }
        }
    }

    #[test]
    fn odd_and_oversized_dimensions_rejected() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(projective_space(&f, 3), Err(Error::UnsupportedDimension(3)));
        assert_eq!(affine_space(&f, 1), Err(Error::UnsupportedDimension(1)));
        let f = make_field(7, 1).unwrap();
        assert!(matches!(projective_space(&f, 6), Err(Error::TooManyPoints { .. })));
    }

    #[test]
    fn construction_is_deterministic() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(projective_space(&f, 2).unwrap(), projective_space(&f, 2).unwrap());
        assert_eq!(affine_space(&f, 2).unwrap(), affine_space(&f, 2).unwrap());
    }
}

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, AtomicU8, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use super::{partitioned, SearchOptions, SwitchCode};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::game::{Configuration, SwitchPlan};
use crate::geometry::IncidenceStructure;

const UNSEEN: u8 = u8::MAX;

/// How to fill a coset table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CosetMethod {
    /// Cheaper of the two below.
    Auto,
    /// Visit all `2^m` configurations in Gray-code order, bucketing by syndrome.
    Sweep,
    /// Breadth-first over syndromes by weight, starting from the zero syndrome.
    WeightBfs,
}

/// Minimum coset weight for every syndrome of a switch code.
#[derive(Clone, Debug)]
pub struct CosetTable {
    redundancy: u32,
    unit_syndromes: Vec<u64>,
    weights: Vec<u8>,
    method: CosetMethod,
}

impl CosetTable {
    pub fn build(code: &SwitchCode, method: CosetMethod, opts: &SearchOptions) -> Result<Self> {
        let m = code.length();
        let r = code.redundancy();
        if r > opts.max_bits as usize {
            return Err(Error::TooLarge(format!(
                "coset table needs 2^{r} entries (m = {m}, k = {}); limit is 2^{}",
                code.rank(),
                opts.max_bits
            )));
        }
        let gens = code
            .unit_syndromes()
            .expect("syndromes exist below the enumeration cap")
            .to_vec();
        let method = match method {
            CosetMethod::Auto => {
                let sweep_cost = 2f64.powi(m as i32);
                let bfs_cost = 2f64.powi(r as i32) * (m as f64 + 8.0);
                if m <= opts.max_bits as usize && sweep_cost < bfs_cost {
                    CosetMethod::Sweep
                } else {
                    CosetMethod::WeightBfs
                }
            }
            other => other,
        };
        let weights = match method {
            CosetMethod::Sweep => {
                if m > opts.max_bits as usize {
                    return Err(Error::TooLarge(format!(
                        "full sweep needs 2^{m} configurations; limit is 2^{}",
                        opts.max_bits
                    )));
                }
                sweep(&gens, m, r, opts.workers)
            }
            _ => weight_bfs(&gens, r, opts.workers),
        };
        Ok(CosetTable {
            redundancy: r as u32,
            unit_syndromes: gens,
            weights,
            method,
        })
    }

    pub fn method(&self) -> CosetMethod {
        self.method
    }

    pub fn num_cosets(&self) -> usize {
        self.weights.len()
    }

    pub fn redundancy(&self) -> u32 {
        self.redundancy
    }

    pub fn weight(&self, syndrome: u64) -> usize {
        self.weights[syndrome as usize] as usize
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn covering_radius(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0) as usize
    }

    /// `spectrum[w]` is the number of cosets whose leaders have weight `w`.
    pub fn spectrum(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.covering_radius() + 1];
        for &w in &self.weights {
            out[w as usize] += 1;
        }
        out
    }

    /// The lexicographically smallest minimum-weight vector of a coset.
    ///
    /// If `i` is the smallest position occurring in any leader of `s`, then
    /// the coset `s + e_i` has weight one less, and `i` is the smallest
    /// position with that property. Peeling such positions off one at a time
    /// spells out the least leader.
    pub fn leader(&self, syndrome: u64) -> BitVec {
        let m = self.unit_syndromes.len();
        let mut out = BitVec::zeros(m);
        let mut s = syndrome;
        let mut w = self.weights[s as usize];
        while w > 0 {
            let i = (0..m)
                .find(|&i| self.weights[(s ^ self.unit_syndromes[i]) as usize] == w - 1)
                .expect("weight table is consistent");
            out.set(i, true);
            s ^= self.unit_syndromes[i];
            w -= 1;
        }
        out
    }
}

fn atomic_table(len: usize) -> Vec<AtomicU8> {
    (0..len).map(|_| AtomicU8::new(UNSEEN)).collect()
}

fn into_plain(table: Vec<AtomicU8>) -> Vec<u8> {
    table.into_iter().map(AtomicU8::into_inner).collect()
}

fn syndrome_of_mask(gens: &[u64], mask: u64) -> u64 {
    let mut s = 0;
    let mut rest = mask;
    while rest != 0 {
        s ^= gens[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    s
}

fn sweep(gens: &[u64], m: usize, r: usize, workers: usize) -> Vec<u8> {
    let table = atomic_table(1usize << r);
    partitioned(1u64 << m, workers, |start, end| {
        let mut g = start ^ (start >> 1);
        let mut s = syndrome_of_mask(gens, g);
        table[s as usize].fetch_min(g.count_ones() as u8, AtomicOrdering::Relaxed);
        for i in start + 1..end {
            let bit = i.trailing_zeros() as usize;
            g ^= 1 << bit;
            s ^= gens[bit];
            table[s as usize].fetch_min(g.count_ones() as u8, AtomicOrdering::Relaxed);
        }
    });
    into_plain(table)
}

fn weight_bfs(gens: &[u64], r: usize, workers: usize) -> Vec<u8> {
    let size = 1u64 << r;
    let mut moves: Vec<u64> = gens.iter().copied().filter(|&g| g != 0).collect();
    moves.sort_unstable();
    moves.dedup();

    let table = atomic_table(size as usize);
    table[0].store(0, AtomicOrdering::Relaxed);
    let mut assigned = 1u64;
    let mut level: u8 = 0;
    while assigned < size {
        assert!(level < UNSEEN - 1, "coset weights exceed table range");
        let next = level + 1;
        let found = AtomicU64::new(0);
        partitioned(size, workers, |start, end| {
            let mut local = 0;
            for s in start..end {
                if table[s as usize].load(AtomicOrdering::Relaxed) != level {
                    continue;
                }
                for &g in &moves {
                    let t = (s ^ g) as usize;
                    if table[t]
                        .compare_exchange(UNSEEN, next, AtomicOrdering::Relaxed, AtomicOrdering::Relaxed)
                        .is_ok()
                    {
                        local += 1;
                    }
                }
            }
            found.fetch_add(local, AtomicOrdering::Relaxed);
        });
        let found = found.into_inner();
        assert!(found > 0, "unit syndromes must span the quotient space");
        assigned += found;
        level = next;
    }
    into_plain(table)
}

/// Best reachable lit count of a configuration and one configuration that attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetMin {
    pub weight: usize,
    /// Lexicographically smallest minimum-weight member of the coset.
    pub minimizer: Configuration,
}

/// Minimum over `c + w`, `w` in the code, by walking all `2^k` codewords in
/// Gray-code order.
fn min_by_codewords(code: &SwitchCode, c: &BitVec, workers: usize) -> BitVec {
    let k = code.rank();
    let basis = code.basis();
    let best = partitioned(1u64 << k, workers, |start, end| {
        let g = start ^ (start >> 1);
        let mut v = c.clone();
        for (i, row) in basis.iter().enumerate() {
            if g >> i & 1 == 1 {
                v.xor_assign(row);
            }
        }
        let mut best = v.clone();
        let mut best_w = v.count_ones();
        for i in start + 1..end {
            v.xor_assign(&basis[i.trailing_zeros() as usize]);
            let w = v.count_ones();
            if w < best_w || (w == best_w && v.lex_cmp(&best) == Ordering::Less) {
                best_w = w;
                best.clone_from(&v);
            }
        }
        (best_w, best)
    });
    best.into_iter()
        .min_by(|(wa, a), (wb, b)| wa.cmp(wb).then_with(|| a.lex_cmp(b)))
        .map(|(_, v)| v)
        .expect("at least one block")
}

/// Structure, switch code and a lazily built coset table.
pub struct Analyzer<'a> {
    structure: &'a IncidenceStructure,
    code: SwitchCode,
    opts: SearchOptions,
    table: OnceLock<CosetTable>,
}

/// Coset tables up to this redundancy are built eagerly for single queries.
const EAGER_TABLE_BITS: usize = 20;

impl<'a> Analyzer<'a> {
    pub fn new(structure: &'a IncidenceStructure, opts: SearchOptions) -> Result<Self> {
        Ok(Analyzer {
            structure,
            code: SwitchCode::new(structure)?,
            opts,
            table: OnceLock::new(),
        })
    }

    pub fn structure(&self) -> &IncidenceStructure {
        self.structure
    }

    pub fn code(&self) -> &SwitchCode {
        &self.code
    }

    pub fn options(&self) -> &SearchOptions {
        &self.opts
    }

    /// The coset table, built on first use with [`CosetMethod::Auto`].
    pub fn table(&self) -> Result<&CosetTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = CosetTable::build(&self.code, CosetMethod::Auto, &self.opts)?;
        Ok(self.table.get_or_init(|| t))
    }

    pub fn coset_min_weight(&self, c: &Configuration) -> Result<CosetMin> {
        if c.bits().len() != self.code.length() || c.structure_id() != self.structure.id() {
            return Err(Error::StructureMismatch {
                expected: self.structure.id(),
                found: c.structure_id().to_string(),
            });
        }
        let r = self.code.redundancy();
        let k = self.code.rank();
        let cap = self.opts.max_bits as usize;
        let use_table = self.table.get().is_some()
            || (r <= cap && (r <= EAGER_TABLE_BITS || k > cap));
        let minimizer = if use_table {
            let t = self.table()?;
            let s = self.code.syndrome(c.bits()).expect("redundancy within cap");
            t.leader(s)
        } else if k <= cap {
            min_by_codewords(&self.code, c.bits(), self.opts.workers)
        } else {
            return Err(Error::TooLarge(format!(
                "{}: neither 2^{k} codewords nor 2^{r} cosets fit the 2^{cap} limit",
                self.structure.id()
            )));
        };
        Ok(CosetMin {
            weight: minimizer.count_ones(),
            minimizer: c.with_bits(minimizer),
        })
    }

    pub fn is_reducible(&self, c: &Configuration) -> Result<Reducibility> {
        let min = self.coset_min_weight(c)?;
        let reducible = min.weight < c.lit_count();
        let witness = if !reducible {
            None
        } else if let Some(line) = c.single_line_reduction(self.structure)? {
            Some(SwitchPlan::from_lines(self.structure, [line])?)
        } else {
            let w = c.bits().xor(min.minimizer.bits());
            let plan = self
                .code
                .express(&w)
                .ok_or_else(|| Error::Verification("minimizer is not in the coset".into()))?;
            Some(plan)
        };
        if let Some(plan) = &witness {
            if !c.is_reduced_by(self.structure, plan)? {
                return Err(Error::Verification("witness plan does not reduce".into()));
            }
        }
        Ok(Reducibility {
            reducible,
            lit_count: c.lit_count(),
            min_weight: min.weight,
            minimizer: min.minimizer,
            witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reducibility {
    pub reducible: bool,
    pub lit_count: usize,
    pub min_weight: usize,
    pub minimizer: Configuration,
    /// A reducing plan, preferring a single line when one suffices.
    pub witness: Option<SwitchPlan>,
}

pub fn coset_min_weight(s: &IncidenceStructure, c: &Configuration, opts: &SearchOptions) -> Result<CosetMin> {
    Analyzer::new(s, *opts)?.coset_min_weight(c)
}

pub fn is_reducible(s: &IncidenceStructure, c: &Configuration, opts: &SearchOptions) -> Result<Reducibility> {
    Analyzer::new(s, *opts)?.is_reducible(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{grid_board, projective_space};
    use crate::gf::make_field;
    use crate::rng::{random_configuration, SplitMix64};

    fn opts(workers: usize) -> SearchOptions {
        SearchOptions::with_workers(workers)
    }

    #[test]
    fn sweep_and_bfs_agree_on_small_grids() {
        for n in 2..=4 {
            let g = grid_board(n).unwrap();
            let code = SwitchCode::new(&g).unwrap();
            let a = CosetTable::build(&code, CosetMethod::Sweep, &opts(3)).unwrap();
            let b = CosetTable::build(&code, CosetMethod::WeightBfs, &opts(2)).unwrap();
            assert_eq!(a.weights(), b.weights());
            assert_eq!(a.spectrum().iter().sum::<u64>(), 1 << code.redundancy());
            assert_eq!(a.spectrum()[0], 1);
        }
    }

    #[test]
    fn codeword_route_matches_table_route() {
        let s = projective_space(&make_field(2, 2).unwrap(), 2).unwrap();
        let code = SwitchCode::new(&s).unwrap();
        let table = CosetTable::build(&code, CosetMethod::WeightBfs, &opts(1)).unwrap();
        let mut rng = SplitMix64::new(17);
        for _ in 0..100 {
            let c = random_configuration(&s, &mut rng);
            let by_words = min_by_codewords(&code, c.bits(), 3);
            let by_table = table.leader(code.syndrome(c.bits()).unwrap());
            assert_eq!(by_words, by_table);
            assert!(code.contains(&by_words.xor(c.bits())));
        }
    }

    #[test]
    fn codeword_minimum_is_independent_of_workers() {
        let s = grid_board(6).unwrap();
        let code = SwitchCode::new(&s).unwrap();
        let c = random_configuration(&s, &mut SplitMix64::new(3));
        let one = min_by_codewords(&code, c.bits(), 1);
        for w in [2, 5, 8] {
            assert_eq!(min_by_codewords(&code, c.bits(), w), one);
        }
    }

    #[test]
    fn code_members_weigh_zero() {
        let s = grid_board(4).unwrap();
        let a = Analyzer::new(&s, opts(1)).unwrap();
        let plan = SwitchPlan::from_lines(&s, [0, 5, 6]).unwrap();
        let c = Configuration::dark(&s).apply_plan(&s, &plan).unwrap();
        assert_eq!(a.coset_min_weight(&c).unwrap().weight, 0);
        assert!(!a.is_reducible(&Configuration::dark(&s)).unwrap().reducible);
    }

    #[test]
    fn fano_two_or_more_reduces_to_at_most_one() {
        let s = projective_space(&make_field(2, 1).unwrap(), 2).unwrap();
        let a = Analyzer::new(&s, opts(1)).unwrap();
        for mask in 0u64..128 {
            let c = Configuration::from_bits(&s, BitVec::from_u64(7, mask)).unwrap();
            let min = a.coset_min_weight(&c).unwrap();
            assert!(min.weight <= 1);
            let r = a.is_reducible(&c).unwrap();
            assert_eq!(r.reducible, c.lit_count() >= 2);
            if r.reducible {
                assert!(c.is_reduced_by(&s, r.witness.as_ref().unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn refusal_reports_sizes() {
        let g = grid_board(10).unwrap();
        let a = Analyzer::new(&g, opts(1)).unwrap();
        assert_eq!((a.code().rank(), a.code().redundancy()), (19, 81));
        let err = a.table().unwrap_err();
        assert!(err.is_size_refusal());
        assert!(err.to_string().contains("2^81"));
        // Single configurations remain answerable through the 2^19 codewords.
        let c = random_configuration(&g, &mut SplitMix64::new(10));
        let min = a.coset_min_weight(&c).unwrap();
        assert!(min.weight <= c.lit_count());
    }

    #[test]
    fn lowered_cap_refuses() {
        let s = projective_space(&make_field(2, 2).unwrap(), 2).unwrap();
        let tight = SearchOptions { workers: 1, max_bits: 4 };
        let a = Analyzer::new(&s, tight).unwrap();
        let c = Configuration::all_lit(&s);
        assert!(matches!(a.coset_min_weight(&c), Err(Error::TooLarge(_))));
    }
}

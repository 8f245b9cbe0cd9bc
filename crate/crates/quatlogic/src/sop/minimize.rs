//! Exact two-level minimization of single-output binary functions.
//!
//! Prime implicants are generated by iterative cube merging, then a
//! minimum-cardinality cover is selected by essential-implicant extraction
//! followed by branch and bound. Ties between minimum covers are broken by
//! choosing the cover whose sorted `(mask, value)` cube keys compare
//! lexicographically smallest, so results are fully deterministic.

use std::collections::BTreeSet;

use thiserror::Error;

/// Exact minimization is limited to this many binary variables.
pub const MAX_MINIMIZE_BITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimizeError {
    #[error(
        "bit arity {0} exceeds the exact minimizer limit of {MAX_MINIMIZE_BITS}; reduce the arity"
    )]
    TooManyBits(usize),
    #[error("bit arity must be at least 1")]
    ZeroBits,
    #[error("minterm index {index} out of range for {bits} bits")]
    IndexOutOfRange { index: u32, bits: usize },
}

/// A conjunction of binary literals (a cube). `mask` has a bit set for each
/// constrained variable and `value` holds the required polarity there.
/// The empty cube (`mask == 0`) is the constant-one product.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cube {
    mask: u32,
    value: u32,
}

impl Cube {
    pub fn universe() -> Cube {
        Cube { mask: 0, value: 0 }
    }

    pub fn minterm(index: u32, bits: usize) -> Cube {
        Cube {
            mask: low_bits(bits),
            value: index,
        }
    }

    /// Builds a cube from `(bit, positive)` literals.
    pub fn from_literals(literals: &[(usize, bool)]) -> Cube {
        let mut cube = Cube::universe();
        for &(bit, positive) in literals {
            cube.mask |= 1 << bit;
            if positive {
                cube.value |= 1 << bit;
            }
        }
        cube
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn covers(self, index: u32) -> bool {
        index & self.mask == self.value
    }

    pub fn literal_count(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Constrained bits as `(bit, positive)` pairs, most significant first.
    pub fn literals(self, bits: usize) -> Vec<(usize, bool)> {
        (0..bits)
            .rev()
            .filter(|&b| self.mask >> b & 1 != 0)
            .map(|b| (b, self.value >> b & 1 != 0))
            .collect()
    }

    /// Merges two cubes differing in exactly one constrained bit.
    fn merge(self, other: Cube) -> Option<Cube> {
        if self.mask != other.mask {
            return None;
        }
        let diff = self.value ^ other.value;
        if diff.count_ones() != 1 {
            return None;
        }
        Some(Cube {
            mask: self.mask & !diff,
            value: self.value & !diff,
        })
    }
}

fn low_bits(bits: usize) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}

/// A single-output binary function given by its set of true rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFunction {
    bits: usize,
    ones: Vec<u32>,
}

impl BinaryFunction {
    pub fn new(bits: usize, mut ones: Vec<u32>) -> Result<BinaryFunction, MinimizeError> {
        if bits == 0 {
            return Err(MinimizeError::ZeroBits);
        }
        ones.sort_unstable();
        ones.dedup();
        if let Some(&index) = ones.iter().find(|&&m| bits < 32 && m >> bits != 0) {
            return Err(MinimizeError::IndexOutOfRange { index, bits });
        }
        Ok(BinaryFunction { bits, ones })
    }

    pub fn bit_arity(&self) -> usize {
        self.bits
    }

    pub fn ones(&self) -> &[u32] {
        &self.ones
    }

    pub fn contains(&self, index: u32) -> bool {
        self.ones.binary_search(&index).is_ok()
    }
}

/// All prime implicants, sorted by `(mask, value)`.
pub fn prime_implicants(f: &BinaryFunction) -> Vec<Cube> {
    if f.ones.is_empty() {
        return Vec::new();
    }
    let mut current: BTreeSet<Cube> = f.ones.iter().map(|&m| Cube::minterm(m, f.bits)).collect();
    let mut primes = BTreeSet::new();
    while !current.is_empty() {
        let cubes: Vec<Cube> = current.iter().copied().collect();
        let mut merged = vec![false; cubes.len()];
        let mut next = BTreeSet::new();
        for i in 0..cubes.len() {
            for j in i + 1..cubes.len() {
                if let Some(m) = cubes[i].merge(cubes[j]) {
                    merged[i] = true;
                    merged[j] = true;
                    next.insert(m);
                }
            }
        }
        for (cube, was_merged) in cubes.into_iter().zip(merged) {
            if !was_merged {
                primes.insert(cube);
            }
        }
        current = next;
    }
    primes.into_iter().collect()
}

/// Exact minimum-cardinality prime cover of the function's ones. The result
/// is sorted by cube key; the empty function yields an empty cover and the
/// tautology yields the single empty cube.
pub fn minimize_exact(f: &BinaryFunction) -> Result<Vec<Cube>, MinimizeError> {
    if f.bits > MAX_MINIMIZE_BITS {
        return Err(MinimizeError::TooManyBits(f.bits));
    }
    if f.ones.is_empty() {
        return Ok(Vec::new());
    }
    let primes = prime_implicants(f);
    let coverage: Vec<Vec<usize>> = primes
        .iter()
        .map(|cube| {
            f.ones
                .iter()
                .enumerate()
                .filter(|&(_, &m)| cube.covers(m))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let chosen = exact_cover(f.ones.len(), &coverage);
    Ok(chosen.into_iter().map(|i| primes[i]).collect())
}

/// Selects a minimum set of candidates covering all `count` elements;
/// among minimum covers, returns the lexicographically smallest sorted
/// candidate-index set (candidates are pre-sorted by cube key).
///
/// Essentials are extracted first. The minimum size is then found by
/// iterative deepening over a feasibility search pruned with a greedy
/// independent-set lower bound, and the tie-break is resolved by fixing
/// one cube at a time: the smallest index whose remainder still admits a
/// completion from strictly larger indices within the budget. This avoids
/// enumerating equal-size covers, which is intractable on dense functions.
fn exact_cover(count: usize, coverage: &[Vec<usize>]) -> Vec<usize> {
    let mut element_cubes: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (cube, elements) in coverage.iter().enumerate() {
        for &e in elements {
            element_cubes[e].push(cube);
        }
    }
    let problem = CoverProblem {
        cube_elements: coverage,
        element_cubes: &element_cubes,
    };

    let mut covered = vec![0usize; count];
    let mut uncovered = count;
    let mut chosen: Vec<usize> = Vec::new();

    // Iterated essential extraction: an uncovered element with a single
    // unchosen candidate forces that candidate into every cover.
    loop {
        let mut forced: BTreeSet<usize> = BTreeSet::new();
        for e in 0..count {
            if covered[e] > 0 {
                continue;
            }
            let mut remaining = element_cubes[e].iter().filter(|c| !chosen.contains(c));
            if let (Some(&only), None) = (remaining.next(), remaining.next()) {
                forced.insert(only);
            }
        }
        if forced.is_empty() {
            break;
        }
        for c in forced {
            chosen.push(c);
            problem.apply(c, &mut covered, &mut uncovered);
        }
    }

    // Row dominance: an element whose candidate set contains another
    // element's candidate set is covered whenever that element is, so it
    // can be dropped. The set of covers is unchanged, which keeps the
    // lexicographic tie-break exact.
    if uncovered > 0 {
        let live: Vec<usize> = (0..count).filter(|&e| covered[e] == 0).collect();
        for &e in &live {
            let dominated = live.iter().any(|&e2| {
                if e2 == e || covered[e2] > 0 {
                    return false;
                }
                let sub = &element_cubes[e2];
                let sup = &element_cubes[e];
                let subset = sub.len() <= sup.len() && sub.iter().all(|c| sup.contains(c));
                subset && (sub.len() < sup.len() || e2 < e)
            });
            if dominated {
                covered[e] += 1;
                uncovered -= 1;
            }
        }
    }

    if uncovered > 0 {
        // minimum completion size: greedy upper bound, then branch and bound
        let greedy = problem.greedy_size(&mut covered, &mut uncovered);
        let mut budget = greedy;
        for size in problem.lower_bound(&covered, 0)..greedy {
            if problem.feasible(&mut covered, &mut uncovered, 0, size) {
                budget = size;
                break;
            }
        }
        // lexicographically smallest completion of that size
        let mut floor = 0;
        while uncovered > 0 {
            let candidates: BTreeSet<usize> = (0..count)
                .filter(|&e| covered[e] == 0)
                .flat_map(|e| element_cubes[e].iter().copied())
                .filter(|&c| c >= floor)
                .collect();
            let mut fixed = None;
            for c in candidates {
                if coverage[c].iter().all(|&e| covered[e] > 0) {
                    continue;
                }
                problem.apply(c, &mut covered, &mut uncovered);
                if problem.feasible(&mut covered, &mut uncovered, c + 1, budget - 1) {
                    fixed = Some(c);
                    break;
                }
                problem.undo(c, &mut covered, &mut uncovered);
            }
            let c = fixed.expect("a cover of the chosen size exists");
            chosen.push(c);
            floor = c + 1;
            budget -= 1;
        }
    }
    chosen.sort_unstable();
    chosen
}

struct CoverProblem<'a> {
    cube_elements: &'a [Vec<usize>],
    element_cubes: &'a [Vec<usize>],
}

impl CoverProblem<'_> {
    fn apply(&self, cube: usize, covered: &mut [usize], uncovered: &mut usize) {
        for &e in &self.cube_elements[cube] {
            if covered[e] == 0 {
                *uncovered -= 1;
            }
            covered[e] += 1;
        }
    }

    fn undo(&self, cube: usize, covered: &mut [usize], uncovered: &mut usize) {
        for &e in &self.cube_elements[cube] {
            covered[e] -= 1;
            if covered[e] == 0 {
                *uncovered += 1;
            }
        }
    }

    fn new_coverage(&self, cube: usize, covered: &[usize]) -> usize {
        self.cube_elements[cube]
            .iter()
            .filter(|&&e| covered[e] == 0)
            .count()
    }

    /// Size of the cover found by repeatedly taking the cube covering the
    /// most uncovered elements; state is restored before returning.
    fn greedy_size(&self, covered: &mut [usize], uncovered: &mut usize) -> usize {
        let mut taken = Vec::new();
        while *uncovered > 0 {
            let best = (0..self.cube_elements.len())
                .max_by_key(|&c| self.new_coverage(c, covered))
                .unwrap();
            self.apply(best, covered, uncovered);
            taken.push(best);
        }
        let size = taken.len();
        for c in taken {
            self.undo(c, covered, uncovered);
        }
        size
    }

    /// Greedy independent set of uncovered elements whose candidate sets
    /// (restricted to cubes >= min_cube) are pairwise disjoint; every such
    /// element needs its own cube, so the set size bounds the cover from
    /// below.
    fn lower_bound(&self, covered: &[usize], min_cube: usize) -> usize {
        let mut items: Vec<(usize, usize)> = (0..covered.len())
            .filter(|&e| covered[e] == 0)
            .map(|e| (self.candidates(e, min_cube).count(), e))
            .collect();
        items.sort_unstable();
        let mut blocked = vec![false; self.cube_elements.len()];
        let mut bound = 0;
        for (_, e) in items {
            if self.candidates(e, min_cube).all(|c| !blocked[c]) {
                bound += 1;
                for c in self.candidates(e, min_cube) {
                    blocked[c] = true;
                }
            }
        }
        bound
    }

    fn candidates(&self, element: usize, min_cube: usize) -> impl Iterator<Item = usize> + '_ {
        self.element_cubes[element]
            .iter()
            .copied()
            .filter(move |&c| c >= min_cube)
    }

    /// Depth-bounded search: can the uncovered elements be covered with at
    /// most `budget` cubes of index >= min_cube?
    fn feasible(
        &self,
        covered: &mut [usize],
        uncovered: &mut usize,
        min_cube: usize,
        budget: usize,
    ) -> bool {
        if *uncovered == 0 {
            return true;
        }
        if budget == 0 || self.lower_bound(covered, min_cube) > budget {
            return false;
        }
        // branch on the uncovered element with the fewest candidates,
        // trying its widest-covering candidates first
        let pick = (0..covered.len())
            .filter(|&e| covered[e] == 0)
            .min_by_key(|&e| self.candidates(e, min_cube).count())
            .unwrap();
        let mut candidates: Vec<(usize, usize)> = self
            .candidates(pick, min_cube)
            .map(|c| (self.new_coverage(c, covered), c))
            .collect();
        candidates.sort_unstable_by(|a, b| b.cmp(a));
        for (_, c) in candidates {
            self.apply(c, covered, uncovered);
            let found = self.feasible(covered, uncovered, min_cube, budget - 1);
            self.undo(c, covered, uncovered);
            if found {
                return true;
            }
        }
        false
    }
}

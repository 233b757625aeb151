//! Face counts of the cyclic polytope `C(n, m)` and the star/dot array
//! combinatorics behind them.
//!
//! Subsets are 1-indexed and sorted. A subset of `[n]` is drawn as a length-`n`
//! array with a star at every member; maximal runs of stars are *blocks*. The
//! block touching position 1 is the first border block, the one touching `n`
//! the last border block, everything else is inner. By Shephard's criterion a
//! `k`-subset spans a `(k-1)`-face of `C(n, m)` iff it has at most `m - k` odd
//! inner blocks.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result, Subset};

/// Default bound on the number of candidate subsets an enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

/// Exhaustive counting is used up to this `n`; dynamic programming beyond.
pub const EXHAUSTIVE_COUNT_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(x: usize) -> Parity {
        if x % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFilter {
    Odd,
    Even,
    Both,
}

impl ParityFilter {
    fn admits(self, p: Parity) -> bool {
        match self {
            ParityFilter::Both => true,
            ParityFilter::Odd => p == Parity::Odd,
            ParityFilter::Even => p == Parity::Even,
        }
    }
}

/// Classification of an `m`-subset by the parities of its gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetClass {
    /// Every gap is odd, `g(C) = 1`.
    OddFacet,
    /// Every gap is even, `g(C) = 2`.
    EvenFacet,
    NotFacet,
}

impl FacetClass {
    /// The gap parity `g(C)` in `{1, 2}`.
    pub fn gap_parity(self) -> Option<u8> {
        match self {
            FacetClass::OddFacet => Some(1),
            FacetClass::EvenFacet => Some(2),
            FacetClass::NotFacet => None,
        }
    }

    pub fn parity(self) -> Option<Parity> {
        match self {
            FacetClass::OddFacet => Some(Parity::Odd),
            FacetClass::EvenFacet => Some(Parity::Even),
            FacetClass::NotFacet => None,
        }
    }
}

/// A subset of `[n]` viewed as a star/dot array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarArray {
    n: usize,
    stars: Subset,
}

impl StarArray {
    pub fn new(n: usize, stars: &[usize]) -> Result<Self> {
        validate_subset(n, stars)?;
        Ok(StarArray { n, stars: stars.to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stars(&self) -> &[usize] {
        &self.stars
    }
}

pub(crate) fn validate_subset(n: usize, subset: &[usize]) -> Result<()> {
    if subset.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::InvalidParams(alloc::format!(
            "subset {subset:?} has indices outside 1..={n}"
        )));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(alloc::format!(
            "subset {subset:?} is not strictly increasing"
        )));
    }
    Ok(())
}

/// Inclusive run `start..=end` of star positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.len())
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

/// Blocks of a star array. A run covering the whole array is recorded as the
/// last border block only, so the three parts stay disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub first_border: Option<Block>,
    pub last_border: Option<Block>,
    pub inner_blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn odd_inner_count(&self) -> usize {
        self.inner_blocks.iter().filter(|b| b.parity() == Parity::Odd).count()
    }

    /// Parity of the last border block; an empty one counts as even.
    pub fn last_border_parity(&self) -> Parity {
        self.last_border.map_or(Parity::Even, |b| b.parity())
    }
}

pub fn blocks(array: &StarArray) -> BlockDecomposition {
    blocks_of(array.n, &array.stars)
}

fn blocks_of(n: usize, stars: &[usize]) -> BlockDecomposition {
    let mut runs: Vec<Block> = Vec::new();
    for &s in stars {
        match runs.last_mut() {
            Some(b) if b.end + 1 == s => b.end = s,
            _ => runs.push(Block { start: s, end: s }),
        }
    }
    let mut first_border = None;
    let mut last_border = None;
    if runs.last().is_some_and(|b| b.end == n) {
        last_border = runs.pop();
    }
    if runs.first().is_some_and(|b| b.start == 1) {
        first_border = Some(runs.remove(0));
    }
    BlockDecomposition { first_border, last_border, inner_blocks: runs }
}

/// Classifies a subset by the parity of the number of members above each gap.
pub fn gap_parity(subset: &[usize], n: usize) -> Result<FacetClass> {
    validate_subset(n, subset)?;
    let mut seen: Option<Parity> = None;
    let mut members = subset.iter().rev().peekable();
    let mut larger = 0usize;
    for gap in (1..=n).rev() {
        if members.peek() == Some(&&gap) {
            members.next();
            larger += 1;
            continue;
        }
        let p = Parity::of(larger);
        match seen {
            None => seen = Some(p),
            Some(q) if q != p => return Ok(FacetClass::NotFacet),
            _ => {}
        }
    }
    Ok(match seen {
        Some(Parity::Odd) => FacetClass::OddFacet,
        Some(Parity::Even) => FacetClass::EvenFacet,
        None => FacetClass::NotFacet,
    })
}

/// Facet classification read off the block structure: no odd inner block,
/// parity taken from the last border block.
pub fn block_facet_class(subset: &[usize], n: usize) -> Result<FacetClass> {
    validate_subset(n, subset)?;
    if subset.len() >= n {
        return Ok(FacetClass::NotFacet);
    }
    let d = blocks_of(n, subset);
    if d.odd_inner_count() > 0 {
        return Ok(FacetClass::NotFacet);
    }
    Ok(match d.last_border_parity() {
        Parity::Odd => FacetClass::OddFacet,
        Parity::Even => FacetClass::EvenFacet,
    })
}

/// Shephard's criterion.
pub fn is_face(subset: &[usize], n: usize, m: usize) -> Result<bool> {
    validate_subset(n, subset)?;
    let k = subset.len();
    if k == 0 || k > m {
        return Err(Error::InvalidParams(alloc::format!(
            "face test needs 1 <= |subset| <= m, got |subset| = {k}, m = {m}"
        )));
    }
    Ok(blocks_of(n, subset).odd_inner_count() <= m - k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn binomial_signed(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 {
        BigUint::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// `f_k(C(n, m))`, the number of `k`-dimensional faces, from the double
/// binomial sum.
pub fn face_count(n: usize, m: usize, k: usize) -> BigUint {
    let (n, m, k) = (n as i64, m as i64, k as i64);
    let half = m / 2;
    let lower: BigUint = (0..=half)
        .map(|l| binomial_signed(l, m - k - 1) * binomial_signed(n - m + l - 1, l))
        .sum();
    let upper: BigUint = (half + 1..=m)
        .map(|l| binomial_signed(l, m - k - 1) * binomial_signed(n - l - 1, m - l))
        .sum();
    lower + upper
}

/// Closed form of the facet count `f_{m-1}(C(n, m))`.
pub fn facet_count_closed_form(n: usize, m: usize) -> BigUint {
    let (n, floor, ceil) = (n as i64, (m / 2) as i64, m.div_ceil(2) as i64);
    binomial_signed(n - ceil, floor) + binomial_signed(n - floor - 1, ceil - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub n: usize,
    pub m: usize,
    /// `entries[k] = f_k`, for `k = 0..m`.
    pub entries: Vec<BigUint>,
}

impl FVector {
    /// Number of `k`-subsets spanning faces, `f_{k-1}`.
    pub fn faces_of_size(&self, k: usize) -> &BigUint {
        &self.entries[k - 1]
    }
}

pub fn fvector(n: usize, m: usize) -> Result<FVector> {
    if m < 2 || n <= m {
        return Err(Error::InvalidParams(alloc::format!(
            "cyclic polytope needs n > m >= 2, got n = {n}, m = {m}"
        )));
    }
    let entries: Vec<BigUint> = (0..m).map(|k| face_count(n, m, k)).collect();
    debug_assert_eq!(entries[m - 1], facet_count_closed_form(n, m));
    Ok(FVector { n, m, entries })
}

/// Lexicographic iterator over the `k`-subsets of `[n]`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let next = (k <= n).then(|| (1..=k).collect());
        Combinations { n, next }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < self.n - (k - 1 - i) {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                return Some(current);
            }
        }
        Some(current)
    }
}

/// Number of `k`-subsets of `[n]`, saturating.
pub fn subset_count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = match acc.checked_mul(n as u128 - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub(crate) fn check_cap(n: usize, k: usize, cap: u128) -> Result<()> {
    let count = subset_count(n, k);
    if count > cap {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    Ok(())
}

/// `|A(n, k, s)|`, or `|A^odd|` / `|A^even|` when a last-border parity is
/// given.
pub fn count_arrays(n: usize, k: usize, s: usize, parity: Option<Parity>) -> Result<BigUint> {
    if s > k || k > n {
        return Err(Error::InvalidParams(alloc::format!(
            "need 0 <= s <= k <= n, got n = {n}, k = {k}, s = {s}"
        )));
    }
    Ok(if n <= EXHAUSTIVE_COUNT_MAX_N {
        count_arrays_exhaustive(n, k, s, parity)
    } else {
        count_arrays_dp(n, k, s, parity)
    })
}

pub fn count_arrays_exhaustive(n: usize, k: usize, s: usize, parity: Option<Parity>) -> BigUint {
    let count = Combinations::new(n, k)
        .filter(|c| {
            let d = blocks_of(n, c);
            d.odd_inner_count() == s && parity.is_none_or(|p| d.last_border_parity() == p)
        })
        .count();
    BigUint::from(count)
}

/// Left-to-right scan keeping (stars used, odd inner blocks, run state).
pub fn count_arrays_dp(n: usize, k: usize, s: usize, parity: Option<Parity>) -> BigUint {
    // run state: 0 = outside a run, 1/2 = inside an inner-candidate run of
    // odd/even length, 3/4 = inside the run that started at position 1.
    const RUN_STATES: usize = 5;
    let idx = |stars: usize, odd: usize, run: usize| (stars * (s + 1) + odd) * RUN_STATES + run;
    let size = (k + 1) * (s + 1) * RUN_STATES;
    let mut cur = vec![BigUint::zero(); size];
    cur[idx(0, 0, 0)] = BigUint::one();
    for pos in 1..=n {
        let mut nxt = vec![BigUint::zero(); size];
        for stars in 0..=k {
            for odd in 0..=s {
                for run in 0..RUN_STATES {
                    let c = &cur[idx(stars, odd, run)];
                    if c.is_zero() {
                        continue;
                    }
                    // dot closes any open run
                    let closed_odd = odd + usize::from(run == 1);
                    if closed_odd <= s {
                        nxt[idx(stars, closed_odd, 0)] += c;
                    }
                    // star
                    if stars < k {
                        let run2 = match run {
                            0 if pos == 1 => 3,
                            0 => 1,
                            1 => 2,
                            2 => 1,
                            3 => 4,
                            _ => 3,
                        };
                        nxt[idx(stars + 1, odd, run2)] += c;
                    }
                }
            }
        }
        cur = nxt;
    }
    (0..RUN_STATES)
        .filter(|&run| {
            let last = match run {
                1 | 3 => Parity::Odd,
                _ => Parity::Even,
            };
            parity.is_none_or(|p| p == last)
        })
        .map(|run| cur[idx(k, s, run)].clone())
        .sum()
}

/// All `k`-subsets spanning a `(k-1)`-face of `C(n, m)`, lexicographic.
pub fn enumerate_faces(n: usize, m: usize, k: usize, cap: u128) -> Result<Vec<Subset>> {
    if k == 0 || k > m || m >= n {
        return Err(Error::InvalidParams(alloc::format!(
            "need 1 <= k <= m < n, got n = {n}, m = {m}, k = {k}"
        )));
    }
    check_cap(n, k, cap)?;
    Ok(Combinations::new(n, k)
        .filter(|c| blocks_of(n, c).odd_inner_count() <= m - k)
        .collect())
}

/// Facets of `C(n, m)` of the requested gap parity. Each candidate is
/// classified both by its gaps and by its block structure; a disagreement is
/// reported as an error.
pub fn enumerate_facets(n: usize, m: usize, filter: ParityFilter, cap: u128) -> Result<Vec<Subset>> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParams(alloc::format!("need 1 <= m < n, got n = {n}, m = {m}")));
    }
    check_cap(n, m, cap)?;
    let mut out = Vec::new();
    for c in Combinations::new(n, m) {
        let by_gaps = gap_parity(&c, n)?;
        let by_blocks = block_facet_class(&c, n)?;
        if by_gaps != by_blocks {
            return Err(Error::ClassificationMismatch { subset: c });
        }
        if by_gaps.parity().is_some_and(|p| filter.admits(p)) {
            out.push(c);
        }
    }
    Ok(out)
}

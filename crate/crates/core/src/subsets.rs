//! Cyclic orderings of subsets of a `d`-element direction set.
//!
//! Subsets are bitmasks over directions `0..d`; the shift permutation maps
//! direction `i` to `i + 1 mod d` (a rotate-left on `d` bits). Orderings are
//! 1-based: position `i` must hold a set containing direction `(i − 1) mod d`,
//! and positions `ad + 1 ..= ad + d` form block `a`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bounds::{ball_count, binomial};

pub type Subset = u64;

/// Largest direction count accepted by the full orderings.
pub const MAX_ORDER_DIM: u32 = 24;

pub fn full_set(d: u32) -> Subset {
    if d == 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

/// The shift permutation applied `k` times.
pub fn rotate(set: Subset, d: u32, k: u32) -> Subset {
    let k = k % d;
    if k == 0 {
        return set;
    }
    ((set << k) | (set >> (d - k))) & full_set(d)
}

/// Smallest `b ≥ 1` with `rotate(set, b) == set`.
pub fn block_size(set: Subset, d: u32) -> u32 {
    (1..=d)
        .find(|&b| d.is_multiple_of(b) && rotate(set, d, b) == set)
        .unwrap_or(d)
}

/// Minimal rotation, the canonical member of the shift class.
pub fn canonical(set: Subset, d: u32) -> Subset {
    (0..d).map(|k| rotate(set, d, k)).min().unwrap_or(set)
}

pub fn is_regular(set: Subset, d: u32) -> bool {
    block_size(set, d) == d
}

/// All `s`-element subsets of `d` directions in increasing numeric order.
pub fn k_subsets(d: u32, s: u32) -> impl Iterator<Item = Subset> {
    let limit = full_set(d);
    let mut next = if s == 0 {
        Some(0)
    } else if s > d {
        None
    } else {
        Some(full_set(s))
    };
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n <= limit && n > cur).then_some(n)
        };
        Some(cur)
    })
}

/// A shift-equivalence class of subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockClass {
    pub representative: Subset,
    pub block_size: u32,
    /// `d / block_size`: number of identical blocks in the characteristic word.
    pub n: u32,
    pub is_special: bool,
    pub members: Vec<Subset>,
}

/// Partition of the `s`-subsets into shift classes, ordered by canonical
/// representative.
pub fn classify_subsets(d: u32, s: u32) -> Vec<BlockClass> {
    k_subsets(d, s)
        .filter(|&set| canonical(set, d) == set)
        .map(|rep| {
            let b = block_size(rep, d);
            BlockClass {
                representative: rep,
                block_size: b,
                n: d / b,
                is_special: b < d,
                members: (0..b).map(|k| rotate(rep, d, k)).collect(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("{set:#b} has no regular antecedent in dimension {d}")]
    NoRegularAntecedent { set: Subset, d: u32 },
    #[error("no Θ assignment for d = {d}, s = {s}")]
    AssignmentInfeasible { d: u32, s: u32 },
    #[error("could not satisfy the strengthened ordering constraints for d = {d}, l = {l}")]
    InfeasibleStrengthening { d: u32, l: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
}

/// `S \ {e_i}` of block size `d`, removing the lowest direction that works.
pub fn regular_antecedent(set: Subset, d: u32) -> Result<Subset, SubsetError> {
    (0..d)
        .filter(|&i| set >> i & 1 == 1)
        .map(|i| set & !(1 << i))
        .find(|&a| is_regular(a, d))
        .ok_or(SubsetError::NoRegularAntecedent { set, d })
}

/// Assigns to every special class of `s`-subsets `n − 1` regular classes,
/// pairwise disjoint. Returns `(special class index, regular class indices)`
/// into [`classify_subsets`]`(d, s)`.
pub fn theta_assignment(d: u32, s: u32) -> Result<Vec<(usize, Vec<usize>)>, SubsetError> {
    if s == 0 || s >= d {
        return Err(SubsetError::InvalidParameters("Θ needs 1 ≤ s < d"));
    }
    let classes = classify_subsets(d, s);
    theta_for(&classes).ok_or(SubsetError::AssignmentInfeasible { d, s })
}

pub(crate) fn theta_for(classes: &[BlockClass]) -> Option<Vec<(usize, Vec<usize>)>> {
    let mut specials: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].is_special)
        .collect();
    // Most demanding first; ties keep canonical order.
    specials.sort_by_key(|&i| core::cmp::Reverse(classes[i].n));
    let mut free = (0..classes.len()).filter(|&i| !classes[i].is_special);
    let mut out = Vec::with_capacity(specials.len());
    for sp in specials {
        let want = classes[sp].n as usize - 1;
        let images: Vec<usize> = free.by_ref().take(want).collect();
        if images.len() < want {
            return None;
        }
        out.push((sp, images));
    }
    out.sort_by_key(|(sp, _)| *sp);
    Some(out)
}

/// Which invariants an ordering was built to satisfy (and does).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConstraintFlags {
    pub congruence: bool,
    pub monotone_cardinality: bool,
    pub antecedent: bool,
    pub tail: bool,
}

/// Constraints requested from [`order_all_subsets`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Strengthen {
    /// `S_j \ e_b` never lies in the block of `S_j` (`j = ad + b`).
    pub antecedent: bool,
    /// When `N_l ≡ r (mod d)` with `1 ≤ r ≤ d/2`, the last `r` sets `R_j`
    /// also contain `e_{j+r}` and `R_j \ e_{j+r}` lies outside the last block.
    pub tail: bool,
}

impl Strengthen {
    pub const NONE: Strengthen = Strengthen {
        antecedent: false,
        tail: false,
    };
    pub const ALL: Strengthen = Strengthen {
        antecedent: true,
        tail: true,
    };
}

/// A segment of cardinality `cardinality` needed local swaps after the
/// class-walk construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FallbackEvent {
    pub cardinality: u32,
    pub swaps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetOrdering {
    pub d: u32,
    /// `subsets[i − 1]` is `S_i`.
    pub subsets: Vec<Subset>,
    pub constraints_met: ConstraintFlags,
    pub fallback_events: Vec<FallbackEvent>,
}

/// Direction required at 1-based position `i`.
pub fn position_direction(i: u64, d: u32) -> u32 {
    ((i - 1) % d as u64) as u32
}

/// The tail length `r` when the tail constraint applies to `N_l` sets.
pub fn tail_length(d: u32, l: u32) -> Option<u32> {
    let r = (ball_count(d, l) % d as u64) as u32;
    (r >= 1 && 2 * r <= d).then_some(r)
}

impl SubsetOrdering {
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn check_congruence(&self) -> bool {
        self.subsets
            .iter()
            .enumerate()
            .all(|(i, &s)| s >> position_direction(i as u64 + 1, self.d) & 1 == 1)
    }

    pub fn check_monotone(&self) -> bool {
        self.subsets
            .windows(2)
            .all(|w| w[0].count_ones() <= w[1].count_ones())
    }

    /// Positions `j` whose antecedent `S_j \ e_b` sits in the same block.
    pub fn antecedent_violations(&self) -> Vec<usize> {
        let d = self.d as usize;
        let mut out = Vec::new();
        for (block, chunk) in self.subsets.chunks(d).enumerate() {
            for (b, &set) in chunk.iter().enumerate() {
                let parent = set & !(1 << b);
                if parent != set && chunk.contains(&parent) {
                    out.push(block * d + b + 1);
                }
            }
        }
        out
    }

    /// Positions in the tail violating the tail constraint; empty when the
    /// constraint does not apply.
    pub fn tail_violations(&self) -> Vec<usize> {
        let d = self.d;
        let n = self.subsets.len();
        let r = (n % d as usize) as u32;
        if r == 0 || 2 * r > d {
            return Vec::new();
        }
        let tail = &self.subsets[n - r as usize..];
        let mut out = Vec::new();
        for (j, &set) in tail.iter().enumerate() {
            let extra = (j as u32 + r) % d;
            let parent = set & !(1 << extra);
            if set >> extra & 1 == 0 || tail.contains(&parent) {
                out.push(n - r as usize + j + 1);
            }
        }
        out
    }

    fn refresh_flags(&mut self, strengthen: Strengthen) {
        self.constraints_met = ConstraintFlags {
            congruence: self.check_congruence(),
            monotone_cardinality: self.check_monotone(),
            antecedent: strengthen.antecedent && self.antecedent_violations().is_empty(),
            tail: strengthen.tail && self.tail_violations().is_empty(),
        };
    }
}

/// Class walk: each class is listed as consecutive shifts starting from a
/// member containing the next required direction.
struct Segment {
    d: u32,
    /// Direction required at the first position.
    start: u32,
    len: usize,
    /// Extra directions required at a segment-relative position.
    required: BTreeMap<usize, Subset>,
    /// Sets that must not appear at a segment-relative position.
    forbidden: BTreeMap<usize, BTreeSet<Subset>>,
}

impl Segment {
    fn direction(&self, pos: usize) -> u32 {
        ((self.start as usize + pos) % self.d as usize) as u32
    }

    fn fits(&self, pos: usize, set: Subset) -> bool {
        if set >> self.direction(pos) & 1 == 0 {
            return false;
        }
        if let Some(&req) = self.required.get(&pos) {
            if set & req != req {
                return false;
            }
        }
        match self.forbidden.get(&pos) {
            Some(f) => !f.contains(&set),
            None => true,
        }
    }

    /// Class walk with the preferred classes first and `last` (class,
    /// starting member) at the end; start members are chosen to respect the
    /// constrained positions when possible.
    fn walk(
        &self,
        classes: &[BlockClass],
        front: &[usize],
        last: Option<(usize, Subset)>,
    ) -> Vec<Subset> {
        let mut order: Vec<usize> = front.to_vec();
        for i in 0..classes.len() {
            if !order.contains(&i) && last.map(|(c, _)| c) != Some(i) {
                order.push(i);
            }
        }
        let mut out = Vec::with_capacity(self.len);
        for ci in order {
            let class = &classes[ci];
            let pos0 = out.len();
            let want = self.direction(pos0);
            let candidates: Vec<u32> = (0..class.block_size)
                .filter(|&k| class.members[k as usize] >> want & 1 == 1)
                .collect();
            let score = |k: u32| {
                (0..class.block_size)
                    .filter(|&i| {
                        let set = rotate(class.members[k as usize], self.d, i);
                        !self.fits(pos0 + i as usize, set)
                    })
                    .count()
            };
            let best = candidates
                .iter()
                .copied()
                .min_by_key(|&k| (score(k), k))
                .expect("every class has a member containing any direction its sets cover");
            for i in 0..class.block_size {
                out.push(rotate(class.members[best as usize], self.d, i));
            }
        }
        if let Some((ci, first)) = last {
            for i in 0..classes[ci].block_size {
                out.push(rotate(first, self.d, i));
            }
        }
        out
    }

    /// Positions violating the segment constraints.
    fn violations(&self, sets: &[Subset]) -> Vec<usize> {
        (0..sets.len())
            .filter(|&p| !self.fits(p, sets[p]))
            .collect()
    }

    /// Single swaps between a violating position and any other position.
    fn repair(&self, sets: &mut [Subset]) -> Option<usize> {
        let mut swaps = 0;
        let budget = 4 * self.len + 64;
        while let Some(&p) = self.violations(sets).first() {
            if swaps >= budget {
                return None;
            }
            let q = (0..sets.len())
                .find(|&q| q != p && self.fits(p, sets[q]) && self.fits(q, sets[p]))?;
            sets.swap(p, q);
            swaps += 1;
        }
        Some(swaps)
    }
}

/// Orders the `s`-subsets so that the `i`-th set (0-based) contains direction
/// `(start + i) mod d`.
pub fn order_s_subsets(d: u32, s: u32, start: u32) -> Result<SubsetOrdering, SubsetError> {
    if s == 0 || s > d || d > MAX_ORDER_DIM {
        return Err(SubsetError::InvalidParameters("need 1 ≤ s ≤ d ≤ 24"));
    }
    let classes = classify_subsets(d, s);
    let seg = Segment {
        d,
        start: start % d,
        len: binomial(d as u64, s as u64) as usize,
        required: BTreeMap::new(),
        forbidden: BTreeMap::new(),
    };
    let subsets = seg.walk(&classes, &[], None);
    let ok = seg.violations(&subsets).is_empty();
    Ok(SubsetOrdering {
        d,
        subsets,
        constraints_met: ConstraintFlags {
            congruence: ok,
            monotone_cardinality: true,
            ..ConstraintFlags::default()
        },
        fallback_events: Vec::new(),
    })
}

/// Chooses the first tail set `R_1`: an `l`-set containing directions `0`
/// and `r` whose shift class has at least `r` members. The preferred shape
/// puts the other `l − 2` directions right after `r`.
fn tail_seed(d: u32, l: u32, r: u32) -> Option<Subset> {
    let base = 1u64 | 1 << r;
    let up = (0..l - 1).fold(1u64, |acc, i| acc | 1 << ((r + i) % d));
    let down = (0..l - 1).fold(1u64, |acc, i| acc | 1 << ((r + d - i) % d));
    let good = |set: Subset| set.count_ones() == l && set & base == base && block_size(set, d) >= r;
    [up, down]
        .into_iter()
        .find(|&s| good(s))
        .or_else(|| k_subsets(d, l).find(|&s| good(s)))
}

/// Orders all non-empty subsets of size at most `l` with congruence and
/// non-decreasing cardinality, optionally strengthened with the antecedent
/// and tail constraints the one-way broadcast needs.
///
/// Layers are built from the largest cardinality down, so each layer knows
/// which antecedents of the next layer's first block it has to keep out of
/// its own last positions; classes holding those antecedents go first.
pub fn order_all_subsets(
    d: u32,
    l: u32,
    strengthen: Strengthen,
) -> Result<SubsetOrdering, SubsetError> {
    if d == 0 || l == 0 || l > d || d > MAX_ORDER_DIM {
        return Err(SubsetError::InvalidParameters("need 1 ≤ l ≤ d ≤ 24"));
    }
    let dd = d as u64;
    let total = ball_count(d, l);
    let tail = if strengthen.tail {
        tail_length(d, l)
    } else {
        None
    };

    let mut segments: Vec<Vec<Subset>> = vec![Vec::new(); l as usize + 1];
    let mut events = Vec::new();
    // Antecedents that must avoid the last positions of the layer below.
    let mut pending_forbidden: BTreeSet<Subset> = BTreeSet::new();

    for c in (1..=l).rev() {
        let before = ball_count(d, c - 1);
        let len = binomial(dd, c as u64) as usize;
        let classes = classify_subsets(d, c);
        let mut seg = Segment {
            d,
            start: (before % dd) as u32,
            len,
            required: BTreeMap::new(),
            forbidden: BTreeMap::new(),
        };

        // Last positions of this layer share a block with the layer above.
        let shared_above = if c < l {
            (ball_count(d, c) % dd) as usize
        } else {
            0
        };
        for p in len - shared_above..len {
            seg.forbidden.insert(p, pending_forbidden.clone());
        }

        let mut last = None;
        if let Some(r) = tail {
            if c == l && l < d {
                for j in 0..r as usize {
                    seg.required
                        .insert(len - r as usize + j, 1 << ((j as u32 + r) % d));
                }
                let seed =
                    tail_seed(d, l, r).ok_or(SubsetError::InfeasibleStrengthening { d, l })?;
                let canon = canonical(seed, d);
                let ci = classes
                    .iter()
                    .position(|k| k.representative == canon)
                    .unwrap();
                let b = classes[ci].block_size;
                last = Some((ci, rotate(seed, d, (d - (b - r) % d) % d)));
            } else if c == d - 1 && l == d && r >= 2 {
                // R_1..R_{r−1} close this layer; R_r is the full set.
                for j in 0..(r - 1) as usize {
                    seg.required
                        .insert(len - (r - 1) as usize + j, 1 << ((j as u32 + r) % d));
                }
            }
        }

        let front: Vec<usize> = if strengthen.antecedent {
            let wanted: BTreeSet<Subset> =
                pending_forbidden.iter().map(|&s| canonical(s, d)).collect();
            (0..classes.len())
                .filter(|&i| wanted.contains(&classes[i].representative))
                .collect()
        } else {
            Vec::new()
        };

        let mut sets = seg.walk(&classes, &front, last);
        if !strengthen.antecedent && tail.is_none() {
            seg.forbidden.clear();
        }
        if !seg.violations(&sets).is_empty() {
            let swaps = seg
                .repair(&mut sets)
                .ok_or(SubsetError::InfeasibleStrengthening { d, l })?;
            events.push(FallbackEvent {
                cardinality: c,
                swaps,
            });
        }

        // Antecedents of this layer's first block, for the layer below.
        pending_forbidden.clear();
        if strengthen.antecedent && c > 1 {
            let shared_below = ((dd - before % dd) % dd) as usize;
            for (p, &set) in sets.iter().enumerate().take(shared_below.min(len)) {
                let dir = ((before + p as u64) % dd) as u32;
                pending_forbidden.insert(set & !(1 << dir));
            }
        }
        if let Some(r) = tail {
            // Tail antecedents through e_{j+r} must leave the last block too.
            if l == d && c == d && r >= 2 {
                pending_forbidden.insert(full_set(d) & !(1 << ((2 * r - 1) % d)));
            }
        }
        segments[c as usize] = sets;
    }

    let mut subsets = Vec::with_capacity(total as usize);
    for seg in segments.into_iter().skip(1) {
        subsets.extend(seg);
    }
    let mut ordering = SubsetOrdering {
        d,
        subsets,
        constraints_met: ConstraintFlags::default(),
        fallback_events: events,
    };
    ordering.refresh_flags(strengthen);
    let ok = ordering.constraints_met.congruence
        && ordering.constraints_met.monotone_cardinality
        && (!strengthen.antecedent || ordering.constraints_met.antecedent)
        && (tail.is_none() || ordering.constraints_met.tail);
    if !ok {
        return Err(SubsetError::InfeasibleStrengthening { d, l });
    }
    Ok(ordering)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(list: &[u32]) -> Subset {
        list.iter().fold(0, |acc, &b| acc | 1 << b)
    }

    #[test]
    fn rotation_and_block_size() {
        assert_eq!(rotate(0b0001, 4, 1), 0b0010);
        assert_eq!(rotate(0b1000, 4, 1), 0b0001);
        assert_eq!(block_size(0b1010, 4), 2);
        assert_eq!(block_size(0b0011, 4), 4);
        assert_eq!(block_size(0b11, 2), 1);
        assert_eq!(block_size(0b101010, 6), 2);
        assert_eq!(canonical(0b1100, 4), 0b0011);
    }

    #[test]
    fn k_subsets_enumerates_binomially() {
        for d in 1..=10 {
            for s in 0..=d {
                let v: Vec<_> = k_subsets(d, s).collect();
                assert_eq!(v.len() as u64, binomial(d as u64, s as u64));
                assert!(v.iter().all(|x| x.count_ones() == s));
                assert!(v.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_subsets(4, 2);
        assert_eq!(c.len(), 2);
        assert_eq!(
            (c[0].representative, c[0].block_size, c[0].is_special),
            (0b0011, 4, false)
        );
        assert_eq!(
            (c[1].representative, c[1].block_size, c[1].is_special),
            (0b0101, 2, true)
        );
        let c = classify_subsets(3, 2);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].block_size, 3);
        let c = classify_subsets(2, 2);
        assert_eq!((c[0].block_size, c[0].n, c[0].is_special), (1, 2, true));
    }

    #[test]
    fn class_sizes_cover_all_subsets() {
        for d in 1..=12 {
            for s in 1..=d {
                let classes = classify_subsets(d, s);
                let total: u64 = classes.iter().map(|c| c.block_size as u64).sum();
                assert_eq!(total, binomial(d as u64, s as u64));
                for c in &classes {
                    // Special iff the word repeats a shorter block.
                    let word_repeats = (1..d)
                        .any(|b| d % b == 0 && rotate(c.representative, d, b) == c.representative);
                    assert_eq!(c.is_special, word_repeats);
                    assert_eq!(
                        c.members.iter().collect::<BTreeSet<_>>().len(),
                        c.block_size as usize
                    );
                }
            }
        }
    }

    #[test]
    fn regular_antecedent_examples() {
        assert_eq!(regular_antecedent(0b1010, 4).unwrap(), 0b1000);
        let a = regular_antecedent(0b11, 2).unwrap();
        assert!(a == 0b01 || a == 0b10);
        let a = regular_antecedent(0b101010, 6).unwrap();
        assert_eq!(block_size(a, 6), 6);
        assert_eq!(a.count_ones(), 2);
    }

    #[test]
    fn every_multi_element_set_has_a_regular_antecedent() {
        for d in 2..=12 {
            for s in 2..=d {
                for set in k_subsets(d, s) {
                    let a = regular_antecedent(set, d).unwrap();
                    assert_eq!(a.count_ones(), s - 1);
                    assert_eq!(a & set, a);
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let t = theta_assignment(4, 2).unwrap();
        assert_eq!(t, vec![(1, vec![0])]);
        assert!(theta_assignment(3, 2).unwrap().is_empty());
        let classes = classify_subsets(6, 3);
        let t = theta_assignment(6, 3).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(classes[t[0].0].representative, 0b010101);
        assert_eq!(t[0].1.len(), 2);
    }

    #[test]
    fn theta_properties_up_to_twelve() {
        for d in 2..=12 {
            for s in 1..d {
                let classes = classify_subsets(d, s);
                let t = theta_assignment(d, s).unwrap();
                let mut used = BTreeSet::new();
                for (sp, images) in &t {
                    assert!(classes[*sp].is_special);
                    assert_eq!(images.len(), classes[*sp].n as usize - 1);
                    for &i in images {
                        assert!(!classes[i].is_special);
                        assert!(used.insert(i), "images overlap at d={d} s={s}");
                    }
                }
                assert_eq!(t.len(), classes.iter().filter(|c| c.is_special).count());
            }
        }
    }

    #[test]
    fn s_subset_orderings() {
        let o = order_s_subsets(3, 1, 0).unwrap();
        assert_eq!(o.subsets, vec![0b001, 0b010, 0b100]);
        let o = order_s_subsets(4, 2, 0).unwrap();
        assert_eq!(o.len(), 6);
        assert!(o.check_congruence());
        let o = order_s_subsets(3, 3, 1).unwrap();
        assert_eq!(o.subsets, vec![0b111]);
        for d in 1..=10 {
            for s in 1..=d {
                for start in 0..d {
                    let o = order_s_subsets(d, s, start).unwrap();
                    for (i, &set) in o.subsets.iter().enumerate() {
                        assert_eq!(set >> ((start as usize + i) % d as usize) & 1, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn all_subsets_small_cases() {
        let o = order_all_subsets(3, 3, Strengthen::NONE).unwrap();
        assert_eq!(o.len(), 7);
        assert!(o.subsets[..3].iter().all(|s| s.count_ones() == 1));
        assert!(o.subsets[3..6].iter().all(|s| s.count_ones() == 2));
        assert_eq!(o.subsets[6], 0b111);
        assert!(o.check_congruence());

        let o = order_all_subsets(2, 2, Strengthen::ALL).unwrap();
        assert_eq!(o.subsets, vec![0b01, 0b10, 0b11]);
        assert!(o.constraints_met.tail);

        let o = order_all_subsets(1, 1, Strengthen::ALL).unwrap();
        assert_eq!(o.subsets, vec![0b1]);
    }

    #[test]
    fn tail_seed_shape() {
        // d = 4, l = 2: N = 10 ≡ 2.
        assert_eq!(tail_length(4, 2), Some(2));
        assert_eq!(tail_seed(4, 2, 2), Some(bits(&[0, 2])));
        assert_eq!(tail_seed(4, 3, 2), Some(bits(&[0, 2, 3])));
    }
}

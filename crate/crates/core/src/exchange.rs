//! Universal exchange on `Q_d`, one distance at a time.
//!
//! For distance `s` the template holds one path from `0` to every `s`-set.
//! Template time is cut into slots; each slot uses every direction exactly
//! once, so translating the template by all vertices of one parity never
//! repeats a directed edge. One-way schedules give slot `u` the time
//! `2u + 1` on even vertices and `2u + 2` on odd ones.
//!
//! Paths of a shift class are built from one block's antecedent chain,
//! visiting the blocks in barber-pole order. A special class with `n`
//! blocks only fills `d/n` directions per level, so it is bundled with
//! `n − 1` regular classes whose levels are split into matching blocks and
//! interleaved around seams.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::Vertex;
use crate::hypercube::{HypercubeError, Timing};
use crate::schedule::{CommSchedule, TaskGraph, TaskKind, TimedEdge, WireModel};
use crate::subsets::{
    classify_subsets, full_set, regular_antecedent, theta_for, BlockClass, Subset, SubsetError,
};

/// Largest dimension the exchange builders accept.
pub const MAX_EXCHANGE_DIM: u32 = 12;

/// A template path `0 → target`: the direction added at each step and the
/// slot (0-based) it uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplatePath {
    pub target: Subset,
    pub steps: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeTemplate {
    pub d: u32,
    pub slots: u32,
    pub paths: Vec<TemplatePath>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPlan {
    pub class: BlockClass,
    /// Elements per block, `s / n`.
    pub t: u32,
    /// `S_1^0 ⊃ S_1^1 ⊃ … ⊃ S_1^t = ∅` inside the first block.
    pub chain: Vec<Subset>,
    /// Barber-pole vectors from `(0,…,0)` to `(t,…,t)`.
    pub barber_pole: Vec<Vec<u32>>,
    /// Direction added at level `g` (index `g − 1`) by the base member.
    pub step_elements: Vec<u32>,
}

/// A set of paths of one class at one level: shifts
/// `shift_start .. shift_start + shift_len` (mod the class size).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupRef {
    pub class: usize,
    pub level: u32,
    pub shift_start: u32,
    pub shift_len: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangePlan {
    pub d: u32,
    pub s: u32,
    pub classes: Vec<ClassPlan>,
    pub theta: Vec<(usize, Vec<usize>)>,
    pub slots: Vec<Vec<GroupRef>>,
}

/// The staircase from `(0,…,0)` to `(t,…,t)`: each step raises the last
/// coordinate that is still at the lower value.
pub fn barber_pole(n: u32, t: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n as usize]];
    for j in 0..t {
        for m in (0..n as usize).rev() {
            let mut v = out.last().unwrap().clone();
            debug_assert_eq!(v[m], j);
            v[m] = j + 1;
            out.push(v);
        }
    }
    out
}

fn class_plan(class: BlockClass, d: u32, s: u32) -> Result<ClassPlan, SubsetError> {
    let b = class.block_size;
    let n = class.n;
    let t = s / n;
    let mut chain = vec![class.representative & full_set(b)];
    while *chain.last().unwrap() != 0 {
        let cur = *chain.last().unwrap();
        let next = if cur.count_ones() >= 2 {
            regular_antecedent(cur, d)?
        } else {
            0
        };
        chain.push(next);
    }
    debug_assert_eq!(chain.len() as u32, t + 1);
    // Walking the pole backwards adds to block 1, then 2, …, then n.
    let step_elements = (0..s)
        .map(|g| {
            let q = (g / n) as usize;
            let m = g % n;
            let y = (chain[t as usize - q - 1] & !chain[t as usize - q]).trailing_zeros();
            (y + m * b) % d
        })
        .collect();
    Ok(ClassPlan {
        class,
        t,
        chain,
        barber_pole: barber_pole(n, t),
        step_elements,
    })
}

/// Builds the slot table for distance `s` (`1 ≤ s ≤ d − 1`).
pub fn exchange_plan(d: u32, s: u32) -> Result<ExchangePlan, HypercubeError> {
    if s == 0 || s >= d || d > MAX_EXCHANGE_DIM {
        return Err(HypercubeError::InvalidParameters(
            "exchange needs 1 ≤ s ≤ d − 1 and d ≤ 12",
        ));
    }
    let classes: Vec<ClassPlan> = classify_subsets(d, s)
        .into_iter()
        .map(|c| class_plan(c, d, s))
        .collect::<Result<_, _>>()?;
    let raw: Vec<BlockClass> = classes.iter().map(|c| c.class.clone()).collect();
    let theta = theta_for(&raw).ok_or(SubsetError::AssignmentInfeasible { d, s })?;

    let mut slots = Vec::new();
    let mut bundled = vec![false; classes.len()];
    for (sp, regulars) in &theta {
        bundled[*sp] = true;
        for &r in regulars {
            bundled[r] = true;
        }
        bundle_slots(&classes, *sp, regulars, d, &mut slots);
    }
    for (ci, c) in classes.iter().enumerate() {
        if bundled[ci] {
            continue;
        }
        for level in 1..=s {
            slots.push(vec![GroupRef {
                class: ci,
                level,
                shift_start: 0,
                shift_len: c.class.block_size,
            }]);
        }
    }
    Ok(ExchangePlan {
        d,
        s,
        classes,
        theta,
        slots,
    })
}

/// Slots for one special class and its `n − 1` regular partners.
///
/// Within each period of `n` levels the regular levels are cut along the
/// special group's blocks. Seam `i` holds level `i`'s regular pieces in
/// blocks `j < i`, the special group (block `i`) and level `i + 1`'s pieces
/// in blocks `j > i`; the classes at a seam are pairwise distinct so no path
/// fires twice in one slot.
fn bundle_slots(
    classes: &[ClassPlan],
    sp: usize,
    regulars: &[usize],
    d: u32,
    slots: &mut Vec<Vec<GroupRef>>,
) {
    let special = &classes[sp];
    let n = special.class.n;
    let b = special.class.block_size;
    for q in 0..special.t {
        let offset = special.step_elements[(q * n) as usize];
        let piece = |k: u32, level: u32, block: u32| {
            let ci = regulars[k as usize - 1];
            let x = classes[ci].step_elements[level as usize - 1];
            GroupRef {
                class: ci,
                level,
                shift_start: (offset + (block - 1) * b + d - x) % d,
                shift_len: b,
            }
        };
        let level_of = |i: u32| q * n + i;
        // Classes used by level i (i ≥ 2) in block j at its seams.
        let seam_class = |i: u32, j: u32| if j < i { j } else { j - 1 };

        for k in 1..n {
            slots.push((1..=n).map(|j| piece(k, level_of(1), j)).collect());
        }
        for i in 1..=n {
            let mut seam: Vec<GroupRef> = (1..i).map(|j| piece(j, level_of(i), j)).collect();
            seam.push(GroupRef {
                class: sp,
                level: level_of(i),
                shift_start: 0,
                shift_len: b,
            });
            if i < n {
                seam.extend((i + 1..=n).map(|j| piece(j - 1, level_of(i + 1), j)));
            }
            slots.push(seam);
            if i < n {
                let next = i + 1;
                for u in 0..n - 2 {
                    slots.push(
                        (1..=n)
                            .map(|j| {
                                let used = seam_class(next, j);
                                let k = (1..n).filter(|&k| k != used).nth(u as usize).unwrap();
                                piece(k, level_of(next), j)
                            })
                            .collect(),
                    );
                }
            }
        }
    }
}

impl ExchangePlan {
    /// Template paths, one per `s`-set, with their slots.
    pub fn template(&self) -> ExchangeTemplate {
        let d = self.d;
        let s = self.s as usize;
        let mut slot_of: Vec<Vec<Vec<u32>>> = self
            .classes
            .iter()
            .map(|c| vec![vec![u32::MAX; s]; c.class.block_size as usize])
            .collect();
        for (u, slot) in self.slots.iter().enumerate() {
            for g in slot {
                let size = self.classes[g.class].class.block_size;
                for i in 0..g.shift_len {
                    let k = (g.shift_start + i) % size;
                    slot_of[g.class][k as usize][g.level as usize - 1] = u as u32;
                }
            }
        }
        let mut paths = Vec::new();
        for (ci, c) in self.classes.iter().enumerate() {
            for k in 0..c.class.block_size {
                let steps = (0..s)
                    .map(|g| ((c.step_elements[g] + k) % d, slot_of[ci][k as usize][g]))
                    .collect();
                paths.push(TemplatePath {
                    target: c.class.members[k as usize],
                    steps,
                });
            }
        }
        ExchangeTemplate {
            d,
            slots: self.slots.len() as u32,
            paths,
        }
    }
}

/// The distance `d − 1` and `d` phase: the path to `D` adds `g + e` at slot
/// `g`; the path to `D \ {m}` skips slot `m` and adds `m + h(g − m)`
/// elsewhere, where `h` permutes the non-zero residues and `u ↦ h(u) − u`
/// is injective and misses `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarPlan {
    pub d: u32,
    /// `h[u]` for `u` in `1..d`; `h[0]` is unused.
    pub h: Vec<u32>,
    pub e: u32,
}

fn near_complete_mapping(d: u32) -> Option<(Vec<u32>, u32)> {
    if d % 2 == 1 {
        return Some(((0..d).map(|u| 2 * u % d).collect(), 0));
    }
    fn extend(
        u: u32,
        d: u32,
        h: &mut Vec<u32>,
        used_val: &mut [bool],
        used_diff: &mut [bool],
    ) -> bool {
        if u == d {
            return true;
        }
        for v in 1..d {
            let diff = ((v + d - u) % d) as usize;
            if used_val[v as usize] || used_diff[diff] {
                continue;
            }
            used_val[v as usize] = true;
            used_diff[diff] = true;
            h.push(v);
            if extend(u + 1, d, h, used_val, used_diff) {
                return true;
            }
            h.pop();
            used_val[v as usize] = false;
            used_diff[diff] = false;
        }
        false
    }
    let mut h = vec![0];
    let mut used_val = vec![false; d as usize];
    let mut used_diff = vec![false; d as usize];
    if !extend(1, d, &mut h, &mut used_val, &mut used_diff) {
        return None;
    }
    let e = (0..d).find(|&x| !used_diff[x as usize])?;
    Some((h, e))
}

pub fn far_plan(d: u32) -> Result<FarPlan, HypercubeError> {
    if !(2..=MAX_EXCHANGE_DIM).contains(&d) {
        return Err(HypercubeError::InvalidParameters(
            "far exchange needs 2 ≤ d ≤ 12",
        ));
    }
    let (h, e) = near_complete_mapping(d).ok_or(HypercubeError::InvalidParameters(
        "no near-complete mapping",
    ))?;
    Ok(FarPlan { d, h, e })
}

impl FarPlan {
    pub fn template(&self) -> ExchangeTemplate {
        let d = self.d;
        let mut paths = vec![TemplatePath {
            target: full_set(d),
            steps: (0..d).map(|g| ((g + self.e) % d, g)).collect(),
        }];
        for m in 0..d {
            let steps = (0..d)
                .filter(|&g| g != m)
                .map(|g| ((m + self.h[((g + d - m) % d) as usize]) % d, g))
                .collect();
            paths.push(TemplatePath {
                target: full_set(d) & !(1 << m),
                steps,
            });
        }
        ExchangeTemplate { d, slots: d, paths }
    }
}

impl ExchangeTemplate {
    /// Slot-local audit: every slot uses each direction at most once and
    /// every path moves to strictly later slots.
    pub fn check(&self) -> bool {
        let d = self.d as usize;
        let mut used = vec![vec![false; d]; self.slots as usize];
        for p in &self.paths {
            let mut set = 0;
            let mut last = None;
            for &(dir, slot) in &p.steps {
                if slot >= self.slots || set >> dir & 1 == 1 || last.is_some_and(|l| l >= slot) {
                    return false;
                }
                if core::mem::replace(&mut used[slot as usize][dir as usize], true) {
                    return false;
                }
                set |= 1 << dir;
                last = Some(slot);
            }
            if set != p.target {
                return false;
            }
        }
        true
    }

    /// Translates the template to every vertex; `offset` shifts all times.
    pub fn materialize(&self, timing: Timing, offset: u32) -> Vec<TaskGraph> {
        let p = 1u32 << self.d;
        let mut tasks = Vec::with_capacity(p as usize * self.paths.len());
        for x in 0..p {
            for path in &self.paths {
                let mut cur = 0u64;
                let edges = path
                    .steps
                    .iter()
                    .map(|&(dir, slot)| {
                        let next = cur | 1 << dir;
                        let e = TimedEdge::new(
                            x ^ cur as Vertex,
                            x ^ next as Vertex,
                            offset + timing.time(slot, x, dir),
                        );
                        cur = next;
                        e
                    })
                    .collect();
                tasks.push(TaskGraph::new(
                    TaskKind::Path {
                        src: x,
                        dst: x ^ path.target as Vertex,
                    },
                    edges,
                ));
            }
        }
        tasks
    }

    /// Schedule length of one translated phase.
    pub fn span(&self, timing: Timing) -> u32 {
        match timing {
            Timing::TwoWay => self.slots,
            Timing::OneWay { .. } => 2 * self.slots,
        }
    }
}

fn wire_of(timing: Timing) -> WireModel {
    match timing {
        Timing::TwoWay => WireModel::TwoWay,
        Timing::OneWay { .. } => WireModel::OneWay,
    }
}

/// Exchange with every vertex at distance exactly `s`.
pub fn build_exchange(d: u32, s: u32, timing: Timing) -> Result<CommSchedule, HypercubeError> {
    let template = exchange_plan(d, s)?.template();
    Ok(CommSchedule::new(
        wire_of(timing),
        template.materialize(timing, 0),
    ))
}

/// Exchange with every vertex at distance `d − 1` or `d`.
pub fn build_exchange_far(d: u32, timing: Timing) -> Result<CommSchedule, HypercubeError> {
    let template = far_plan(d)?.template();
    Ok(CommSchedule::new(
        wire_of(timing),
        template.materialize(timing, 0),
    ))
}

/// All phases back to back: distances `1..=d−2`, then the far phase.
pub fn build_universal_exchange(d: u32, timing: Timing) -> Result<CommSchedule, HypercubeError> {
    if d == 0 || d > MAX_EXCHANGE_DIM {
        return Err(HypercubeError::InvalidParameters(
            "exchange needs 1 ≤ d ≤ 12",
        ));
    }
    if d == 1 {
        let template = ExchangeTemplate {
            d,
            slots: 1,
            paths: vec![TemplatePath {
                target: 1,
                steps: vec![(0, 0)],
            }],
        };
        return Ok(CommSchedule::new(
            wire_of(timing),
            template.materialize(timing, 0),
        ));
    }
    let mut tasks = Vec::new();
    let mut offset = 0;
    let templates = (1..d - 1)
        .map(|s| exchange_plan(d, s).map(|p| p.template()))
        .chain(core::iter::once(far_plan(d).map(|p| p.template())));
    for template in templates {
        let template = template?;
        tasks.extend(template.materialize(timing, offset));
        offset += template.span(timing);
    }
    Ok(CommSchedule::new(wire_of(timing), tasks))
}

pub fn build_oneway_exchange(d: u32, s: u32) -> Result<CommSchedule, HypercubeError> {
    build_exchange(d, s, Timing::ONE_WAY)
}

pub fn build_oneway_exchange_far(d: u32) -> Result<CommSchedule, HypercubeError> {
    build_exchange_far(d, Timing::ONE_WAY)
}

pub fn build_oneway_universal_exchange(d: u32) -> Result<CommSchedule, HypercubeError> {
    build_universal_exchange(d, Timing::ONE_WAY)
}

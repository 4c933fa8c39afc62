//! Counting lower bounds and the optimal hypercube times they match.
//!
//! All bounds are ceilings of rational expressions: schedule times are
//! integers.

use alloc::vec::Vec;

use crate::schedule::WireModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundTask {
    UniversalBroadcast,
    UniversalBroadcastAllButFarthest,
    UniversalExchangeDistS,
    GlobalSum,
}

/// Which counting argument produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    /// `P(P−1)/Q` with `Q` simultaneous edges.
    EdgeCapacity,
    /// `2(P−1)/d` for one-way wires.
    OneWayBroadcast,
    /// `(P−1)/d` for two-way wires.
    TwoWayBroadcast,
    /// `2(P−2)/d`, broadcast that may skip the antipode.
    AllButFarthest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub task: BoundTask,
    pub wire_model: WireModel,
    pub value: u64,
    pub formula: FormulaId,
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// `⌈p(p−1)/q⌉` for `q` edges usable in one step.
pub fn broadcast_lower_bound(p: u64, q: u64) -> u64 {
    ceil_div(p * (p - 1), q)
}

/// `⌈2(p−1)/d⌉`: one-way wires carry `Pd/2` words per step.
pub fn oneway_broadcast_lower_bound(p: u64, d: u64) -> u64 {
    ceil_div(2 * (p - 1), d)
}

/// `⌈(p−1)/d⌉` on a regular digraph with in- and out-degree `d`.
pub fn twoway_broadcast_lower_bound(p: u64, d: u64) -> u64 {
    ceil_div(p - 1, d)
}

/// `⌈2(p−2)/d⌉` for one-way broadcast to all but the farthest vertex.
pub fn all_but_farthest_lower_bound(p: u64, d: u64) -> u64 {
    ceil_div(2 * (p - 2), d)
}

/// Two-way broadcast lower bound for a given graph shape.
pub fn twoway_broadcast_report(p: u64, d: u64) -> BoundReport {
    BoundReport {
        task: BoundTask::UniversalBroadcast,
        wire_model: WireModel::TwoWay,
        value: twoway_broadcast_lower_bound(p, d),
        formula: FormulaId::TwoWayBroadcast,
    }
}

pub fn oneway_broadcast_report(p: u64, d: u64) -> BoundReport {
    BoundReport {
        task: BoundTask::UniversalBroadcast,
        wire_model: WireModel::OneWay,
        value: oneway_broadcast_lower_bound(p, d),
        formula: FormulaId::OneWayBroadcast,
    }
}

pub fn all_but_farthest_report(p: u64, d: u64) -> BoundReport {
    BoundReport {
        task: BoundTask::UniversalBroadcastAllButFarthest,
        wire_model: WireModel::OneWay,
        value: all_but_farthest_lower_bound(p, d),
        formula: FormulaId::AllButFarthest,
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `N_l`: non-zero vertices of `Q_d` within distance `l` of the origin.
pub fn ball_count(d: u32, l: u32) -> u64 {
    (1..=l.min(d) as u64).map(|i| binomial(d as u64, i)).sum()
}

/// Communication tasks on the hypercube with known optimal times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypercubeTask {
    UniversalBroadcast,
    /// Broadcast (or accumulation) to every vertex within distance `l`.
    BroadcastWithin(u32),
    UniversalExchange,
    /// Exchange with every vertex at distance exactly `s ≤ d−1`.
    ExchangeAt(u32),
    /// Exchange with every vertex at distance `d−1` or `d`.
    ExchangeFar,
    GlobalSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimalTime {
    pub task: HypercubeTask,
    pub wire_model: WireModel,
    pub tau: u64,
}

/// Optimal time of `task` on `Q_d` under `wire`.
pub fn hypercube_optimal_time(d: u32, task: HypercubeTask, wire: WireModel) -> u64 {
    let dd = d as u64;
    let factor = match wire {
        WireModel::OneWay => 2,
        WireModel::TwoWay => 1,
    };
    match task {
        HypercubeTask::UniversalBroadcast => ceil_div(factor * ball_count(d, d), dd),
        HypercubeTask::BroadcastWithin(l) => ceil_div(factor * ball_count(d, l), dd),
        HypercubeTask::UniversalExchange => factor * (1u64 << d) / 2,
        HypercubeTask::ExchangeAt(s) => factor * binomial(dd - 1, s as u64 - 1),
        HypercubeTask::ExchangeFar => factor * dd,
        HypercubeTask::GlobalSum => dd,
    }
}

/// The full table for `Q_d`, one-way entries first.
pub fn hypercube_optimal_times(d: u32) -> Vec<OptimalTime> {
    let mut tasks = Vec::new();
    tasks.push(HypercubeTask::UniversalBroadcast);
    tasks.extend((1..=d).map(HypercubeTask::BroadcastWithin));
    tasks.push(HypercubeTask::UniversalExchange);
    tasks.extend((1..d).map(HypercubeTask::ExchangeAt));
    if d >= 2 {
        tasks.push(HypercubeTask::ExchangeFar);
    }
    let mut out = Vec::new();
    for wire in [WireModel::OneWay, WireModel::TwoWay] {
        for &task in &tasks {
            out.push(OptimalTime {
                task,
                wire_model: wire,
                tau: hypercube_optimal_time(d, task, wire),
            });
        }
    }
    out.push(OptimalTime {
        task: HypercubeTask::GlobalSum,
        wire_model: WireModel::TwoWay,
        tau: d as u64,
    });
    out
}

/// `base^exp mod m` without overflow for `m < 2^32`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        exp >>= 1;
    }
    result
}

/// True when `d` divides `2^d − 1`; never the case for `d > 1`.
pub fn divides_mersenne(d: u64) -> bool {
    pow_mod(2, d, d) == 1 % d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_bounds() {
        assert_eq!(broadcast_lower_bound(4, 8), 2);
        assert_eq!(broadcast_lower_bound(2, 1), 2);
        assert_eq!(broadcast_lower_bound(8, 24), 3);

        assert_eq!(oneway_broadcast_lower_bound(8, 3), 5);
        assert_eq!(oneway_broadcast_lower_bound(4, 2), 3);
        assert_eq!(oneway_broadcast_lower_bound(1 << 13, 13), 1261);

        assert_eq!(twoway_broadcast_lower_bound(8, 3), 3);
        assert_eq!(twoway_broadcast_lower_bound(16, 4), 4);
        assert_eq!(twoway_broadcast_lower_bound(10, 3), 3);

        assert_eq!(all_but_farthest_lower_bound(8, 3), 4);
        assert_eq!(all_but_farthest_lower_bound(32, 5), 12);
        assert_eq!(all_but_farthest_lower_bound(4, 2), 2);
    }

    #[test]
    fn hypercube_table() {
        use HypercubeTask::*;
        use WireModel::*;
        assert_eq!(hypercube_optimal_time(3, UniversalBroadcast, OneWay), 5);
        assert_eq!(hypercube_optimal_time(3, UniversalExchange, OneWay), 8);
        assert_eq!(hypercube_optimal_time(3, UniversalExchange, TwoWay), 4);
        assert_eq!(hypercube_optimal_time(4, ExchangeAt(2), OneWay), 6);
        assert_eq!(hypercube_optimal_time(1, UniversalBroadcast, OneWay), 2);
        assert_eq!(hypercube_optimal_time(1, UniversalBroadcast, TwoWay), 1);
        assert_eq!(hypercube_optimal_time(1, UniversalExchange, OneWay), 2);
        assert_eq!(hypercube_optimal_time(1, UniversalExchange, TwoWay), 1);
        assert_eq!(hypercube_optimal_time(4, BroadcastWithin(2), OneWay), 5);
        assert_eq!(hypercube_optimal_time(3, ExchangeFar, OneWay), 6);
    }

    #[test]
    fn exchange_phases_telescope() {
        for d in 2..=16u32 {
            for wire in [WireModel::OneWay, WireModel::TwoWay] {
                let phases: u64 = (1..=d.saturating_sub(2))
                    .map(|s| hypercube_optimal_time(d, HypercubeTask::ExchangeAt(s), wire))
                    .sum::<u64>()
                    + hypercube_optimal_time(d, HypercubeTask::ExchangeFar, wire);
                assert_eq!(
                    phases,
                    hypercube_optimal_time(d, HypercubeTask::UniversalExchange, wire)
                );
            }
        }
    }

    #[test]
    fn broadcast_matches_generic_bounds() {
        for d in 1..=20u32 {
            let p = 1u64 << d;
            let table = hypercube_optimal_times(d);
            let find = |task, wire| {
                table
                    .iter()
                    .find(|o| o.task == task && o.wire_model == wire)
                    .unwrap()
                    .tau
            };
            assert_eq!(
                find(HypercubeTask::UniversalBroadcast, WireModel::OneWay),
                oneway_broadcast_lower_bound(p, d as u64)
            );
            assert_eq!(
                find(HypercubeTask::UniversalBroadcast, WireModel::TwoWay),
                twoway_broadcast_lower_bound(p, d as u64)
            );
        }
    }

    #[test]
    fn mersenne_divisibility() {
        assert!(divides_mersenne(1));
        // Exact arithmetic oracle for small d.
        for d in 2..127u32 {
            let exact = ((1u128 << d) - 1).is_multiple_of(d as u128);
            assert_eq!(divides_mersenne(d as u64), exact);
            assert!(!exact);
        }
        // Prime d divides 2^d − 2.
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            assert_eq!(pow_mod(2, p, p), 2);
        }
    }
}

//! Named graphs used throughout the examples and tests.

use alloc::string::String;
use alloc::vec::Vec;

use crate::group::{
    build_cayley_graph, CayleyGraph, ElementSpec, GroupError, GroupKind, GroupSpec,
};

pub fn hypercube(dim: u32) -> Result<CayleyGraph, GroupError> {
    build_cayley_graph(&GroupSpec::hypercube(dim))
}

/// `Z_2 × Z_8` with five generators, written in `(Z_2, Z_8)` coordinates:
/// `(0,±1)`, `(1,0)`, `(1,±1)`. Diameter 4 while `⌈(P−1)/d⌉ = 3`.
pub fn z2z8_five_generators() -> CayleyGraph {
    build_cayley_graph(&GroupSpec::abelian(
        &[2, 8],
        &[&[0, 1], &[0, -1], &[1, 0], &[1, 1], &[1, -1]],
    ))
    .expect("fixture is a valid Cayley graph")
}

/// `K_n` as the Cayley graph of `Z_n` with every non-zero generator.
pub fn complete(n: u32) -> Result<CayleyGraph, GroupError> {
    let gens: Vec<Vec<i64>> = (1..n as i64).map(|g| alloc::vec![g]).collect();
    let refs: Vec<&[i64]> = gens.iter().map(|g| g.as_slice()).collect();
    build_cayley_graph(&GroupSpec::abelian(&[n], &refs))
}

/// `C_n` as the Cayley graph of `Z_n` with generators `±1` (a single
/// generator when `n ≤ 2`).
pub fn cycle(n: u32) -> Result<CayleyGraph, GroupError> {
    if n <= 2 {
        return build_cayley_graph(&GroupSpec::abelian(&[n], &[&[1]]));
    }
    build_cayley_graph(&GroupSpec::abelian(&[n], &[&[1], &[-1]]))
}

/// Lexicographic list of the permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// The Petersen graph as the coset graph of `S_5` modulo the setwise
/// stabiliser of `{0, 1}`; a coset `gH` stands for the pair `g{0,1}` and the
/// three generators send `{0,1}` to `{2,3}`, `{2,4}` and `{3,4}`.
pub fn petersen() -> CayleyGraph {
    let perms = permutations(5);
    let index = |p: &[u8]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap() as u32;
    let table: Vec<Vec<u32>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let ab: Vec<u8> = b.iter().map(|&x| a[x as usize]).collect();
                    index(&ab)
                })
                .collect()
        })
        .collect();
    let swap = |pairs: &[(u8, u8)]| {
        let mut p: Vec<u8> = (0..5).collect();
        for &(x, y) in pairs {
            p.swap(x as usize, y as usize);
        }
        ElementSpec::Index(index(&p) as u64)
    };
    let spec = GroupSpec {
        kind: GroupKind::ExplicitTable { table },
        generators: alloc::vec![
            swap(&[(0, 2), (1, 3)]),
            swap(&[(0, 2), (1, 4)]),
            swap(&[(0, 3), (1, 4)]),
        ],
        // (01), (23), (234) generate S_{0,1} × S_{2,3,4}.
        subgroup: alloc::vec![swap(&[(0, 1)]), swap(&[(2, 3)]), {
            let mut p: Vec<u8> = (0..5).collect();
            p[2] = 3;
            p[3] = 4;
            p[4] = 2;
            ElementSpec::Index(index(&p) as u64)
        }],
    };
    build_cayley_graph(&spec).expect("fixture is a valid coset graph")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("unknown graph name `{0}` (expected q1..q16, petersen, z2z8x5, kN, cN)")]
    Unknown(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Resolves `q1..q16`, `petersen`, `z2z8x5`, `kN` and `cN`.
pub fn builtin(name: &str) -> Result<CayleyGraph, BuiltinError> {
    let unknown = || BuiltinError::Unknown(String::from(name));
    let number = |rest: &str| rest.parse::<u32>().map_err(|_| unknown());
    match name {
        "petersen" => Ok(petersen()),
        "z2z8x5" => Ok(z2z8_five_generators()),
        _ => {
            if let Some(rest) = name.strip_prefix('q') {
                let d = number(rest)?;
                if !(1..=16).contains(&d) {
                    return Err(unknown());
                }
                Ok(hypercube(d)?)
            } else if let Some(rest) = name.strip_prefix('k') {
                let n = number(rest)?;
                if n < 2 {
                    return Err(unknown());
                }
                Ok(complete(n)?)
            } else if let Some(rest) = name.strip_prefix('c') {
                let n = number(rest)?;
                if n < 2 {
                    return Err(unknown());
                }
                Ok(cycle(n)?)
            } else {
                Err(unknown())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.degree(), 3);
        assert!(g.is_bidirectional());
        assert!(!g.is_cayley());
        assert_eq!(g.diameter(), 2);
        // 15 undirected edges, no loops.
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), 30);
        assert!(edges.iter().all(|&(u, v, _)| u != v && g.has_edge(v, u)));
        // Girth 5: no triangles or squares through vertex 0.
        for v in 0..10 {
            let d = g.bfs(v);
            let at2 = d.iter().filter(|&&x| x == 2).count();
            assert_eq!(at2, 6);
        }
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(builtin("q4").unwrap().vertex_count(), 16);
        assert_eq!(builtin("k5").unwrap().degree(), 4);
        assert_eq!(builtin("c6").unwrap().diameter(), 3);
        assert_eq!(builtin("c2").unwrap().degree(), 1);
        assert_eq!(builtin("z2z8x5").unwrap().degree(), 5);
        assert!(builtin("q17").is_err());
        assert!(builtin("x3").is_err());
    }
}

//! Finite groups, Cayley coset graphs and the basic graph metrics used by the
//! schedulers.
//!
//! Group elements are plain indices in `0..order`. For `Z_2^d` the index is the
//! bitmask itself (XOR is the group operation), for products of cyclic groups
//! it is the mixed-radix encoding of the residue tuple (first coordinate most
//! significant), and for explicit tables it is the row index of the table.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Vertex index inside a [`CayleyGraph`].
pub type Vertex = u32;

/// Largest hypercube dimension for which a graph is constructed.
pub const MAX_GRAPH_DIM: u32 = 24;
/// Largest group order accepted for abelian products.
pub const MAX_ABELIAN_ORDER: u64 = 1 << 24;
/// Largest order accepted for an explicit multiplication table.
pub const MAX_TABLE_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {0} is the identity (or lies in the coset subgroup)")]
    IdentityGenerator(usize),
    #[error("generators {0} and {1} represent the same coset")]
    DuplicateGenerator(usize, usize),
    #[error("generators and subgroup reach only {reached} of {order} elements")]
    NotGenerating { reached: u64, order: u64 },
    #[error("H·Δ·H ≠ Δ·H: subgroup element {subgroup_elem} times generator {generator} leaves ΔH")]
    CosetConditionViolated {
        subgroup_elem: u64,
        generator: usize,
    },
    #[error("invalid group element: {0}")]
    InvalidElement(&'static str),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(&'static str),
    #[error("group too large: {0}")]
    TooLarge(&'static str),
    #[error("vertex {0} is out of range")]
    InvalidVertex(u64),
    #[error("vertex {to} is unreachable from {from}")]
    Unreachable { from: Vertex, to: Vertex },
}

/// An element as written by the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    /// Raw element index (bitmask for the hypercube, row for tables).
    Index(u64),
    /// Signed residues, reduced modulo the moduli of an abelian product.
    Residues(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    HypercubeZ2d {
        dim: u32,
    },
    AbelianProduct {
        moduli: Vec<u32>,
    },
    /// `table[a][b]` is the index of `a·b`.
    ExplicitTable {
        table: Vec<Vec<u32>>,
    },
}

/// Description of a Cayley coset graph `G(Γ, Δ, H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    /// Δ. For the hypercube an empty list means the canonical unit vectors.
    pub generators: Vec<ElementSpec>,
    /// Elements generating the coset subgroup H; empty means trivial H.
    pub subgroup: Vec<ElementSpec>,
}

impl GroupSpec {
    pub fn hypercube(dim: u32) -> Self {
        GroupSpec {
            kind: GroupKind::HypercubeZ2d { dim },
            generators: Vec::new(),
            subgroup: Vec::new(),
        }
    }

    pub fn abelian(moduli: &[u32], generators: &[&[i64]]) -> Self {
        GroupSpec {
            kind: GroupKind::AbelianProduct {
                moduli: moduli.to_vec(),
            },
            generators: generators
                .iter()
                .map(|g| ElementSpec::Residues(g.to_vec()))
                .collect(),
            subgroup: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteGroup {
    Hypercube {
        dim: u32,
    },
    Abelian {
        moduli: Vec<u32>,
    },
    Table {
        order: usize,
        identity: u32,
        table: Vec<u32>,
        inverse: Vec<u32>,
    },
}

impl FiniteGroup {
    pub fn order(&self) -> u64 {
        match self {
            FiniteGroup::Hypercube { dim } => 1u64 << dim,
            FiniteGroup::Abelian { moduli } => moduli.iter().map(|&m| m as u64).product(),
            FiniteGroup::Table { order, .. } => *order as u64,
        }
    }

    pub fn identity(&self) -> u64 {
        match self {
            FiniteGroup::Table { identity, .. } => *identity as u64,
            _ => 0,
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            FiniteGroup::Hypercube { .. } => a ^ b,
            FiniteGroup::Abelian { moduli } => {
                let mut out = 0u64;
                let mut place = 1u64;
                let (mut a, mut b) = (a, b);
                for &m in moduli.iter().rev() {
                    let m = m as u64;
                    let digit = (a % m + b % m) % m;
                    out += digit * place;
                    place *= m;
                    a /= m;
                    b /= m;
                }
                out
            }
            FiniteGroup::Table { order, table, .. } => {
                table[a as usize * order + b as usize] as u64
            }
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        match self {
            FiniteGroup::Hypercube { .. } => a,
            FiniteGroup::Abelian { moduli } => {
                let mut out = 0u64;
                let mut place = 1u64;
                let mut a = a;
                for &m in moduli.iter().rev() {
                    let m = m as u64;
                    let digit = (m - a % m) % m;
                    out += digit * place;
                    place *= m;
                    a /= m;
                }
                out
            }
            FiniteGroup::Table { inverse, .. } => inverse[a as usize] as u64,
        }
    }

    /// Residue tuple of an abelian-product element (first coordinate first).
    pub fn residues(&self, a: u64) -> Option<Vec<u32>> {
        match self {
            FiniteGroup::Abelian { moduli } => {
                let mut out = vec![0u32; moduli.len()];
                let mut a = a;
                for (slot, &m) in out.iter_mut().zip(moduli.iter()).rev() {
                    *slot = (a % m as u64) as u32;
                    a /= m as u64;
                }
                Some(out)
            }
            _ => None,
        }
    }

    fn encode(&self, spec: &ElementSpec) -> Result<u64, GroupError> {
        match (self, spec) {
            (FiniteGroup::Abelian { moduli }, ElementSpec::Residues(r)) => {
                if r.len() != moduli.len() {
                    return Err(GroupError::InvalidElement(
                        "residue tuple length differs from moduli",
                    ));
                }
                let mut out = 0u64;
                for (&x, &m) in r.iter().zip(moduli.iter()) {
                    out = out * m as u64 + x.rem_euclid(m as i64) as u64;
                }
                Ok(out)
            }
            (_, ElementSpec::Residues(_)) => Err(GroupError::InvalidElement(
                "residue tuples only apply to abelian products",
            )),
            (_, ElementSpec::Index(i)) => {
                if *i < self.order() {
                    Ok(*i)
                } else {
                    Err(GroupError::InvalidElement("element index out of range"))
                }
            }
        }
    }

    fn from_kind(kind: &GroupKind) -> Result<Self, GroupError> {
        match kind {
            GroupKind::HypercubeZ2d { dim } => {
                if *dim > MAX_GRAPH_DIM {
                    return Err(GroupError::TooLarge("hypercube dimension above 24"));
                }
                Ok(FiniteGroup::Hypercube { dim: *dim })
            }
            GroupKind::AbelianProduct { moduli } => {
                if moduli.contains(&0) {
                    return Err(GroupError::InvalidElement("moduli must be positive"));
                }
                let order = moduli
                    .iter()
                    .try_fold(1u64, |acc, &m| acc.checked_mul(m as u64))
                    .unwrap_or(u64::MAX);
                if order > MAX_ABELIAN_ORDER {
                    return Err(GroupError::TooLarge("abelian product above 2^24 elements"));
                }
                Ok(FiniteGroup::Abelian {
                    moduli: moduli.clone(),
                })
            }
            GroupKind::ExplicitTable { table } => Self::from_table(table),
        }
    }

    fn from_table(rows: &[Vec<u32>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table"));
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge("explicit table above 4096 elements"));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GroupError::InvalidTable("table is not square"));
            }
            if row.iter().any(|&x| x as usize >= n) {
                return Err(GroupError::InvalidTable("entry out of range"));
            }
            table.extend_from_slice(row);
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] {
                    return Err(GroupError::InvalidTable("row repeats an element"));
                }
                seen[x] = true;
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] {
                    return Err(GroupError::InvalidTable("column repeats an element"));
                }
                seen[x] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a)
            })
            .ok_or(GroupError::InvalidTable("no two-sided identity"))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or(GroupError::InvalidTable("element without inverse"))?
                as u32;
        }
        Ok(FiniteGroup::Table {
            order: n,
            identity: identity as u32,
            table,
            inverse,
        })
    }

    /// Light's associativity test against a generating set.
    fn check_associative_on(&self, gens: &[u64]) -> Result<(), GroupError> {
        if let FiniteGroup::Table { order, .. } = self {
            let n = *order as u64;
            for &g in gens {
                for x in 0..n {
                    let xg = self.mul(x, g);
                    for y in 0..n {
                        if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                            return Err(GroupError::InvalidTable(
                                "multiplication is not associative",
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct CosetTable {
    /// element → vertex.
    vertex_of: Vec<Vertex>,
    /// vertex → canonical (minimum) element of the coset.
    rep: Vec<u64>,
}

/// A connected, regular Cayley coset graph with generator-labelled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    group: FiniteGroup,
    generators: Vec<u64>,
    subgroup: Vec<u64>,
    cosets: Option<CosetTable>,
    bidirectional: bool,
}

/// Builds `G(Γ, Δ, H)`, checking every condition a coset graph needs.
pub fn build_cayley_graph(spec: &GroupSpec) -> Result<CayleyGraph, GroupError> {
    let group = FiniteGroup::from_kind(&spec.kind)?;
    let identity = group.identity();

    let mut generators = spec
        .generators
        .iter()
        .map(|g| group.encode(g))
        .collect::<Result<Vec<_>, _>>()?;
    if generators.is_empty() {
        if let FiniteGroup::Hypercube { dim } = group {
            generators = (0..dim).map(|i| 1u64 << i).collect();
        }
    }

    let subgroup_gens = spec
        .subgroup
        .iter()
        .map(|g| group.encode(g))
        .collect::<Result<Vec<_>, _>>()?;

    let mut assoc_gens = generators.clone();
    assoc_gens.extend_from_slice(&subgroup_gens);
    group.check_associative_on(&assoc_gens)?;

    let subgroup = closure(&group, &subgroup_gens);
    let h_set: BTreeSet<u64> = subgroup.iter().copied().collect();

    let cosets = if subgroup.len() > 1 {
        Some(coset_table(&group, &subgroup))
    } else {
        None
    };
    let coset_of = |x: u64| -> u64 {
        match &cosets {
            Some(t) => t.vertex_of[x as usize] as u64,
            None => x,
        }
    };

    for (i, &g) in generators.iter().enumerate() {
        if g == identity || h_set.contains(&g) {
            return Err(GroupError::IdentityGenerator(i));
        }
    }
    for i in 0..generators.len() {
        for j in 0..i {
            if coset_of(generators[i]) == coset_of(generators[j]) {
                return Err(GroupError::DuplicateGenerator(j, i));
            }
        }
    }

    // (i): Δ ∪ H generates Γ.
    let order = group.order();
    let reached = match &group {
        FiniteGroup::Hypercube { .. } => 1u64 << gf2_rank(&generators),
        _ => {
            let mut all = generators.clone();
            all.extend_from_slice(&subgroup_gens);
            closure(&group, &all).len() as u64
        }
    };
    if reached != order {
        return Err(GroupError::NotGenerating { reached, order });
    }

    // (ii): HΔ ⊆ ΔH.
    let delta_h: BTreeSet<u64> = generators.iter().map(|&g| coset_of(g)).collect();
    for &h in &subgroup {
        for (i, &g) in generators.iter().enumerate() {
            if !delta_h.contains(&coset_of(group.mul(h, g))) {
                return Err(GroupError::CosetConditionViolated {
                    subgroup_elem: h,
                    generator: i,
                });
            }
        }
    }

    let bidirectional = generators
        .iter()
        .all(|&g| delta_h.contains(&coset_of(group.inv(g))));

    Ok(CayleyGraph {
        group,
        generators,
        subgroup,
        cosets,
        bidirectional,
    })
}

fn closure(group: &FiniteGroup, gens: &[u64]) -> Vec<u64> {
    let id = group.identity();
    let mut seen = BTreeSet::new();
    seen.insert(id);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn coset_table(group: &FiniteGroup, subgroup: &[u64]) -> CosetTable {
    let n = group.order() as usize;
    let mut vertex_of = vec![Vertex::MAX; n];
    let mut rep = Vec::new();
    for g in 0..n as u64 {
        if vertex_of[g as usize] != Vertex::MAX {
            continue;
        }
        // g is the smallest element of its coset since we scan upwards.
        let v = rep.len() as Vertex;
        rep.push(g);
        for &h in subgroup {
            vertex_of[group.mul(g, h) as usize] = v;
        }
    }
    CosetTable { vertex_of, rep }
}

fn gf2_rank(vectors: &[u64]) -> u32 {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &v in vectors {
        let mut x = v;
        for bit in (0..64).rev() {
            if x >> bit & 1 == 0 {
                continue;
            }
            if basis[bit] == 0 {
                basis[bit] = x;
                rank += 1;
                break;
            }
            x ^= basis[bit];
        }
    }
    rank
}

impl CayleyGraph {
    pub fn vertex_count(&self) -> usize {
        match &self.cosets {
            Some(t) => t.rep.len(),
            None => self.group.order() as usize,
        }
    }

    pub fn degree(&self) -> usize {
        self.generators.len()
    }

    pub fn is_bidirectional(&self) -> bool {
        self.bidirectional
    }

    /// True when H is trivial, i.e. vertices are group elements.
    pub fn is_cayley(&self) -> bool {
        self.cosets.is_none()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    /// Hypercube dimension when the graph is `Q_d` with its canonical generators.
    pub fn hypercube_dim(&self) -> Option<u32> {
        match self.group {
            FiniteGroup::Hypercube { dim }
                if self.cosets.is_none()
                    && self
                        .generators
                        .iter()
                        .enumerate()
                        .all(|(i, &g)| g == 1 << i) =>
            {
                Some(dim)
            }
            _ => None,
        }
    }

    /// Canonical coset label: the minimum element index in the coset.
    pub fn label(&self, v: Vertex) -> u64 {
        match &self.cosets {
            Some(t) => t.rep[v as usize],
            None => v as u64,
        }
    }

    pub fn vertex_of_element(&self, g: u64) -> Vertex {
        match &self.cosets {
            Some(t) => t.vertex_of[g as usize],
            None => g as Vertex,
        }
    }

    pub fn identity_vertex(&self) -> Vertex {
        self.vertex_of_element(self.group.identity())
    }

    /// Endpoint of the edge leaving `v` along generator `gen`.
    pub fn neighbor(&self, v: Vertex, gen: usize) -> Vertex {
        let g = self.label(v);
        self.vertex_of_element(self.group.mul(g, self.generators[gen]))
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        (0..self.generators.len()).map(move |i| (self.neighbor(v, i), i))
    }

    /// Generator index of the edge `u → v`, if there is one.
    pub fn edge_generator(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.out_neighbors(u).find(|&(w, _)| w == v).map(|(_, i)| i)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.vertex_count() && self.edge_generator(u, v).is_some()
    }

    /// All `(src, dst, generator)` triples.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, usize)> + '_ {
        (0..self.vertex_count() as Vertex)
            .flat_map(move |u| self.out_neighbors(u).map(move |(v, g)| (u, v, g)))
    }

    /// Left translation `v ↦ g·v`; `None` on coset graphs.
    pub fn translate(&self, g: Vertex, v: Vertex) -> Option<Vertex> {
        if self.cosets.is_some() {
            return None;
        }
        Some(self.group.mul(g as u64, v as u64) as Vertex)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GroupError> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(GroupError::InvalidVertex(v as u64))
        }
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for (v, _) in self.out_neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Length of a shortest directed path `u → v`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<u32, GroupError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if let FiniteGroup::Hypercube { .. } = self.group {
            if self.hypercube_dim().is_some() {
                return Ok((u ^ v).count_ones());
            }
        }
        match self.bfs(u)[v as usize] {
            u32::MAX => Err(GroupError::Unreachable { from: u, to: v }),
            d => Ok(d),
        }
    }

    /// Greatest distance between two vertices.
    ///
    /// Coset graphs are vertex transitive (Γ acts on the cosets by left
    /// multiplication), so the eccentricity of one vertex is the diameter.
    pub fn diameter(&self) -> u32 {
        if let Some(d) = self.hypercube_dim() {
            return d;
        }
        self.bfs(self.identity_vertex())
            .into_iter()
            .max()
            .unwrap_or(0)
    }

    /// `{u : distance(v, u) ≤ radius}`, sorted.
    pub fn ball(&self, v: Vertex, radius: u32) -> Result<Vec<Vertex>, GroupError> {
        self.check_vertex(v)?;
        Ok(self
            .bfs(v)
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d <= radius)
            .map(|(u, _)| u as Vertex)
            .collect())
    }

    /// Dense 0/1 adjacency matrix, row-major, `a[u * P + v] = 1` iff `u → v`.
    pub fn adjacency(&self) -> Vec<u8> {
        let p = self.vertex_count();
        let mut a = vec![0u8; p * p];
        for (u, v, _) in self.edges() {
            a[u as usize * p + v as usize] = 1;
        }
        a
    }
}

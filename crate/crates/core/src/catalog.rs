//! Spherical Coxeter graphs, their numbering, and the per-type data used
//! throughout: Coxeter number, center exponent κ, |W| and the Δ/δ words.
//!
//! Numbering conventions:
//! - `A_n`: chain s1–s2–⋯–sn, all labels 3.
//! - `B_n`: chain with label 4 on {s1, s2}.
//! - `D_n`: s1 and s2 both joined to s3, then the chain s3–s4–⋯–sn.
//! - `E_n`: chain s1–⋯–s(n-1), with sn joined to s3.
//! - `F_4`: chain with labels (3, 4, 3).
//! - `H_3`, `H_4`: label 5 on {s1, s2}, label 3 further along the chain.
//! - `I_2(p)`: two generators with label p ≥ 5.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{pi_word, Presentation, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
}

/// A connected spherical type such as `D4` or `I2(7)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    /// Dihedral label, only for `I2`.
    pub p: Option<u32>,
}

impl CoxeterType {
    /// Validates the parameters. `I2(3)` and `I2(4)` normalise to `A2`, `B2`.
    pub fn new(family: Family, rank: usize, p: Option<u32>) -> Result<CoxeterType> {
        let bad = |why: &str| Err(Error::InvalidParameter(format!("illegal rank: {why}")));
        match family {
            Family::A if rank >= 1 => {}
            Family::B if rank >= 2 => {}
            Family::D if rank >= 4 => {}
            Family::E if (6..=8).contains(&rank) => {}
            Family::F if rank == 4 => {}
            Family::H if rank == 3 || rank == 4 => {}
            Family::I2 => {
                let Some(p) = p else {
                    return bad("I2 needs a label");
                };
                return match p {
                    3 => Ok(CoxeterType::simple(Family::A, 2)),
                    4 => Ok(CoxeterType::simple(Family::B, 2)),
                    p if p >= 5 => Ok(CoxeterType {
                        family,
                        rank: 2,
                        p: Some(p),
                    }),
                    _ => bad(&format!("I2({p}) needs p ≥ 3")),
                };
            }
            _ => return bad(&format!("{family:?}{rank}")),
        }
        if p.is_some() {
            return bad("only I2 takes a label");
        }
        Ok(CoxeterType::simple(family, rank))
    }

    fn simple(family: Family, rank: usize) -> CoxeterType {
        CoxeterType {
            family,
            rank,
            p: None,
        }
    }

    pub fn a(n: usize) -> CoxeterType {
        CoxeterType::new(Family::A, n, None).expect("valid A_n")
    }
    pub fn b(n: usize) -> CoxeterType {
        CoxeterType::new(Family::B, n, None).expect("valid B_n")
    }
    pub fn d(n: usize) -> CoxeterType {
        CoxeterType::new(Family::D, n, None).expect("valid D_n")
    }
    pub fn e(n: usize) -> CoxeterType {
        CoxeterType::new(Family::E, n, None).expect("valid E_n")
    }
    pub fn f4() -> CoxeterType {
        CoxeterType::simple(Family::F, 4)
    }
    pub fn h(n: usize) -> CoxeterType {
        CoxeterType::new(Family::H, n, None).expect("valid H_n")
    }
    pub fn i2(p: u32) -> CoxeterType {
        CoxeterType::new(Family::I2, 2, Some(p)).expect("valid I2(p)")
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.p.unwrap_or(0)),
            fam => write!(f, "{:?}{}", fam, self.rank),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoxeterType> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("I2(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed label in {s:?}")))?;
            let p: u32 = inner
                .parse()
                .map_err(|_| Error::Parse(format!("bad dihedral label in {s:?}")))?;
            return CoxeterType::new(Family::I2, 2, Some(p));
        }
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('H') => Family::H,
            _ => return Err(Error::Parse(format!("unknown type {s:?}"))),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad rank in {s:?}")));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CoxeterType::new(family, rank, None)
    }
}

/// A Coxeter matrix: `m[s][s] = 1`, `m[s][t] = m[t][s] ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CoxeterGraph {
    pub n: usize,
    pub m: Vec<Vec<u32>>,
}

impl CoxeterGraph {
    pub fn new(m: Vec<Vec<u32>>) -> Result<CoxeterGraph> {
        let n = m.len();
        for (s, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(
                    "Coxeter matrix is not square".into(),
                ));
            }
            for (t, &v) in row.iter().enumerate() {
                if s == t && v != 1 {
                    return Err(Error::InvalidParameter(format!("m[{s}][{s}] must be 1")));
                }
                if s != t && (v < 2 || m[t][s] != v) {
                    return Err(Error::InvalidParameter(format!(
                        "m[{s}][{t}] must be symmetric and ≥ 2"
                    )));
                }
            }
        }
        Ok(CoxeterGraph { n, m })
    }

    /// Graph with all off-diagonal labels 2 and the given 1-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterGraph {
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t, v) in edges {
            m[s - 1][t - 1] = v;
            m[t - 1][s - 1] = v;
        }
        CoxeterGraph { n, m }
    }

    /// Parses `{"n": int, "m": [[int]]}`.
    pub fn from_json(text: &str) -> Result<CoxeterGraph> {
        let g: CoxeterGraph =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix json: {e}")))?;
        if g.m.len() != g.n {
            return Err(Error::InvalidParameter(format!(
                "\"n\" is {} but the matrix has {} rows",
                g.n,
                g.m.len()
            )));
        }
        CoxeterGraph::new(g.m)
    }

    /// Label between 1-based generators.
    pub fn label(&self, s: usize, t: usize) -> u32 {
        self.m[s - 1][t - 1]
    }

    /// Subgraph induced on the given 1-based vertices, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> CoxeterGraph {
        let m = vertices
            .iter()
            .map(|&s| vertices.iter().map(|&t| self.label(s, t)).collect())
            .collect();
        CoxeterGraph {
            n: vertices.len(),
            m,
        }
    }

    /// Components by edges with `m ≥ 3`; vertex lists are 1-based and sorted.
    pub fn connected_components(&self) -> Vec<(Vec<usize>, CoxeterGraph)> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v + 1);
                for w in 0..self.n {
                    if w != v && self.m[v][w] >= 3 && comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            let g = self.induced(&verts);
            out.push((verts, g));
        }
        out
    }

    /// For each component: its catalog entry with Δ and the centre generator
    /// δ written in this graph's generators.
    pub fn component_words(&self) -> Result<Vec<(CatalogEntry, Word, Word)>> {
        let mut out = Vec::new();
        for (verts, g) in self.connected_components() {
            let (entry, relabel) = g.identify()?;
            let mut back = vec![0; relabel.len()];
            for (local, &c) in relabel.iter().enumerate() {
                back[c - 1] = verts[local];
            }
            let big = entry.big_delta_word().relabel(&back);
            let small = entry.delta_word().relabel(&back);
            out.push((entry, big, small));
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Artin presentation: one relation Π(s,t,m) = Π(t,s,m) per pair s < t,
    /// optionally without the commutations (m = 2).
    pub fn artin_presentation(&self, include_commutations: bool) -> Presentation {
        let mut rels = Vec::new();
        for s in 1..=self.n {
            for t in s + 1..=self.n {
                let m = self.label(s, t) as usize;
                if m == 2 && !include_commutations {
                    continue;
                }
                rels.push((pi_word(s, t, m).unwrap(), pi_word(t, s, m).unwrap()));
            }
        }
        Presentation::new(self.n, rels).expect("Artin relations are positive")
    }

    /// `identify` for a connected graph: the catalog type and a relabeling
    /// `relabel[v-1] = catalog generator` for each vertex `v`.
    pub fn identify(&self) -> Result<(CatalogEntry, Vec<usize>)> {
        if self.n == 0 {
            return Err(Error::NotSpherical("empty graph".into()));
        }
        if !self.is_connected() {
            return Err(Error::InvalidParameter(
                "identify needs a connected graph".into(),
            ));
        }
        for ty in candidate_types(self) {
            let entry = CatalogEntry::new(ty);
            if let Some(map) = find_isomorphism(self, &entry.graph) {
                return Ok((entry, map));
            }
        }
        Err(Error::NotSpherical(format!(
            "no spherical type matches {:?}",
            self.m
        )))
    }
}

fn candidate_types(g: &CoxeterGraph) -> Vec<CoxeterType> {
    let n = g.n;
    let mut out = Vec::new();
    if n == 2 {
        let m = g.m[0][1];
        if m >= 3 {
            out.push(CoxeterType::new(Family::I2, 2, Some(m)).unwrap());
        }
        return out;
    }
    for (fam, ok) in [
        (Family::A, n >= 1),
        (Family::B, n >= 2),
        (Family::D, n >= 4),
        (Family::E, (6..=8).contains(&n)),
        (Family::F, n == 4),
        (Family::H, n == 3 || n == 4),
    ] {
        if ok {
            out.push(CoxeterType::new(fam, n, None).unwrap());
        }
    }
    out
}

/// Backtracking search for a label-preserving bijection `g → target`;
/// returns the lexicographically first one.
fn find_isomorphism(g: &CoxeterGraph, target: &CoxeterGraph) -> Option<Vec<usize>> {
    if g.n != target.n {
        return None;
    }
    let n = g.n;
    let mut sorted_g: Vec<Vec<u32>> = g.m.clone();
    let mut sorted_t: Vec<Vec<u32>> = target.m.clone();
    sorted_g.iter_mut().for_each(|r| r.sort_unstable());
    sorted_t.iter_mut().for_each(|r| r.sort_unstable());
    let mut a = sorted_g.clone();
    let mut b = sorted_t.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        g: &CoxeterGraph,
        t: &CoxeterGraph,
        sg: &[Vec<u32>],
        st: &[Vec<u32>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g.n;
        if v == n {
            return true;
        }
        for c in 0..n {
            if used[c] || sg[v] != st[c] {
                continue;
            }
            if (0..v).all(|u| g.m[v][u] == t.m[c][map[u]]) {
                map[v] = c;
                used[c] = true;
                if rec(v + 1, g, t, sg, st, map, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    if rec(0, g, target, &sorted_g, &sorted_t, &mut map, &mut used) {
        Some(map.into_iter().map(|c| c + 1).collect())
    } else {
        None
    }
}

/// Static data for one connected spherical type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogEntry {
    pub ty: CoxeterType,
    pub graph: CoxeterGraph,
    /// Coxeter number.
    pub h: u32,
    /// δ = Δ^κ.
    pub kappa: u32,
    pub w_order: u64,
}

impl CatalogEntry {
    pub fn new(ty: CoxeterType) -> CatalogEntry {
        let n = ty.rank;
        let chain = |labels: &[u32]| {
            let edges: Vec<(usize, usize, u32)> = labels
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1, i + 2, v))
                .collect();
            CoxeterGraph::from_edges(labels.len() + 1, &edges)
        };
        let (graph, h, kappa, w_order) = match ty.family {
            Family::A => (
                chain(&vec![3; n - 1]),
                n as u32 + 1,
                if n >= 2 { 2 } else { 1 },
                factorial(n as u64 + 1),
            ),
            Family::B => {
                let mut labels = vec![3; n - 1];
                labels[0] = 4;
                (
                    chain(&labels),
                    2 * n as u32,
                    1,
                    (1u64 << n) * factorial(n as u64),
                )
            }
            Family::D => {
                let mut edges = vec![(1, 3, 3), (2, 3, 3)];
                edges.extend((3..n).map(|i| (i, i + 1, 3)));
                (
                    CoxeterGraph::from_edges(n, &edges),
                    2 * n as u32 - 2,
                    if n.is_multiple_of(2) { 1 } else { 2 },
                    (1u64 << (n - 1)) * factorial(n as u64),
                )
            }
            Family::E => {
                let mut edges: Vec<(usize, usize, u32)> =
                    (1..n - 1).map(|i| (i, i + 1, 3)).collect();
                edges.push((3, n, 3));
                let (h, kappa, order) = match n {
                    6 => (12, 2, 51_840),
                    7 => (18, 1, 2_903_040),
                    _ => (30, 1, 696_729_600),
                };
                (CoxeterGraph::from_edges(n, &edges), h, kappa, order)
            }
            Family::F => (chain(&[3, 4, 3]), 12, 1, 1152),
            Family::H => {
                let mut labels = vec![3; n - 1];
                labels[0] = 5;
                if n == 3 {
                    (chain(&labels), 10, 1, 120)
                } else {
                    (chain(&labels), 30, 1, 14_400)
                }
            }
            Family::I2 => {
                let p = ty.p.expect("I2 has a label");
                (chain(&[p]), p, if p % 2 == 1 { 2 } else { 1 }, 2 * p as u64)
            }
        };
        CatalogEntry {
            ty,
            graph,
            h,
            kappa,
            w_order,
        }
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// s1 s2 ⋯ sn.
    pub fn coxeter_word(&self) -> Word {
        Word::positive(&(1..=self.rank()).collect::<Vec<_>>())
    }

    /// Generator of the center: (s1⋯sn)^{h/2} if κ = 1, (s1⋯sn)^h if κ = 2.
    pub fn delta_word(&self) -> Word {
        let k = if self.kappa == 1 { self.h / 2 } else { self.h };
        self.coxeter_word().power(k as i64)
    }

    /// An explicit positive word for the Garside element Δ.
    pub fn big_delta_word(&self) -> Word {
        let n = self.rank();
        match self.ty.family {
            Family::A => {
                let mut gens = Vec::new();
                for top in (1..=n).rev() {
                    gens.extend(1..=top);
                }
                Word::positive(&gens)
            }
            Family::D => d_paris_delta(n),
            Family::E if n == 6 => Word::positive(&E6_DELTA),
            Family::I2 => pi_word(1, 2, self.h as usize).unwrap(),
            _ => self.coxeter_word().power(self.h as i64 / 2),
        }
    }

    /// For D_n: Δ^κ built from the product form of Δ.
    pub fn delta_word_from_big_delta(&self) -> Word {
        self.big_delta_word().power(self.kappa as i64)
    }

    /// z(δ) = n·h/2·κ.
    pub fn delta_exponent_sum(&self) -> i64 {
        (self.rank() as i64) * (self.h as i64) / 2 * self.kappa as i64
    }

    pub fn presentation(&self) -> Presentation {
        self.graph.artin_presentation(true)
    }
}

/// Δ = (sn ⋯ s3 s2 s1 s3 ⋯ sn) ⋯ (s3 s2 s1 s3)(s2 s1) in D_n.
pub fn d_paris_delta(n: usize) -> Word {
    let mut gens = Vec::new();
    for k in (3..=n).rev() {
        gens.extend((3..=k).rev());
        gens.extend([2, 1]);
        gens.extend(3..=k);
    }
    gens.extend([2, 1]);
    Word::positive(&gens)
}

/// A reduced word for the longest element of W(E6) in the catalog numbering.
const E6_DELTA: [usize; 36] = [
    1, 2, 1, 3, 2, 1, 4, 3, 2, 1, 5, 4, 3, 2, 1, 6, 3, 2, 1, 4, 3, 2, 5, 4, 3, 6, 3, 2, 1, 4, 3, 2,
    5, 4, 3, 6,
];

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// A disjoint union of connected spherical types, e.g. `A2+I2(7)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphSpec {
    pub components: Vec<CatalogEntry>,
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<GraphSpec> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty graph spec".into()));
        }
        let components = text
            .split('+')
            .map(|tok| tok.parse::<CoxeterType>().map(CatalogEntry::new))
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphSpec { components })
    }

    /// Identifies every component of a raw Coxeter matrix.
    pub fn from_graph(graph: &CoxeterGraph) -> Result<GraphSpec> {
        let components = graph
            .connected_components()
            .into_iter()
            .map(|(_, g)| g.identify().map(|(e, _)| e))
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphSpec { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(CatalogEntry::rank).sum()
    }

    /// Block-diagonal Coxeter matrix, components numbered consecutively.
    pub fn graph(&self) -> CoxeterGraph {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        let mut off = 0;
        for c in &self.components {
            for (i, row) in c.graph.m.iter().enumerate() {
                m[off + i][off..off + row.len()].copy_from_slice(row);
            }
            off += c.rank();
        }
        CoxeterGraph { n, m }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.ty.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Connected types of rank ≤ `max_rank` (dihedral labels up to `max_p`).
pub fn enumerate_types(max_rank: usize, max_p: u32) -> Vec<CoxeterType> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        for fam in [
            Family::A,
            Family::B,
            Family::D,
            Family::E,
            Family::F,
            Family::H,
        ] {
            if let Ok(t) = CoxeterType::new(fam, n, None) {
                out.push(t);
            }
        }
        if n == 2 {
            out.extend((5..=max_p).map(CoxeterType::i2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_entry() {
        let e = CatalogEntry::new(CoxeterType::f4());
        assert_eq!(e.graph.label(1, 2), 3);
        assert_eq!(e.graph.label(2, 3), 4);
        assert_eq!(e.graph.label(3, 4), 3);
        assert_eq!(e.graph.label(1, 3), 2);
        assert_eq!((e.h, e.kappa), (12, 1));
        assert_eq!(e.delta_word(), Word::positive(&[1, 2, 3, 4]).power(6));
        assert_eq!(e.delta_word().exponent_sum(), 24);
    }

    #[test]
    fn h3_entry() {
        let e = CatalogEntry::new(CoxeterType::h(3));
        assert_eq!(e.graph.label(1, 2), 5);
        assert_eq!(e.graph.label(2, 3), 3);
        assert_eq!(e.graph.label(1, 3), 2);
        assert_eq!(e.delta_word(), Word::positive(&[1, 2, 3]).power(5));
        assert_eq!(e.w_order, 120);
    }

    #[test]
    fn a1_entry() {
        let e = CatalogEntry::new(CoxeterType::a(1));
        assert_eq!(e.graph.n, 1);
        assert_eq!(e.presentation().relations.len(), 0);
        assert_eq!(e.delta_word(), Word::gen(1));
    }

    #[test]
    fn illegal_parameters() {
        assert!(CoxeterType::new(Family::D, 3, None).is_err());
        assert!(CoxeterType::new(Family::E, 9, None).is_err());
        assert!(CoxeterType::new(Family::F, 5, None).is_err());
        assert!(CoxeterType::new(Family::H, 2, None).is_err());
        assert!(CoxeterType::new(Family::A, 0, None).is_err());
        assert!(CoxeterType::new(Family::I2, 2, Some(2)).is_err());
        assert_eq!(CoxeterType::i2(3), CoxeterType::a(2));
        assert_eq!(CoxeterType::i2(4), CoxeterType::b(2));
    }

    #[test]
    fn presentations() {
        let a2 = CatalogEntry::new(CoxeterType::a(2)).presentation();
        assert_eq!(
            a2.relations,
            vec![(Word::positive(&[1, 2, 1]), Word::positive(&[2, 1, 2]))]
        );

        let i7 = CatalogEntry::new(CoxeterType::i2(7)).presentation();
        assert_eq!(i7.relations.len(), 1);
        assert_eq!(i7.relations[0].0.len(), 7);

        let d4 = CatalogEntry::new(CoxeterType::d(4));
        let p = d4.presentation();
        assert_eq!(p.relations.len(), 6);
        for j in [1, 2, 4] {
            let rel = (
                pi_word(j.min(3), j.max(3), 3).unwrap(),
                pi_word(j.max(3), j.min(3), 3).unwrap(),
            );
            assert!(
                p.relations.contains(&rel),
                "missing braid relation for s{j}"
            );
        }
        assert_eq!(d4.graph.artin_presentation(false).relations.len(), 3);
    }

    #[test]
    fn d4_paris_delta() {
        let d = d_paris_delta(4);
        assert_eq!(d, Word::positive(&[4, 3, 2, 1, 3, 4, 3, 2, 1, 3, 2, 1]));
        assert_eq!(d.exponent_sum(), 12);
        for n in 4..=8 {
            assert_eq!(d_paris_delta(n).len(), n * (n - 1));
        }
    }

    #[test]
    fn delta_exponent_sums() {
        for ty in enumerate_types(8, 12) {
            let e = CatalogEntry::new(ty);
            let n = e.rank() as i64;
            assert_eq!(
                e.delta_word().exponent_sum(),
                n * e.h as i64 / 2 * e.kappa as i64,
                "{ty}"
            );
            assert_eq!(e.delta_exponent_sum(), e.delta_word().exponent_sum());
            assert_eq!(
                e.big_delta_word().exponent_sum(),
                n * e.h as i64 / 2,
                "{ty}"
            );
        }
    }

    #[test]
    fn components() {
        let d4 = CatalogEntry::new(CoxeterType::d(4)).graph;
        assert_eq!(d4.connected_components().len(), 1);
        let a2a1 = CoxeterGraph::from_edges(3, &[(1, 2, 3)]);
        let comps = a2a1.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].0, vec![1, 2]);
        assert_eq!(comps[1].0, vec![3]);
        assert_eq!(
            CoxeterGraph::from_edges(4, &[])
                .connected_components()
                .len(),
            4
        );
    }

    #[test]
    fn identify_examples() {
        let chain = CoxeterGraph::from_edges(4, &[(1, 2, 3), (2, 3, 3), (3, 4, 3)]);
        let (e, map) = chain.identify().unwrap();
        assert_eq!(e.ty, CoxeterType::a(4));
        assert_eq!(map, vec![1, 2, 3, 4]);

        // D4 with the fork relabeled: centre at vertex 1.
        let d4 = CoxeterGraph::from_edges(4, &[(1, 2, 3), (1, 3, 3), (1, 4, 3)]);
        let (e, map) = d4.identify().unwrap();
        assert_eq!(e.ty, CoxeterType::d(4));
        assert_eq!(map[0], 3);
        for s in 1..=4 {
            for t in 1..=4 {
                assert_eq!(d4.label(s, t), e.graph.label(map[s - 1], map[t - 1]));
            }
        }

        let triangle = CoxeterGraph::from_edges(3, &[(1, 2, 3), (2, 3, 3), (1, 3, 3)]);
        assert!(matches!(triangle.identify(), Err(Error::NotSpherical(_))));

        let g2 = CoxeterGraph::from_edges(2, &[(1, 2, 6)]);
        assert_eq!(g2.identify().unwrap().0.ty, CoxeterType::i2(6));
    }

    #[test]
    fn identify_recovers_relabeled_catalog_graphs() {
        // a fixed cyclic shift of vertex labels
        for ty in enumerate_types(8, 9) {
            let e = CatalogEntry::new(ty);
            let n = e.rank();
            let perm: Vec<usize> = (0..n).map(|i| (i + 2) % n + 1).collect();
            let mut m = vec![vec![0; n]; n];
            for s in 0..n {
                for t in 0..n {
                    m[perm[s] - 1][perm[t] - 1] = e.graph.m[s][t];
                }
            }
            let g = CoxeterGraph::new(m).unwrap();
            assert_eq!(g.identify().unwrap().0.ty, ty);
        }
    }

    #[test]
    fn graph_spec_parsing() {
        assert_eq!(GraphSpec::parse("D4").unwrap().components.len(), 1);
        let s = GraphSpec::parse("A2+I2(7)").unwrap();
        assert_eq!(s.components[1].ty, CoxeterType::i2(7));
        assert_eq!(s.to_string(), "A2+I2(7)");
        assert!(matches!(
            GraphSpec::parse("E9"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(GraphSpec::parse("X3"), Err(Error::Parse(_))));
        assert!(matches!(GraphSpec::parse("A"), Err(Error::Parse(_))));
        assert_eq!(
            GraphSpec::parse("I2(4)").unwrap().components[0].ty,
            CoxeterType::b(2)
        );
    }

    #[test]
    fn matrix_json() {
        let g = CoxeterGraph::from_json(r#"{"n": 3, "m": [[1,3,2],[3,1,3],[2,3,1]]}"#).unwrap();
        assert_eq!(GraphSpec::from_graph(&g).unwrap().to_string(), "A3");
        assert!(CoxeterGraph::from_json(r#"{"n": 2, "m": [[1,3],[2,1]]}"#).is_err());
        assert!(CoxeterGraph::from_json(r#"{"n": 3, "m": [[1,3],[3,1]]}"#).is_err());
    }
}

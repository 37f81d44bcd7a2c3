//! Enumeration of a finite Coxeter group W by breadth-first search over an
//! exact faithful representation.
//!
//! Elements are numbered in BFS discovery order from the identity, with the
//! generators tried in ascending order, so two builds of the same graph give
//! identical tables. Lengths and descent sets come from the BFS table.

use std::collections::{HashMap, VecDeque};

use crate::catalog::{CatalogEntry, CoxeterGraph, CoxeterType};
use crate::error::{Error, Result};
use crate::garside::ring::{QuadRing, RingElem};
use crate::word::Word;

pub const DEFAULT_ENGINE_BOUND: u64 = 100_000;

/// An element of W, as an index into its engine's table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WElem(pub u32);

impl WElem {
    pub const IDENTITY: WElem = WElem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Exact representation used during enumeration.
#[derive(Clone, Debug)]
pub(crate) enum Representation {
    /// Reflection matrices σ_s(e_t) = e_t + 2cos(π/m_st)·e_s, row-major,
    /// each entry stored as two coordinates.
    Matrix {
        ring: QuadRing,
        n: usize,
        coeff: Vec<RingElem>,
    },
    /// Dihedral group of order 2p; elements (rotation, flip).
    Dihedral { p: i32 },
}

impl Representation {
    pub(crate) fn for_graph(graph: &CoxeterGraph) -> Result<Representation> {
        let n = graph.n;
        if n == 2 && graph.m[0][1] >= 5 {
            return Ok(Representation::Dihedral {
                p: graph.m[0][1] as i32,
            });
        }
        let ring = QuadRing::for_labels(graph.m.iter().flatten().copied())?;
        let mut coeff = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                coeff.push(ring.two_cos_pi_over(graph.m[s][t])?);
            }
        }
        Ok(Representation::Matrix { ring, n, coeff })
    }

    pub(crate) fn key_len(&self) -> usize {
        match self {
            Representation::Matrix { n, .. } => 2 * n * n,
            Representation::Dihedral { .. } => 2,
        }
    }

    pub(crate) fn identity(&self) -> Vec<i32> {
        match self {
            Representation::Matrix { n, .. } => {
                let mut k = vec![0; 2 * n * n];
                for i in 0..*n {
                    k[2 * (i * n + i)] = 1;
                }
                k
            }
            Representation::Dihedral { .. } => vec![0, 0],
        }
    }

    /// `x · s` (s is 0-based).
    pub(crate) fn right_gen(&self, x: &[i32], s: usize) -> Vec<i32> {
        match self {
            Representation::Matrix { ring, n, coeff } => {
                let n = *n;
                let mut out = x.to_vec();
                // column t += c_st · column s
                for t in 0..n {
                    let c = coeff[s * n + t];
                    if c == RingElem::ZERO {
                        continue;
                    }
                    for r in 0..n {
                        let src = RingElem {
                            a: x[2 * (r * n + s)],
                            b: x[2 * (r * n + s) + 1],
                        };
                        let add = ring.mul(c, src);
                        out[2 * (r * n + t)] += add.a;
                        out[2 * (r * n + t) + 1] += add.b;
                    }
                }
                out
            }
            Representation::Dihedral { p } => dihedral_mul(*p, (x[0], x[1]), dihedral_gen(s)),
        }
    }

    /// `s · x` (s is 0-based).
    pub(crate) fn left_gen(&self, s: usize, x: &[i32]) -> Vec<i32> {
        match self {
            Representation::Matrix { ring, n, coeff } => {
                let n = *n;
                let mut out = x.to_vec();
                // row s += Σ_t c_st · row t
                for c in 0..n {
                    let mut acc = RingElem::ZERO;
                    for t in 0..n {
                        let k = coeff[s * n + t];
                        if k == RingElem::ZERO {
                            continue;
                        }
                        let v = RingElem {
                            a: x[2 * (t * n + c)],
                            b: x[2 * (t * n + c) + 1],
                        };
                        acc = ring.add(acc, ring.mul(k, v));
                    }
                    out[2 * (s * n + c)] += acc.a;
                    out[2 * (s * n + c) + 1] += acc.b;
                }
                out
            }
            Representation::Dihedral { p } => {
                let (a, f) = dihedral_gen(s);
                dihedral_mul(*p, (a, f), (x[0], x[1]))
            }
        }
    }
}

fn dihedral_gen(s: usize) -> (i32, i32) {
    // s1 = σ, s2 = ρσ
    if s == 0 {
        (0, 1)
    } else {
        (1, 1)
    }
}

fn dihedral_mul(p: i32, (a, f): (i32, i32), (b, g): (i32, i32)) -> Vec<i32> {
    // ρ^a σ^f · ρ^b σ^g = ρ^{a ± b} σ^{f+g}
    let k = if f == 0 { a + b } else { a - b };
    vec![k.rem_euclid(p), (f + g) % 2]
}

/// The enumerated Coxeter group with multiplication tables.
#[derive(Clone, Debug)]
pub struct WEngine {
    pub(crate) ty: Option<CoxeterType>,
    pub(crate) graph: CoxeterGraph,
    pub(crate) n: usize,
    pub(crate) rmul: Vec<u32>,
    pub(crate) lmul: Vec<u32>,
    pub(crate) length: Vec<u16>,
    pub(crate) parent: Vec<u32>,
    pub(crate) last: Vec<u8>,
    pub(crate) inverse: Vec<u32>,
    pub(crate) tau: Vec<u32>,
    pub(crate) tau_gen: Vec<usize>,
    pub(crate) ldesc: Vec<u16>,
    pub(crate) rdesc: Vec<u16>,
    pub(crate) w0: u32,
    pub(crate) keys: Vec<i32>,
    pub(crate) key_len: usize,
}

impl WEngine {
    /// Enumerates W for a catalog type, refusing types whose order exceeds
    /// `bound`.
    pub fn for_type(ty: CoxeterType, bound: u64) -> Result<WEngine> {
        let entry = CatalogEntry::new(ty);
        if entry.w_order > bound {
            return Err(Error::BoundExceeded {
                what: ty.to_string(),
                needed: entry.w_order,
                bound,
            });
        }
        let mut e = WEngine::build(&entry.graph, bound)?;
        e.ty = Some(ty);
        Ok(e)
    }

    /// Enumerates W for a connected spherical graph.
    pub fn build(graph: &CoxeterGraph, bound: u64) -> Result<WEngine> {
        if graph.n == 0 || graph.n > 16 {
            return Err(Error::InvalidParameter(format!(
                "engine needs 1..=16 generators, got {}",
                graph.n
            )));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidParameter(
                "engine needs a connected graph".into(),
            ));
        }
        let rep = Representation::for_graph(graph)?;
        let n = graph.n;
        let key_len = rep.key_len();
        let mut index: HashMap<Vec<i32>, u32> = HashMap::new();
        let mut keys: Vec<i32> = Vec::new();
        let mut rmul: Vec<u32> = Vec::new();
        let mut length: Vec<u16> = Vec::new();
        let mut parent: Vec<u32> = Vec::new();
        let mut last: Vec<u8> = Vec::new();

        let id = rep.identity();
        index.insert(id.clone(), 0);
        keys.extend_from_slice(&id);
        length.push(0);
        parent.push(0);
        last.push(u8::MAX);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let xk = keys[x as usize * key_len..(x as usize + 1) * key_len].to_vec();
            for s in 0..n {
                let y = rep.right_gen(&xk, s);
                let next = index.len() as u32;
                let yi = *index.entry(y.clone()).or_insert(next);
                if yi == next {
                    if next as u64 >= bound {
                        return Err(Error::BoundExceeded {
                            what: format!("graph {:?}", graph.m),
                            needed: next as u64 + 1,
                            bound,
                        });
                    }
                    keys.extend_from_slice(&y);
                    length.push(length[x as usize] + 1);
                    parent.push(x);
                    last.push(s as u8);
                    queue.push_back(yi);
                }
                rmul.push(yi);
            }
        }
        let size = length.len();
        let mut lmul = Vec::with_capacity(size * n);
        for x in 0..size {
            let xk = &keys[x * key_len..(x + 1) * key_len];
            for s in 0..n {
                let y = rep.left_gen(s, xk);
                let yi = *index.get(&y).ok_or_else(|| {
                    Error::InvalidParameter("left multiplication left the enumerated set".into())
                })?;
                lmul.push(yi);
            }
        }
        drop(index);
        Ok(WEngine::from_tables(
            None,
            graph.clone(),
            rmul,
            lmul,
            length,
            parent,
            last,
            keys,
            key_len,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_tables(
        ty: Option<CoxeterType>,
        graph: CoxeterGraph,
        rmul: Vec<u32>,
        lmul: Vec<u32>,
        length: Vec<u16>,
        parent: Vec<u32>,
        last: Vec<u8>,
        keys: Vec<i32>,
        key_len: usize,
    ) -> WEngine {
        let n = graph.n;
        let size = length.len();
        let mut ldesc = vec![0u16; size];
        let mut rdesc = vec![0u16; size];
        for x in 0..size {
            for s in 0..n {
                if length[rmul[x * n + s] as usize] < length[x] {
                    rdesc[x] |= 1 << s;
                }
                if length[lmul[x * n + s] as usize] < length[x] {
                    ldesc[x] |= 1 << s;
                }
            }
        }
        let mut inverse = vec![0u32; size];
        for x in 1..size {
            // x = p·s ⇒ x⁻¹ = s·p⁻¹
            let p = parent[x] as usize;
            inverse[x] = lmul[inverse[p] as usize * n + last[x] as usize];
        }
        let w0 = (0..size).max_by_key(|&x| length[x]).unwrap_or(0) as u32;
        let mut e = WEngine {
            ty,
            graph,
            n,
            rmul,
            lmul,
            length,
            parent,
            last,
            inverse,
            tau: Vec::new(),
            tau_gen: Vec::new(),
            ldesc,
            rdesc,
            w0,
            keys,
            key_len,
        };
        // τ(s) = w0 s w0 is again a generator
        e.tau_gen = (0..n)
            .map(|s| {
                let g = e.mul(e.mul(WElem(w0), e.generator(s + 1)), WElem(w0));
                e.last[g.index()] as usize
            })
            .collect();
        let mut tau = vec![0u32; size];
        for x in 1..size {
            let p = e.parent[x] as usize;
            tau[x] = e.rmul[tau[p] as usize * n + e.tau_gen[e.last[x] as usize]];
        }
        e.tau = tau;
        e
    }

    pub fn coxeter_type(&self) -> Option<CoxeterType> {
        self.ty
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    pub fn identity(&self) -> WElem {
        WElem::IDENTITY
    }

    pub fn w0(&self) -> WElem {
        WElem(self.w0)
    }

    /// The simple reflection s_g (1-based).
    pub fn generator(&self, g: usize) -> WElem {
        WElem(self.rmul[g - 1])
    }

    pub fn length(&self, x: WElem) -> usize {
        self.length[x.index()] as usize
    }

    /// Left descents as a bitmask (bit s-1 for s_s).
    pub fn left_descents(&self, x: WElem) -> u16 {
        self.ldesc[x.index()]
    }

    pub fn right_descents(&self, x: WElem) -> u16 {
        self.rdesc[x.index()]
    }

    #[inline]
    pub fn mul_gen_right(&self, x: WElem, g: usize) -> WElem {
        WElem(self.rmul[x.index() * self.n + g - 1])
    }

    #[inline]
    pub fn mul_gen_left(&self, g: usize, x: WElem) -> WElem {
        WElem(self.lmul[x.index() * self.n + g - 1])
    }

    /// `u · v`, by left-multiplying `v` with the letters of `u`.
    pub fn mul(&self, u: WElem, v: WElem) -> WElem {
        let mut cur = v.0;
        let mut x = u.index();
        while x != 0 {
            cur = self.lmul[cur as usize * self.n + self.last[x] as usize];
            x = self.parent[x] as usize;
        }
        WElem(cur)
    }

    pub fn inverse(&self, x: WElem) -> WElem {
        WElem(self.inverse[x.index()])
    }

    /// τ(x) = w0·x·w0.
    pub fn tau(&self, x: WElem) -> WElem {
        WElem(self.tau[x.index()])
    }

    /// τ on generators (1-based).
    pub fn tau_generator(&self, g: usize) -> usize {
        self.tau_gen[g - 1] + 1
    }

    /// The BFS-tree reduced word of x.
    pub fn reduced_word(&self, x: WElem) -> Word {
        let mut gens = Vec::with_capacity(self.length(x));
        let mut i = x.index();
        while i != 0 {
            gens.push(self.last[i] as usize + 1);
            i = self.parent[i] as usize;
        }
        gens.reverse();
        Word::positive(&gens)
    }

    /// θ: the image of an Artin word in W (inverse letters map like positive).
    pub fn theta(&self, w: &Word) -> Result<WElem> {
        let mut x = WElem::IDENTITY;
        for l in w.letters() {
            let g = l.generator();
            if g == 0 || g > self.n {
                return Err(Error::MissingAssignment(g));
            }
            x = self.mul_gen_right(x, g);
        }
        Ok(x)
    }

    /// Greatest common prefix in the left weak order.
    pub fn meet_weak(&self, u: WElem, v: WElem) -> WElem {
        let (mut u, mut v) = (u, v);
        let mut acc = WElem::IDENTITY;
        loop {
            let common = self.ldesc[u.index()] & self.ldesc[v.index()];
            if common == 0 {
                return acc;
            }
            let g = common.trailing_zeros() as usize + 1;
            acc = self.mul_gen_right(acc, g);
            u = self.mul_gen_left(g, u);
            v = self.mul_gen_left(g, v);
        }
    }

    /// `u ≤_L v`: u is a prefix of v with lengths adding up.
    pub fn weak_le(&self, u: WElem, v: WElem) -> bool {
        let rest = self.mul(self.inverse(u), v);
        self.length(u) + self.length(rest) == self.length(v)
    }

    /// ∂a = a⁻¹·w0.
    pub fn complement(&self, a: WElem) -> WElem {
        self.mul(self.inverse(a), self.w0())
    }
}

//! Permutations of small degree, signed permutations and subgroup closure.
//!
//! Points are stored 0-based; text I/O uses 1-based disjoint-cycle notation,
//! e.g. `(1,2)(3,4)(5,6)`. Products apply the right operand first:
//! `p.compose(&q)` maps `i` to `p(q(i))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::word::GroupElement;

pub const MAX_DEGREE: usize = 16;

/// A permutation of `{0, .., degree-1}`. Entries past `degree` are fixed
/// points so that the derived ordering is lexicographic on one-line images.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

const IDENTITY_IMAGES: [u8; MAX_DEGREE] = {
    let mut a = [0u8; MAX_DEGREE];
    let mut i = 0;
    while i < MAX_DEGREE {
        a[i] = i as u8;
        i += 1;
    }
    a
};

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Perm {
            degree: degree as u8,
            images: IDENTITY_IMAGES,
        }
    }

    /// Builds a permutation from 0-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Perm::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x] = true;
            p.images[i] = x as u8;
        }
        Ok(p)
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut p = Perm::identity(degree);
        let mut used = [false; MAX_DEGREE];
        for cycle in cycles {
            for &x in cycle.iter() {
                if x == 0 || x > degree {
                    return Err(Error::Parse(format!("point {x} out of range 1..={degree}")));
                }
                if used[x - 1] {
                    return Err(Error::Parse(format!("repeated point {x}")));
                }
                used[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                p.images[x - 1] = (y - 1) as u8;
            }
        }
        Ok(p)
    }

    /// Transposition of two 1-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Perm {
        Perm::from_cycles(degree, &[&[a, b]]).expect("valid transposition")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree()]
    }

    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_IMAGES
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        let mut images = IDENTITY_IMAGES;
        for i in 0..self.degree() {
            images[i] = self.images[other.images[i] as usize];
        }
        Perm {
            degree: self.degree,
            images,
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = IDENTITY_IMAGES;
        for i in 0..self.degree() {
            images[self.images[i] as usize] = i as u8;
        }
        Perm {
            degree: self.degree,
            images,
        }
    }

    /// `g · p · g⁻¹`.
    pub fn conjugate(g: &Perm, p: &Perm) -> Result<Perm> {
        if g.degree != p.degree {
            return Err(Error::DegreeMismatch(g.degree(), p.degree()));
        }
        Ok(Perm::conjugate_unchecked(g, p))
    }

    #[inline]
    pub(crate) fn conjugate_unchecked(g: &Perm, p: &Perm) -> Perm {
        // (g p g⁻¹)(g(i)) = g(p(i))
        let mut images = IDENTITY_IMAGES;
        for i in 0..p.degree() {
            images[g.images[i] as usize] = g.images[p.images[i] as usize];
        }
        Perm {
            degree: p.degree,
            images,
        }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles (0-based), each starting at its least point, sorted by
    /// least point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths (a partition of the degree).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose_unchecked(other) == other.compose_unchecked(self)
    }

    /// Every element of the centralizer of `self` in the symmetric group,
    /// generated directly from the cycle structure.
    pub fn centralizer(&self) -> Vec<Perm> {
        let cycles = self.cycles();
        let n = self.degree();
        let mut out = Vec::new();
        let mut used = vec![false; cycles.len()];
        let mut images = IDENTITY_IMAGES;
        fn rec(
            idx: usize,
            cycles: &[Vec<usize>],
            used: &mut [bool],
            images: &mut [u8; MAX_DEGREE],
            n: usize,
            out: &mut Vec<Perm>,
        ) {
            if idx == cycles.len() {
                out.push(Perm {
                    degree: n as u8,
                    images: *images,
                });
                return;
            }
            let src = &cycles[idx];
            let len = src.len();
            for j in 0..cycles.len() {
                if used[j] || cycles[j].len() != len {
                    continue;
                }
                used[j] = true;
                let dst = &cycles[j];
                for rot in 0..len {
                    for k in 0..len {
                        images[src[k]] = dst[(k + rot) % len] as u8;
                    }
                    rec(idx + 1, cycles, used, images, n, out);
                }
                used[j] = false;
            }
        }
        rec(0, &cycles, &mut used, &mut images, n, &mut out);
        out
    }

    /// All permutations of the given degree in lexicographic order.
    pub fn all(degree: usize) -> Vec<Perm> {
        assert!(degree <= MAX_DEGREE);
        let mut cur: Vec<u8> = (0..degree as u8).collect();
        let mut out = Vec::new();
        loop {
            let mut images = IDENTITY_IMAGES;
            images[..degree].copy_from_slice(&cur);
            out.push(Perm {
                degree: degree as u8,
                images,
            });
            // next lexicographic permutation
            let Some(i) = (1..degree).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..degree).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// The lexicographically least permutation with the given cycle type.
    pub fn min_of_cycle_type(degree: usize, cycle_type: &[usize]) -> Perm {
        // Conjugacy classes are parametrised by cycle type; the lex-least
        // element is found by scanning its class representative's orbit
        // structure greedily: place long cycles on the earliest points.
        let mut lens = cycle_type.to_vec();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        let mut best: Option<Perm> = None;
        // The orderings of cycle lengths along consecutive points give all
        // candidates of the form (1..a)(a+1..a+b)...; lex-min is among them.
        let mut orders = Vec::new();
        permutations_unique(
            &lens,
            &mut Vec::new(),
            &mut vec![false; lens.len()],
            &mut orders,
        );
        for order in orders {
            let mut images = IDENTITY_IMAGES;
            let mut start = 0usize;
            for &l in &order {
                for k in 0..l {
                    images[start + k] = (start + (k + 1) % l) as u8;
                }
                start += l;
            }
            let p = Perm {
                degree: degree as u8,
                images,
            };
            if best.is_none_or(|b| p < b) {
                best = Some(p);
            }
        }
        best.unwrap_or_else(|| Perm::identity(degree))
    }

    /// Some `g` with `g·self·g⁻¹ = other`, if the two are conjugate.
    pub fn conjugator_to(&self, other: &Perm) -> Option<Perm> {
        if self.degree != other.degree {
            return None;
        }
        let mut src = self.cycles();
        let mut dst = other.cycles();
        src.sort_by_key(Vec::len);
        dst.sort_by_key(Vec::len);
        if src.iter().map(Vec::len).ne(dst.iter().map(Vec::len)) {
            return None;
        }
        // g sends the k-th point of each cycle to the k-th point of its partner
        let mut g = Perm::identity(self.degree());
        for (a, b) in src.iter().zip(&dst) {
            for (&x, &y) in a.iter().zip(b) {
                g.images[x] = y as u8;
            }
        }
        Some(g)
    }

    /// |C(self)| = ∏ k^{m_k} · m_k! over cycle lengths k with multiplicity m_k.
    pub fn centralizer_order(&self) -> u64 {
        let t = self.cycle_type();
        let mut out = 1u64;
        let mut i = 0;
        while i < t.len() {
            let k = t[i];
            let m = t[i..].iter().take_while(|&&x| x == k).count();
            out *= (k as u64).pow(m as u32) * (1..=m as u64).product::<u64>();
            i += m;
        }
        out
    }

    /// Parses 1-based disjoint-cycle notation; `""` and `"()"` are the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {text:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
            };
            let inner = &body[..close];
            rest = &body[close + 1..];
            if inner.is_empty() {
                continue;
            }
            let points = inner
                .split(',')
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(points);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(degree, &refs)
    }

    /// Canonical 1-based cycle notation: cycles sorted by least element,
    /// each starting at its least element, fixed points omitted.
    pub fn format_cycles(&self) -> String {
        let mut s = String::new();
        for c in self.cycles() {
            if c.len() < 2 {
                continue;
            }
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

fn permutations_unique(
    items: &[usize],
    cur: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    let mut tried = HashSet::new();
    for i in 0..items.len() {
        if used[i] || !tried.insert(items[i]) {
            continue;
        }
        used[i] = true;
        cur.push(items[i]);
        permutations_unique(items, cur, used, out);
        cur.pop();
        used[i] = false;
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_cycles())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_cycles())
    }
}

impl GroupElement for Perm {
    fn op(&self, other: &Self) -> Self {
        self.compose_unchecked(other)
    }
    fn inverse(&self) -> Self {
        Perm::inverse(self)
    }
    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }
}

/// Order of the subgroup generated by `gens`, by breadth-first closure.
pub fn subgroup_order(gens: &[Perm]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidParameter("empty generating set".into()));
    };
    if let Some(bad) = gens.iter().find(|g| g.degree != first.degree) {
        return Err(Error::DegreeMismatch(first.degree(), bad.degree()));
    }
    let id = Perm::identity(first.degree());
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose_unchecked(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

/// An element of `S_N × {±1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPerm {
    pub perm: Perm,
    pub sign: i8,
}

impl SignedPerm {
    pub fn new(perm: Perm, sign: i8) -> SignedPerm {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        SignedPerm { perm, sign }
    }

    pub fn is_identity(&self) -> bool {
        self.sign == 1 && self.perm.is_identity()
    }

    pub fn order(&self) -> u64 {
        let o = self.perm.order();
        if self.sign == -1 && o % 2 == 1 {
            2 * o
        } else {
            o
        }
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.perm,
            if self.sign == 1 { "[+]" } else { "[-]" }
        )
    }
}

impl GroupElement for SignedPerm {
    fn op(&self, other: &Self) -> Self {
        SignedPerm {
            perm: self.perm.compose_unchecked(&other.perm),
            sign: self.sign * other.sign,
        }
    }
    fn inverse(&self) -> Self {
        SignedPerm {
            perm: self.perm.inverse(),
            sign: self.sign,
        }
    }
    fn identity_like(&self) -> Self {
        SignedPerm {
            perm: Perm::identity(self.perm.degree()),
            sign: 1,
        }
    }
}

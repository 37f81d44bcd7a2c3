//! Commensurability verdicts for Artin groups of spherical type.
//!
//! Connected types are compared with a rule table; disjoint unions reduce to
//! a perfect matching between components.

use std::fmt;

use serde::Serialize;

use crate::catalog::{enumerate_types, CoxeterType, Family, GraphSpec};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum VerdictKind {
    Commensurable,
    NotCommensurable,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Commensurable => "Commensurable",
            VerdictKind::NotCommensurable => "NotCommensurable",
            VerdictKind::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    /// Never empty.
    pub provenance: Vec<String>,
    /// Component pairs (left index, right index) of the matching, when one
    /// was used.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matching: Vec<(usize, usize)>,
}

impl Verdict {
    fn new(verdict: VerdictKind, provenance: Vec<String>) -> Verdict {
        Verdict {
            verdict,
            provenance,
            matching: Vec::new(),
        }
    }
}

const CITE_SAME: &str = "identical types";
const CITE_RANK: &str =
    "commensurable spherical Artin groups have graphs with the same number of vertices";
const CITE_AB: &str = "A[A_n] and A[B_n] are commensurable for n ≥ 2";
const CITE_I2: &str = "A[A_2] and A[I_2(p)] are commensurable for p ≥ 5";
const CITE_SOROKO: &str = "Soroko: A[D_4] is commensurable with neither A[F_4] nor A[H_4]";
const CITE_DE: &str = "open: commensurability of A[D_n] and A[E_n] is unknown for n = 6, 7, 8";
const CITE_FH: &str = "open: commensurability of A[F_4] and A[H_4] is unknown";

fn cite_not_a(ty: CoxeterType) -> String {
    let n = ty.rank;
    let detail = match ty.family {
        Family::D => "D_n lemma",
        Family::E => "E_n lemma",
        Family::F => "F_4 lemma",
        Family::H if n == 4 => "H_4 lemma",
        _ => "H_3 lemma",
    };
    format!("A[A_{n}] and A[{ty}] are not commensurable ({detail})")
}

/// Whether the type is commensurable with A_n of the same rank.
fn in_a_class(ty: CoxeterType) -> bool {
    matches!(ty.family, Family::A | Family::B | Family::I2)
}

fn a_class_citations(ty: CoxeterType) -> Vec<String> {
    match ty.family {
        Family::A => Vec::new(),
        Family::B => vec![CITE_AB.to_string()],
        _ => vec![CITE_I2.to_string()],
    }
}

/// Verdict for two connected catalog types.
pub fn pairwise(a: CoxeterType, b: CoxeterType) -> Verdict {
    use VerdictKind::*;
    if a == b {
        return Verdict::new(Commensurable, vec![CITE_SAME.into()]);
    }
    if a.rank != b.rank {
        return Verdict::new(NotCommensurable, vec![CITE_RANK.into()]);
    }
    match (in_a_class(a), in_a_class(b)) {
        (true, true) => {
            let mut prov = a_class_citations(a);
            for c in a_class_citations(b) {
                if !prov.contains(&c) {
                    prov.push(c);
                }
            }
            if a.family != Family::A && b.family != Family::A {
                prov.push(format!("transitivity through A_{}", a.rank));
            }
            Verdict::new(Commensurable, prov)
        }
        (true, false) | (false, true) => {
            let (x, other) = if in_a_class(a) { (a, b) } else { (b, a) };
            let mut prov = vec![cite_not_a(other)];
            if x.family != Family::A {
                prov.extend(a_class_citations(x));
                prov.push(format!("transitivity through A_{}", x.rank));
            }
            Verdict::new(NotCommensurable, prov)
        }
        (false, false) => {
            let mut fams = [a.family, b.family];
            fams.sort();
            match fams {
                [Family::D, Family::F] | [Family::D, Family::H] => {
                    Verdict::new(NotCommensurable, vec![CITE_SOROKO.into()])
                }
                [Family::D, Family::E] => Verdict::new(Unknown, vec![CITE_DE.into()]),
                [Family::F, Family::H] => Verdict::new(Unknown, vec![CITE_FH.into()]),
                _ => unreachable!("no other same-rank pair outside the A class: {a}, {b}"),
            }
        }
    }
}

/// A perfect matching of left to right using edges allowed by `ok`, found
/// with augmenting paths.
fn perfect_matching(n: usize, ok: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        l: usize,
        n: usize,
        ok: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        right_of: &mut [Option<usize>],
    ) -> bool {
        for r in 0..n {
            if ok(l, r) && !seen[r] {
                seen[r] = true;
                if right_of[r].is_none_or(|l2| augment(l2, n, ok, seen, right_of)) {
                    right_of[r] = Some(l);
                    return true;
                }
            }
        }
        false
    }
    let mut right_of = vec![None; n];
    for l in 0..n {
        let mut seen = vec![false; n];
        if !augment(l, n, &ok, &mut seen, &mut right_of) {
            return None;
        }
    }
    let mut left = vec![0; n];
    for (r, l) in right_of.iter().enumerate() {
        left[l.expect("perfect")] = r;
    }
    Some(left)
}

/// Verdict for two spherical graphs given as component lists.
pub fn classify(left: &GraphSpec, right: &GraphSpec) -> Verdict {
    use VerdictKind::*;
    let (p, q) = (left.components.len(), right.components.len());
    if p != q {
        return Verdict::new(
            NotCommensurable,
            vec![format!(
                "component counts differ ({p} vs {q}); commensurability needs a component bijection"
            )],
        );
    }
    let table: Vec<Vec<Verdict>> = left
        .components
        .iter()
        .map(|a| {
            right
                .components
                .iter()
                .map(|b| pairwise(a.ty, b.ty))
                .collect()
        })
        .collect();
    let collect = |m: &[usize]| {
        let mut prov = Vec::new();
        for (i, &j) in m.iter().enumerate() {
            for c in &table[i][j].provenance {
                let line = format!(
                    "{} ~ {}: {c}",
                    left.components[i].ty, right.components[j].ty
                );
                if !prov.contains(&line) {
                    prov.push(line);
                }
            }
        }
        prov
    };
    if let Some(m) = perfect_matching(p, |i, j| table[i][j].verdict == Commensurable) {
        let mut v = Verdict::new(Commensurable, collect(&m));
        v.matching = m.into_iter().enumerate().collect();
        return v;
    }
    match perfect_matching(p, |i, j| table[i][j].verdict != NotCommensurable) {
        None => {
            let mut prov = vec![
                "no perfect matching of components avoids a non-commensurable pair".to_string(),
            ];
            for (i, row) in table.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if v.verdict == NotCommensurable
                        && left.components[i].rank() == right.components[j].rank()
                    {
                        let line = format!(
                            "{} vs {}: {}",
                            left.components[i].ty,
                            right.components[j].ty,
                            v.provenance.join("; ")
                        );
                        if !prov.contains(&line) {
                            prov.push(line);
                        }
                    }
                }
            }
            Verdict::new(NotCommensurable, prov)
        }
        Some(m) => {
            let mut prov = vec!["every admissible matching uses an open pair".to_string()];
            prov.extend(collect(&m));
            let mut v = Verdict::new(Unknown, prov);
            v.matching = m.into_iter().enumerate().collect();
            v
        }
    }
}

/// The commensurability classes of connected types of one rank.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RankClasses {
    pub rank: usize,
    pub classes: Vec<Vec<String>>,
    /// Pairs whose verdict is Unknown.
    pub open: Vec<(String, String)>,
}

/// Classes of connected types up to `max_rank`, with dihedral labels up to
/// `max_p`.
pub fn class_table(max_rank: usize, max_p: u32) -> Vec<RankClasses> {
    let types = enumerate_types(max_rank, max_p);
    (1..=max_rank)
        .map(|rank| {
            let tys: Vec<CoxeterType> = types.iter().copied().filter(|t| t.rank == rank).collect();
            let mut class_of: Vec<usize> = (0..tys.len()).collect();
            for i in 0..tys.len() {
                for j in 0..i {
                    if pairwise(tys[i], tys[j]).verdict == VerdictKind::Commensurable {
                        let (ci, cj) = (class_of[i], class_of[j]);
                        for c in class_of.iter_mut() {
                            if *c == ci {
                                *c = cj;
                            }
                        }
                    }
                }
            }
            let mut classes: Vec<Vec<String>> = Vec::new();
            let mut ids: Vec<usize> = Vec::new();
            for (t, &c) in tys.iter().zip(&class_of) {
                match ids.iter().position(|&x| x == c) {
                    Some(k) => classes[k].push(t.to_string()),
                    None => {
                        ids.push(c);
                        classes.push(vec![t.to_string()]);
                    }
                }
            }
            let mut open = Vec::new();
            for i in 0..tys.len() {
                for j in i + 1..tys.len() {
                    if pairwise(tys[i], tys[j]).verdict == VerdictKind::Unknown {
                        open.push((tys[i].to_string(), tys[j].to_string()));
                    }
                }
            }
            RankClasses {
                rank,
                classes,
                open,
            }
        })
        .collect()
}

/// Triples (a, b, c) where a ~ b and b ~ c are Commensurable but a, c are
/// not. Empty for a consistent table.
pub fn transitivity_violations(
    types: &[CoxeterType],
) -> Vec<(CoxeterType, CoxeterType, CoxeterType)> {
    let mut out = Vec::new();
    for &a in types {
        for &b in types {
            if pairwise(a, b).verdict != VerdictKind::Commensurable {
                continue;
            }
            for &c in types {
                if pairwise(b, c).verdict == VerdictKind::Commensurable
                    && pairwise(a, c).verdict == VerdictKind::NotCommensurable
                {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Unordered pairs of distinct connected types, rank ≥ 2, marked Unknown.
pub fn unknown_pairs(max_rank: usize, max_p: u32) -> Vec<(CoxeterType, CoxeterType)> {
    let types = enumerate_types(max_rank, max_p);
    let mut out = Vec::new();
    for (i, &a) in types.iter().enumerate() {
        for &b in &types[i + 1..] {
            if pairwise(a, b).verdict == VerdictKind::Unknown {
                out.push((a, b));
            }
        }
    }
    out
}

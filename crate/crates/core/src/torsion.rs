//! Generalized-torsion witnesses in kernels of homomorphisms
//! A̅[Γ] → S_{n+2} × {±1}.
//!
//! A witness is a pair (α, β) with α ≠ 1 in A̅[Γ], both in the kernel, and
//! a product of conjugates `∏ β^k α β^-k` equal to 1. Each witness applies to
//! the homomorphisms selected by its [`Case`].

use std::fmt;

use crate::catalog::{CatalogEntry, CoxeterType, Family};
use crate::error::{Error, Result};
use crate::garside::{decide_quotient_equal, theta_trivial, EngineRegistry};
use crate::homsearch::{classes, solve, HomTuple, SearchQuery};
use crate::perm::Perm;
use crate::word::{torsion_product, Word};

/// Which homomorphisms a witness applies to. Generators are 1-based;
/// "equal" compares signed images unless stated otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Case {
    /// All permutation images coincide.
    Cyclic,
    /// Not cyclic, and the permutation images of the two generators agree.
    NonCyclicEqual(usize, usize),
    /// The pair has equal images whose signed order lies in the set.
    PairOrder {
        pair: (usize, usize),
        orders: Vec<u64>,
    },
    /// Both F4 pairs have equal images of signed order 6 whose permutation
    /// parts have order 3.
    BothPairsOrder3,
    /// Both pairs have equal images, `six` has permutation order 6 and
    /// `other` maps to its k-th power.
    Order6Power { six: usize, other: usize, k: i64 },
    /// Equality pattern of the F4 pairs {s1,s2}, {s3,s4}; equal pairs have
    /// signed order 6.
    PairPattern {
        first_equal: bool,
        second_equal: bool,
    },
}

impl Case {
    pub fn matches(&self, t: &HomTuple) -> bool {
        let s = t.signed_images();
        let eq = |i: usize, j: usize| s[i - 1] == s[j - 1];
        match self {
            Case::Cyclic => t.is_constant(),
            Case::NonCyclicEqual(i, j) => !t.is_constant() && t.images[i - 1] == t.images[j - 1],
            Case::PairOrder { pair, orders } => {
                eq(pair.0, pair.1) && orders.contains(&s[pair.0 - 1].order())
            }
            Case::BothPairsOrder3 => {
                eq(1, 2)
                    && eq(3, 4)
                    && t.images[0].order() == 3
                    && t.images[2].order() == 3
                    && s[0].order() == 6
                    && s[2].order() == 6
            }
            Case::Order6Power { six, other, k } => {
                eq(1, 2)
                    && eq(3, 4)
                    && t.images[six - 1].order() == 6
                    && t.images[other - 1] == t.images[six - 1].pow(*k)
            }
            Case::PairPattern {
                first_equal,
                second_equal,
            } => {
                let pair_ok = |a: usize, b: usize, want: bool| {
                    if want {
                        eq(a, b) && s[a - 1].order() == 6
                    } else {
                        !eq(a, b)
                    }
                };
                pair_ok(1, 2, *first_equal) && pair_ok(3, 4, *second_equal)
            }
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Cyclic => write!(f, "cyclic"),
            Case::NonCyclicEqual(i, j) => write!(f, "non-cyclic with s{i} = s{j}"),
            Case::PairOrder { pair, orders } => {
                write!(f, "s{} = s{} of order in {orders:?}", pair.0, pair.1)
            }
            Case::BothPairsOrder3 => write!(f, "s1 = s2 and s3 = s4, both of order 3"),
            Case::Order6Power { six, other, k } => {
                write!(f, "s{six} of order 6 and s{other} = s{six}^{k}")
            }
            Case::PairPattern {
                first_equal,
                second_equal,
            } => {
                let rel = |b: bool| if b { "=" } else { "≠" };
                write!(
                    f,
                    "s1 {} s2 and s3 {} s4",
                    rel(*first_equal),
                    rel(*second_equal)
                )
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessSpec {
    pub lemma: String,
    pub id: String,
    pub case: Case,
    pub alpha: Word,
    pub beta: Word,
    /// Exponents k of the conjugators β^k in the torsion product.
    pub ks: Vec<i64>,
}

impl WitnessSpec {
    fn new(lemma: &str, id: &str, case: Case, alpha: Word, beta: Word, ks: &[i64]) -> WitnessSpec {
        WitnessSpec {
            lemma: lemma.to_string(),
            id: id.to_string(),
            case,
            alpha,
            beta,
            ks: ks.to_vec(),
        }
    }

    pub fn product(&self) -> Word {
        torsion_product(&self.alpha, &self.beta, &self.ks)
    }

    fn relabeled(&self, id: &str, case: Case, map: &[usize]) -> WitnessSpec {
        WitnessSpec {
            lemma: self.lemma.clone(),
            id: id.to_string(),
            case,
            alpha: self.alpha.relabel(map),
            beta: self.beta.relabel(map),
            ks: self.ks.clone(),
        }
    }
}

fn w(gens: &[i32]) -> Word {
    Word::signed(gens)
}

/// The diagram automorphism of F4 reversing the chain.
const F4_FLIP: [usize; 4] = [4, 3, 2, 1];

fn d_specs(lemma: &str, n: usize) -> Vec<WitnessSpec> {
    let cyclic = WitnessSpec::new(
        lemma,
        "cyclic",
        Case::Cyclic,
        w(&[1, -2]),
        w(&[3, 2, 1, 3, -1, -1, -1, -1]),
        &[0, 1],
    );
    let equal = WitnessSpec::new(
        lemma,
        "s1=s2",
        Case::NonCyclicEqual(1, 2),
        w(&[1, -2]),
        w(&[1, 3, 2, 1, 3, 1]),
        &[0, 1],
    );
    let mut out = vec![cyclic, equal.clone()];
    if n == 4 {
        // the leaves s1, s2, s4 of D4 are permuted by diagram automorphisms
        out.push(equal.relabeled("s1=s4", Case::NonCyclicEqual(1, 4), &[1, 4, 3, 2]));
        out.push(equal.relabeled("s2=s4", Case::NonCyclicEqual(2, 4), &[4, 2, 3, 1]));
    }
    out
}

fn e_spec(n: usize) -> WitnessSpec {
    let n = n as i32;
    WitnessSpec::new(
        &format!("E{n}"),
        "cyclic",
        Case::Cyclic,
        w(&[2, -n]),
        w(&[3, n, 2, 3, -2, -2, -2, -2]),
        &[0, 1],
    )
}

fn f4_specs() -> Vec<WitnessSpec> {
    let l = "F4";
    let alpha = w(&[1, -2]);
    let s1s2 = w(&[1, 2]);
    let pair_cases = [
        ("ord124", vec![1, 2, 4], s1s2.power(4), vec![0, 1, 2]),
        ("ord3", vec![3], w(&[1, 2, 1]), vec![0, 1]),
        ("ord5_10", vec![5, 10], s1s2.power(10), vec![0, 1, 2]),
    ];
    let mut out = Vec::new();
    for (id, orders, beta, ks) in pair_cases {
        let spec = WitnessSpec::new(
            l,
            id,
            Case::PairOrder {
                pair: (1, 2),
                orders: orders.clone(),
            },
            alpha.clone(),
            beta,
            &ks,
        );
        let mirror = spec.relabeled(
            &format!("{id}_mirror"),
            Case::PairOrder {
                pair: (4, 3),
                orders,
            },
            &F4_FLIP,
        );
        out.push(spec);
        out.push(mirror);
    }
    out.push(WitnessSpec::new(
        l,
        "both_ord3",
        Case::BothPairsOrder3,
        alpha.clone(),
        w(&[1, 2, 1, 4, 4, 4]),
        &[0, 1],
    ));
    for k in [1i64, 2, -1, -2] {
        let beta = w(&[3, 4]).then(&Word::gen(1).power(-2 * k));
        let spec = WitnessSpec::new(
            l,
            &format!("ord6_k{k}"),
            Case::Order6Power {
                six: 1,
                other: 3,
                k,
            },
            w(&[3, -4]),
            beta,
            &[0, 1, 2],
        );
        let mirror = spec.relabeled(
            &format!("ord6_k{k}_mirror"),
            Case::Order6Power {
                six: 4,
                other: 2,
                k,
            },
            &F4_FLIP,
        );
        out.push(spec);
        out.push(mirror);
    }
    out
}

/// Every witness with z(α) = 0, grouped by lemma.
pub fn witness_catalog() -> Vec<WitnessSpec> {
    let mut out = d_specs("D4", 4);
    for n in 5..=8 {
        out.extend(d_specs(&format!("D{n}"), n));
    }
    for n in 6..=8 {
        out.push(e_spec(n));
    }
    out.extend(f4_specs());
    out.push(WitnessSpec::new(
        "H4",
        "cyclic",
        Case::Cyclic,
        w(&[-3, 4]),
        w(&[3, 4, 3, -1, -1, -1]),
        &[0, 1],
    ));
    out.push(WitnessSpec::new(
        "H3",
        "cyclic",
        Case::Cyclic,
        w(&[2, -3]),
        w(&[2, 3, 2]).power(5),
        &[0, 1],
    ));
    out
}

/// α0 = (s1 s2 s3 s4)^3 in F4, with α0² = δ, used as a torsion element when
/// the generator pairs map to distinct images. The mirrored pattern uses the
/// image of α0 under the diagram flip.
pub fn alpha0() -> Word {
    w(&[1, 2, 3, 4]).power(3)
}

pub fn alpha0_specs() -> Vec<WitnessSpec> {
    let mk = |id: &str, first_equal: bool, second_equal: bool, alpha: Word| {
        WitnessSpec::new(
            "F4",
            id,
            Case::PairPattern {
                first_equal,
                second_equal,
            },
            alpha,
            Word::empty(),
            &[0, 0],
        )
    };
    vec![
        mk("alpha0_E1", false, true, alpha0()),
        mk("alpha0_E1_mirror", true, false, alpha0().relabel(&F4_FLIP)),
        mk("alpha0_E2", false, false, alpha0()),
    ]
}

pub fn lookup(lemma: &str, id: &str) -> Option<WitnessSpec> {
    witness_catalog()
        .into_iter()
        .chain(alpha0_specs())
        .find(|s| s.lemma == lemma && s.id == id)
}

/// All specs, including the α0 ones, for one lemma.
pub fn specs_for(lemma: &str) -> Vec<WitnessSpec> {
    witness_catalog()
        .into_iter()
        .chain(alpha0_specs())
        .filter(|s| s.lemma == lemma)
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessVerdict {
    pub kernel_ok: bool,
    pub alpha_nontrivial: bool,
    pub identity_ok: bool,
    pub details: Vec<String>,
}

impl WitnessVerdict {
    pub fn passed(&self) -> bool {
        self.kernel_ok && self.alpha_nontrivial && self.identity_ok
    }
}

/// The parts of a verdict that do not depend on the homomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecChecks {
    pub alpha_nontrivial: bool,
    pub identity_ok: bool,
    pub details: Vec<String>,
}

/// Decides α ≠ 1 and the torsion identity in the central quotient.
pub fn spec_checks(
    spec: &WitnessSpec,
    entry: &CatalogEntry,
    reg: &EngineRegistry,
) -> Result<SpecChecks> {
    let a = decide_quotient_equal(&spec.alpha, &Word::empty(), entry, reg)?;
    let p = decide_quotient_equal(&spec.product(), &Word::empty(), entry, reg)?;
    let details = vec![
        format!(
            "α = 1 in the quotient: {} (z(α) = {}, decided in {:?})",
            a.holds,
            spec.alpha.exponent_sum(),
            a.components
        ),
        format!(
            "torsion product = 1: {} (decided in {:?}{})",
            p.holds,
            p.components,
            if p.used_parabolic { ", parabolic" } else { "" }
        ),
    ];
    Ok(SpecChecks {
        alpha_nontrivial: !a.holds,
        identity_ok: p.holds,
        details,
    })
}

/// Checks a witness against one homomorphism φ = φ1 × φ2.
pub fn verify_witness(
    spec: &WitnessSpec,
    hom: &HomTuple,
    entry: &CatalogEntry,
    reg: &EngineRegistry,
) -> Result<WitnessVerdict> {
    let checks = spec_checks(spec, entry, reg)?;
    verify_with(spec, hom, &checks)
}

/// [`verify_witness`] with precomputed hom-independent checks.
pub fn verify_with(
    spec: &WitnessSpec,
    hom: &HomTuple,
    checks: &SpecChecks,
) -> Result<WitnessVerdict> {
    if !spec.case.matches(hom) {
        return Err(Error::CaseViolated(format!(
            "{hom} is not in case {}",
            spec.case
        )));
    }
    let ka = hom.kills(&spec.alpha)?;
    let kb = hom.kills(&spec.beta)?;
    let mut details = vec![format!("φ(α) = 1: {ka}, φ(β) = 1: {kb}")];
    details.extend(checks.details.iter().cloned());
    Ok(WitnessVerdict {
        kernel_ok: ka && kb,
        alpha_nontrivial: checks.alpha_nontrivial,
        identity_ok: checks.identity_ok,
        details,
    })
}

/// The first spec of `specs` whose case covers `hom`.
pub fn covering_spec<'a>(specs: &'a [WitnessSpec], hom: &HomTuple) -> Option<&'a WitnessSpec> {
    specs.iter().find(|s| s.case.matches(hom))
}

/// Static checks: z(α) and z of the torsion product vanish, and the
/// product maps to 1 in W.
pub fn static_check(spec: &WitnessSpec, reg: &EngineRegistry) -> Result<(bool, bool)> {
    let entry = CatalogEntry::new(lemma_type(&spec.lemma)?);
    let z_ok = spec.alpha.exponent_sum() == 0 && spec.product().exponent_sum() == 0;
    let w_ok = theta_trivial(&spec.product(), &entry.graph, reg)?;
    Ok((z_ok, w_ok))
}

pub fn lemma_type(lemma: &str) -> Result<CoxeterType> {
    lemma.parse()
}

/// Degree of the target symmetric group for a connected type of rank n.
pub fn target_degree(ty: CoxeterType) -> usize {
    ty.rank + 2
}

/// E1 of the F4 argument: triples with u1, u2 braiding and distinct and u3
/// commuting with both, of order 3 or 6.
pub fn e1_query() -> SearchQuery {
    SearchQuery::new(3, 6)
        .equation(w(&[1, 2, 1]), w(&[2, 1, 2]))
        .equation(w(&[1, 3]), w(&[3, 1]))
        .equation(w(&[2, 3]), w(&[3, 2]))
        .inequation(Word::gen(1), Word::gen(2))
        .order_in(3, &[3, 6])
}

/// E2 of the F4 argument: quadruples satisfying the F4 relations with
/// u1 ≠ u2 and u3 ≠ u4.
pub fn e2_query() -> SearchQuery {
    SearchQuery::new(4, 6)
        .equation(w(&[1, 2, 1]), w(&[2, 1, 2]))
        .equation(w(&[1, 3]), w(&[3, 1]))
        .equation(w(&[1, 4]), w(&[4, 1]))
        .equation(w(&[2, 3, 2, 3]), w(&[3, 2, 3, 2]))
        .equation(w(&[2, 4]), w(&[4, 2]))
        .equation(w(&[3, 4, 3]), w(&[4, 3, 4]))
        .inequation(Word::gen(1), Word::gen(2))
        .inequation(Word::gen(3), Word::gen(4))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha0Report {
    pub set: String,
    pub elements: usize,
    pub classes: Vec<HomTuple>,
    /// (u1 u2 u3²)³ = 1 resp. (u1 u2 u3 u4)³ = 1 per class representative.
    pub relation_holds: Vec<bool>,
    pub square_is_delta: bool,
    pub z_alpha0: i64,
    pub z_delta: i64,
}

impl Alpha0Report {
    pub fn passed(&self) -> bool {
        self.relation_holds.iter().all(|&b| b)
            && self.square_is_delta
            && self.z_alpha0 % self.z_delta != 0
    }
}

/// Recomputes E1 or E2, and checks α0 on every class representative.
pub fn verify_f4_alpha0(set: &str, reg: &EngineRegistry) -> Result<Alpha0Report> {
    let (query, word) = match set {
        "E1" => (e1_query(), w(&[1, 2, 3, 3]).power(3)),
        "E2" => (e2_query(), w(&[1, 2, 3, 4]).power(3)),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown set {set}, expected E1 or E2"
            )))
        }
    };
    let sols = solve(&query)?;
    let reps: Vec<HomTuple> = classes(&sols).into_iter().map(|c| c.canonical).collect();
    let relation_holds = reps
        .iter()
        .map(|t| t.evaluate(&word).map(|p| p.is_identity()))
        .collect::<Result<Vec<_>>>()?;
    let f4 = CatalogEntry::new(CoxeterType::f4());
    let square_is_delta =
        crate::garside::decide_equal(&alpha0().power(2), &f4.delta_word(), &f4.graph, reg)?.holds;
    Ok(Alpha0Report {
        set: set.to_string(),
        elements: sols.len(),
        classes: reps,
        relation_holds,
        square_is_delta,
        z_alpha0: alpha0().exponent_sum(),
        z_delta: f4.delta_exponent_sum(),
    })
}

/// Whether every element of order 6 in S6 has as centralizer exactly the
/// cyclic group it generates.
pub fn order6_centralizers_cyclic() -> bool {
    crate::homsearch::class_representatives(6)
        .into_iter()
        .filter(|p| p.order() == 6)
        .all(|p| {
            let powers: Vec<Perm> = (0..6).map(|k| p.pow(k)).collect();
            let c = p.centralizer();
            c.len() == 6 && c.iter().all(|x| powers.contains(x))
        })
}

/// Families that have witness specs.
pub fn has_witnesses(ty: CoxeterType) -> bool {
    match ty.family {
        Family::D => (4..=8).contains(&ty.rank),
        Family::E => true,
        Family::F => true,
        Family::H => true,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_examples() {
        let d4 = lookup("D4", "cyclic").unwrap();
        assert_eq!(d4.alpha, w(&[1, -2]));
        assert_eq!(d4.beta, w(&[3, 2, 1, 3, -1, -1, -1, -1]));
        let f = lookup("F4", "ord3").unwrap();
        assert_eq!(f.alpha, w(&[1, -2]));
        assert_eq!(f.beta, w(&[1, 2, 1]));
        assert_eq!(f.ks, vec![0, 1]);
        assert!(lookup("A3", "cyclic").is_none());
        assert!(!has_witnesses(CoxeterType::a(3)));
    }

    #[test]
    fn catalog_is_z_balanced() {
        for s in witness_catalog() {
            assert_eq!(s.alpha.exponent_sum(), 0, "{} {}", s.lemma, s.id);
            assert_eq!(s.product().exponent_sum(), 0, "{} {}", s.lemma, s.id);
        }
    }

    #[test]
    fn d4_cyclic_on_constant_tuple() {
        let spec = lookup("D4", "cyclic").unwrap();
        let entry = CatalogEntry::new(CoxeterType::d(4));
        let t = HomTuple::new(vec![Perm::parse_cycles("(1,2,3)", 6).unwrap(); 4]);
        let v = verify_witness(&spec, &t, &entry, EngineRegistry::global()).unwrap();
        assert!(v.passed(), "{v:?}");
        let t = t.with_signs(vec![-1; 4]);
        assert!(verify_witness(&spec, &t, &entry, EngineRegistry::global())
            .unwrap()
            .passed());
    }

    #[test]
    fn case_violation_is_an_error() {
        let spec = lookup("D4", "s1=s2").unwrap();
        let entry = CatalogEntry::new(CoxeterType::d(4));
        let t = HomTuple::new(vec![Perm::identity(6); 4]);
        assert!(matches!(
            verify_witness(&spec, &t, &entry, EngineRegistry::global()),
            Err(Error::CaseViolated(_))
        ));
    }

    #[test]
    fn e8_witness_in_a3_parabolic() {
        let spec = lookup("E8", "cyclic").unwrap();
        let entry = CatalogEntry::new(CoxeterType::e(8));
        let t = HomTuple::new(vec![Perm::parse_cycles("(1,2)", 10).unwrap(); 8]);
        let v = verify_witness(&spec, &t, &entry, EngineRegistry::global()).unwrap();
        assert!(v.passed(), "{v:?}");
        assert!(v.details.iter().any(|d| d.contains("A3")));
    }

    #[test]
    fn order6_centralizers() {
        assert!(order6_centralizers_cyclic());
    }

    #[test]
    fn triality_relabelings_are_automorphisms() {
        let d4 = CatalogEntry::new(CoxeterType::d(4));
        for map in [[1, 4, 3, 2], [4, 2, 3, 1]] {
            for s in 1..=4 {
                for t in 1..=4 {
                    assert_eq!(d4.graph.label(s, t), d4.graph.label(map[s - 1], map[t - 1]));
                }
            }
        }
        let f4 = CatalogEntry::new(CoxeterType::f4());
        for s in 1..=4 {
            for t in 1..=4 {
                assert_eq!(
                    f4.graph.label(s, t),
                    f4.graph.label(F4_FLIP[s - 1], F4_FLIP[t - 1])
                );
            }
        }
    }
}

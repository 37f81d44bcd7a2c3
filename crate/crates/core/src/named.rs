//! Explicit homomorphisms into symmetric groups and the constant tuples the
//! verification drivers compare enumerations against.

use crate::homsearch::HomTuple;
use crate::perm::Perm;

fn cyc(text: &str, degree: usize) -> Perm {
    Perm::parse_cycles(text, degree).expect("static cycle notation")
}

fn tuple(texts: &[&str], degree: usize) -> HomTuple {
    HomTuple::new(texts.iter().map(|t| cyc(t, degree)).collect())
}

/// t_i = (i, i+1) in S_degree.
pub fn adjacent_transposition(i: usize, degree: usize) -> Perm {
    Perm::transposition(degree, i, i + 1)
}

/// The standard map A[A_{n-1}] → S_degree, s_i ↦ (i, i+1).
pub fn standard_a(rank: usize, degree: usize) -> HomTuple {
    HomTuple::new(
        (1..=rank)
            .map(|i| adjacent_transposition(i, degree))
            .collect(),
    )
}

/// D_n → S_{n+2}: s1, s2 ↦ (1,2) and s_i ↦ (i-1, i) for i ≥ 3.
pub fn standard_d(n: usize) -> HomTuple {
    let deg = n + 2;
    let mut images = vec![adjacent_transposition(1, deg); 2];
    images.extend((3..=n).map(|i| adjacent_transposition(i - 1, deg)));
    HomTuple::new(images)
}

/// The five involutions of S8 spanning the exceptional A5 → S8 map.
pub fn exceptional_a5_images() -> Vec<Perm> {
    [
        "(1,2)(3,4)(5,6)",
        "(2,3)(1,5)(4,6)",
        "(1,3)(2,4)(5,6)",
        "(1,2)(3,5)(4,6)",
        "(2,3)(1,4)(5,6)",
    ]
    .iter()
    .map(|t| cyc(t, 8))
    .collect()
}

/// The exceptional A[A5] → S8.
pub fn exceptional_a5() -> HomTuple {
    HomTuple::new(exceptional_a5_images())
}

/// The exceptional D6 → S8 extending [`exceptional_a5`] on s2..s6.
pub fn exceptional_d6() -> HomTuple {
    let u = exceptional_a5_images();
    let mut images = vec![u[0]];
    images.extend(u);
    HomTuple::new(images)
}

/// The two non-cyclic H3 → S5 maps, up to conjugacy.
pub fn h3_transitive() -> HomTuple {
    tuple(&["(1,2,3,4,5)", "(1,4,2,3,5)", "(1,5,4,3,2)"], 5)
}

pub fn h3_involutive() -> HomTuple {
    tuple(&["(2,4)(3,5)", "(1,2)(4,5)", "(2,3)(4,5)"], 5)
}

/// Representatives of the six classes of triples in S6 with u1, u2 braiding
/// and distinct, u3 commuting with both and of order 3 or 6.
pub fn f4_triple_reps() -> Vec<HomTuple> {
    [
        ["(1,2)", "(2,3)", "(4,5,6)"],
        ["(1,2,3,4,5,6)", "(1,6,3,2,5,4)", "(1,3,5)(2,4,6)"],
        ["(1,2,3,4,5,6)", "(1,6,3,2,5,4)", "(1,5,3)(2,6,4)"],
        ["(1,4)(2,5)(3,6)", "(1,2)(3,4)(5,6)", "(1,3,5)(2,4,6)"],
        ["(2,3)(4,5,6)", "(1,2)(4,5,6)", "(4,5,6)"],
        ["(2,3)(4,5,6)", "(1,2)(4,5,6)", "(4,6,5)"],
    ]
    .iter()
    .map(|t| tuple(t, 6))
    .collect()
}

/// Representatives of the two classes of F4-type quadruples in S6 with
/// u1 ≠ u2 and u3 ≠ u4.
pub fn f4_quadruple_reps() -> Vec<HomTuple> {
    [
        ["(1,2)", "(2,3)", "(5,6)", "(4,5)"],
        [
            "(1,4)(2,5)(3,6)",
            "(1,2)(3,4)(5,6)",
            "(1,4)(2,3)(5,6)",
            "(1,6)(2,5)(3,4)",
        ],
    ]
    .iter()
    .map(|t| tuple(t, 6))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CatalogEntry, CoxeterType};
    use crate::perm::subgroup_order;

    #[test]
    fn standard_maps_are_homomorphisms() {
        for n in 4..=8 {
            let e = CatalogEntry::new(CoxeterType::d(n));
            assert!(standard_d(n).satisfies(&e.presentation()).unwrap(), "D{n}");
            assert!(standard_d(n).kills(&e.delta_word()).unwrap(), "D{n}");
        }
        let a4 = CatalogEntry::new(CoxeterType::a(4));
        assert!(standard_a(4, 7).satisfies(&a4.presentation()).unwrap());
        let d6 = CatalogEntry::new(CoxeterType::d(6));
        assert!(exceptional_d6().satisfies(&d6.presentation()).unwrap());
        assert!(exceptional_d6().kills(&d6.delta_word()).unwrap());
        assert!(exceptional_d6().kills(&d6.big_delta_word()).unwrap());
    }

    #[test]
    fn h3_maps() {
        let h3 = CatalogEntry::new(CoxeterType::h(3));
        for t in [h3_transitive(), h3_involutive()] {
            assert!(t.satisfies(&h3.presentation()).unwrap());
            assert!(t.kills(&h3.delta_word()).unwrap());
        }
        assert_eq!(subgroup_order(&h3_involutive().images).unwrap(), 60);
    }
}

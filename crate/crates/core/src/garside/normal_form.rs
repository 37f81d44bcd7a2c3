//! Left-greedy Garside normal form Δ^inf · a1 ⋯ ak of Artin group elements,
//! with simples a_i taken from W (≠ e, ≠ w0) and every adjacent pair
//! left-weighted.

use std::fmt;

use crate::error::{Error, Result};
use crate::garside::engine::{WElem, WEngine};
use crate::word::Word;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GarsideNF {
    pub inf: i64,
    pub simples: Vec<WElem>,
}

impl GarsideNF {
    pub fn identity() -> GarsideNF {
        GarsideNF {
            inf: 0,
            simples: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.simples.is_empty()
    }

    /// Δ^k.
    pub fn is_delta_power(&self) -> Option<i64> {
        self.simples.is_empty().then_some(self.inf)
    }
}

/// Display helper that spells out the simples as reduced words.
pub struct DisplayNF<'a>(pub &'a WEngine, pub &'a GarsideNF);

impl fmt::Display for DisplayNF<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.1.inf)?;
        for &a in &self.1.simples {
            write!(f, " · [{}]", self.0.reduced_word(a))?;
        }
        Ok(())
    }
}

impl WEngine {
    /// Whether `(a, b)` is left-weighted: every left descent of b is a right
    /// descent of a.
    pub fn is_left_weighted(&self, a: WElem, b: WElem) -> bool {
        self.left_descents(b) & !self.right_descents(a) == 0
    }

    /// Local rewriting step: t = ∂a ∧ b, (a, b) → (a·t, t⁻¹·b).
    /// Returns `None` when the pair is already left-weighted.
    fn left_weight_pair(&self, a: WElem, b: WElem) -> Option<(WElem, WElem)> {
        let t = self.meet_weak(self.complement(a), b);
        if t == WElem::IDENTITY {
            return None;
        }
        Some((self.mul(a, t), self.mul(self.inverse(t), b)))
    }

    /// Appends a simple to a left-weighted factor list and restores
    /// left-weightedness with a right-to-left sweep.
    fn push_simple(&self, inf: &mut i64, factors: &mut Vec<WElem>, x: WElem) {
        if x == WElem::IDENTITY {
            return;
        }
        factors.push(x);
        let mut i = factors.len() - 1;
        while i > 0 {
            match self.left_weight_pair(factors[i - 1], factors[i]) {
                None => break,
                Some((a, b)) => {
                    factors[i - 1] = a;
                    factors[i] = b;
                }
            }
            i -= 1;
        }
        self.settle(inf, factors);
    }

    /// Moves leading w0 factors into the Δ exponent, drops trailing
    /// identities, and falls back to full passes if the sweep left any
    /// non-left-weighted pair.
    fn settle(&self, inf: &mut i64, factors: &mut Vec<WElem>) {
        loop {
            let lead = factors.iter().take_while(|&&a| a == self.w0()).count();
            if lead > 0 {
                factors.drain(..lead);
                *inf += lead as i64;
            }
            while factors.last() == Some(&WElem::IDENTITY) {
                factors.pop();
            }
            if factors
                .windows(2)
                .all(|p| self.is_left_weighted(p[0], p[1]))
            {
                break;
            }
            for i in (1..factors.len()).rev() {
                if let Some((a, b)) = self.left_weight_pair(factors[i - 1], factors[i]) {
                    factors[i - 1] = a;
                    factors[i] = b;
                }
            }
        }
    }

    /// Normal form of an Artin word over this engine's generators.
    pub fn normal_form(&self, w: &Word) -> Result<GarsideNF> {
        let mut inf = 0i64;
        let mut factors: Vec<WElem> = Vec::new();
        for l in w.letters() {
            let g = l.generator();
            if g == 0 || g > self.rank() {
                return Err(Error::MissingAssignment(g));
            }
            if l.exp > 0 {
                self.push_simple(&mut inf, &mut factors, self.generator(g));
            } else {
                // X·s⁻¹ = X·Δ⁻¹·(w0 s) = Δ⁻¹·τ(X)·(w0 s)
                inf -= 1;
                for a in factors.iter_mut() {
                    *a = self.tau(*a);
                }
                let simple = self.mul_gen_right(self.w0(), g);
                self.push_simple(&mut inf, &mut factors, simple);
            }
        }
        Ok(GarsideNF {
            inf,
            simples: factors,
        })
    }

    /// Checks the structural invariants of a normal form.
    pub fn is_normal(&self, nf: &GarsideNF) -> bool {
        nf.simples
            .iter()
            .all(|&a| a != WElem::IDENTITY && a != self.w0())
            && nf
                .simples
                .windows(2)
                .all(|p| self.is_left_weighted(p[0], p[1]))
    }

    /// A word spelling the normal form (Δ^inf as a power of a reduced word of
    /// w0, then the simples' reduced words).
    pub fn nf_to_word(&self, nf: &GarsideNF) -> Word {
        let delta = self.reduced_word(self.w0());
        let mut parts = vec![delta.power(nf.inf)];
        parts.extend(nf.simples.iter().map(|&a| self.reduced_word(a)));
        Word::concat(&parts.iter().collect::<Vec<_>>())
    }
}

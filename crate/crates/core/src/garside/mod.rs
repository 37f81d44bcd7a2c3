//! Word problem in spherical Artin groups and their central quotients.
//!
//! Every decision first restricts to the standard parabolic subgroup spanned
//! by the letters that survive free reduction, then splits that parabolic
//! into connected components and decides each factor with the Garside normal
//! form of its own engine. This relies on standard parabolic subgroups of
//! spherical Artin groups embedding, which is recorded on each [`Decision`].

pub mod cache;
pub mod engine;
pub mod normal_form;
pub mod ring;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

pub use engine::{WElem, WEngine, DEFAULT_ENGINE_BOUND};
pub use normal_form::{DisplayNF, GarsideNF};

use crate::catalog::{CatalogEntry, CoxeterGraph, CoxeterType};
use crate::error::Result;
use crate::word::Word;

/// Shared, lazily built engines keyed by catalog type.
#[derive(Debug)]
pub struct EngineRegistry {
    bound: u64,
    cache_dir: Option<PathBuf>,
    engines: Mutex<HashMap<CoxeterType, Arc<WEngine>>>,
    disk_hits: AtomicU64,
}

impl EngineRegistry {
    pub fn new(bound: u64) -> EngineRegistry {
        EngineRegistry {
            bound,
            cache_dir: None,
            engines: Mutex::new(HashMap::new()),
            disk_hits: AtomicU64::new(0),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> EngineRegistry {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Process-wide registry with the default bound and no disk cache.
    pub fn global() -> &'static EngineRegistry {
        static GLOBAL: OnceLock<EngineRegistry> = OnceLock::new();
        GLOBAL.get_or_init(|| EngineRegistry::new(DEFAULT_ENGINE_BOUND))
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Number of engines served from verified disk cache files.
    pub fn disk_hits(&self) -> u64 {
        self.disk_hits.load(Ordering::Relaxed)
    }

    pub fn engine(&self, ty: CoxeterType) -> Result<Arc<WEngine>> {
        let mut map = self.engines.lock().expect("engine registry poisoned");
        if let Some(e) = map.get(&ty) {
            return Ok(Arc::clone(e));
        }
        let engine = match &self.cache_dir {
            Some(dir) => {
                let path = cache::cache_path(dir, ty);
                match cache::load(&path, ty, self.bound) {
                    Ok(e) => {
                        self.disk_hits.fetch_add(1, Ordering::Relaxed);
                        e
                    }
                    Err(_) => {
                        let e = WEngine::for_type(ty, self.bound)?;
                        // a failed write only costs a rebuild next time
                        let _ = cache::save(&path, &e);
                        e
                    }
                }
            }
            None => WEngine::for_type(ty, self.bound)?,
        };
        let engine = Arc::new(engine);
        map.insert(ty, Arc::clone(&engine));
        Ok(engine)
    }
}

/// Outcome of a word-problem query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    /// Parabolic components the question was decided in, e.g. `["A2", "A1"]`.
    pub components: Vec<String>,
    /// True when the letters did not span the whole graph, so the answer
    /// uses the parabolic embedding.
    pub used_parabolic: bool,
}

/// The subgraph induced on the letters of `w` and `w` renumbered into it.
pub fn parabolic_restrict(w: &Word, graph: &CoxeterGraph) -> (CoxeterGraph, Word, Vec<usize>) {
    let support = w.support();
    let sub = graph.induced(&support);
    let mut map = vec![0usize; graph.n.max(w.max_generator())];
    for (i, &g) in support.iter().enumerate() {
        map[g - 1] = i + 1;
    }
    (sub, w.relabel(&map), support)
}

/// Decides `w = 1` in A[graph].
pub fn decide_trivial(w: &Word, graph: &CoxeterGraph, reg: &EngineRegistry) -> Result<Decision> {
    let d = w.free_reduce();
    if let Some(g) = d
        .letters()
        .iter()
        .map(|l| l.generator())
        .find(|&g| g == 0 || g > graph.n)
    {
        return Err(crate::error::Error::MissingAssignment(g));
    }
    if d.is_empty() {
        return Ok(Decision {
            holds: true,
            components: Vec::new(),
            used_parabolic: false,
        });
    }
    let (sub, local, _) = parabolic_restrict(&d, graph);
    let used_parabolic = sub.n < graph.n;
    let mut holds = true;
    let mut components = Vec::new();
    for (verts, comp) in sub.connected_components() {
        let mut map = vec![0usize; sub.n];
        for (i, &v) in verts.iter().enumerate() {
            map[v - 1] = i + 1;
        }
        let part = local
            .retain_generators(|g| verts.contains(&g))
            .relabel(&map);
        let (entry, relabel) = comp.identify()?;
        components.push(entry.ty.to_string());
        let engine = reg.engine(entry.ty)?;
        let nf = engine.normal_form(&part.relabel(&relabel))?;
        if !nf.is_identity() {
            holds = false;
        }
    }
    Ok(Decision {
        holds,
        components,
        used_parabolic,
    })
}

pub fn is_trivial(w: &Word, graph: &CoxeterGraph) -> Result<bool> {
    decide_trivial(w, graph, EngineRegistry::global()).map(|d| d.holds)
}

pub fn decide_equal(
    w1: &Word,
    w2: &Word,
    graph: &CoxeterGraph,
    reg: &EngineRegistry,
) -> Result<Decision> {
    decide_trivial(&w1.then(&w2.invert()), graph, reg)
}

pub fn words_equal(w1: &Word, w2: &Word, graph: &CoxeterGraph) -> Result<bool> {
    decide_equal(w1, w2, graph, EngineRegistry::global()).map(|d| d.holds)
}

/// Whether `w` commutes with every generator.
pub fn is_central(w: &Word, graph: &CoxeterGraph) -> Result<bool> {
    is_central_with(w, graph, EngineRegistry::global())
}

pub fn is_central_with(w: &Word, graph: &CoxeterGraph, reg: &EngineRegistry) -> Result<bool> {
    for s in 1..=graph.n {
        let sw = Word::gen(s).then(w);
        let ws = w.then(&Word::gen(s));
        if !decide_equal(&ws, &sw, graph, reg)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality in A[Γ]/⟨δ⟩: the difference must be a power of δ, which z
/// pins down before the Garside check.
pub fn decide_quotient_equal(
    w1: &Word,
    w2: &Word,
    entry: &CatalogEntry,
    reg: &EngineRegistry,
) -> Result<Decision> {
    let d = w1.then(&w2.invert()).free_reduce();
    let z = d.exponent_sum();
    let zd = entry.delta_exponent_sum();
    if z % zd != 0 {
        return Ok(Decision {
            holds: false,
            components: Vec::new(),
            used_parabolic: false,
        });
    }
    let k = z / zd;
    decide_trivial(&d.then(&entry.delta_word().power(-k)), &entry.graph, reg)
}

pub fn quotient_equal(w1: &Word, w2: &Word, entry: &CatalogEntry) -> Result<bool> {
    decide_quotient_equal(w1, w2, entry, EngineRegistry::global()).map(|d| d.holds)
}

/// Normal form of `w` in a connected catalog type.
pub fn normal_form(w: &Word, ty: CoxeterType) -> Result<GarsideNF> {
    EngineRegistry::global().engine(ty)?.normal_form(w)
}

/// θ(w) in W for a connected catalog type.
pub fn theta(w: &Word, ty: CoxeterType) -> Result<WElem> {
    EngineRegistry::global().engine(ty)?.theta(w)
}

/// Whether θ(w) = 1 in W[graph], computed per component of the support.
pub fn theta_trivial(w: &Word, graph: &CoxeterGraph, reg: &EngineRegistry) -> Result<bool> {
    let d = w.free_reduce();
    if d.is_empty() {
        return Ok(true);
    }
    let (sub, local, _) = parabolic_restrict(&d, graph);
    for (verts, comp) in sub.connected_components() {
        let mut map = vec![0usize; sub.n];
        for (i, &v) in verts.iter().enumerate() {
            map[v - 1] = i + 1;
        }
        let part = local
            .retain_generators(|g| verts.contains(&g))
            .relabel(&map);
        let (entry, relabel) = comp.identify()?;
        let engine = reg.engine(entry.ty)?;
        if engine.theta(&part.relabel(&relabel))? != engine.identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

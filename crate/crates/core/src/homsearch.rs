//! Backtracking enumeration of homomorphisms into S_N (optionally crossed
//! with a sign character), reduced to orbits under simultaneous conjugation.
//!
//! Variables are assigned most-constrained-first. A variable that must
//! commute with an assigned one draws its candidates from that centralizer,
//! one tied to an assigned variable by an odd braid relation draws from the
//! conjugacy class (odd braid relations force conjugacy), and otherwise all
//! of S_N is scanned. Each condition is checked as soon as its last variable
//! is assigned.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::catalog::{CatalogEntry, CoxeterGraph, Family};
use crate::error::{Error, Result};
use crate::perm::{Perm, SignedPerm};
use crate::word::{pi_word, Presentation, Word};

/// Largest degree the search accepts.
pub const MAX_SEARCH_DEGREE: usize = 10;

pub const DEFAULT_BRANCH_CEILING: u64 = 20_000_000_000;

/// Images of the generators, optionally with a sign per generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HomTuple {
    pub images: Vec<Perm>,
    pub signs: Option<Vec<i8>>,
}

impl HomTuple {
    pub fn new(images: Vec<Perm>) -> HomTuple {
        HomTuple {
            images,
            signs: None,
        }
    }

    pub fn with_signs(mut self, signs: Vec<i8>) -> HomTuple {
        self.signs = Some(signs);
        self
    }

    /// Parses one cycle-notation string per generator.
    pub fn parse(texts: &[&str], degree: usize) -> Result<HomTuple> {
        let images = texts
            .iter()
            .map(|t| Perm::parse_cycles(t, degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomTuple::new(images))
    }

    pub fn degree(&self) -> usize {
        self.images.first().map_or(0, Perm::degree)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn evaluate(&self, w: &Word) -> Result<Perm> {
        w.evaluate(&self.images)
    }

    pub fn signed_images(&self) -> Vec<SignedPerm> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &p)| SignedPerm::new(p, self.signs.as_ref().map_or(1, |s| s[i])))
            .collect()
    }

    /// Image of `w` in S_N × {±1} (sign +1 throughout if no signs are set).
    pub fn evaluate_signed(&self, w: &Word) -> Result<SignedPerm> {
        w.evaluate(&self.signed_images())
    }

    pub fn kills(&self, w: &Word) -> Result<bool> {
        Ok(self.evaluate_signed(w)?.is_identity())
    }

    pub fn conjugate(&self, g: &Perm) -> HomTuple {
        HomTuple {
            images: self
                .images
                .iter()
                .map(|p| Perm::conjugate_unchecked(g, p))
                .collect(),
            signs: self.signs.clone(),
        }
    }

    /// All generator images coincide.
    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }

    pub fn satisfies(&self, p: &Presentation) -> Result<bool> {
        p.is_satisfied_by(&self.signed_images())
    }
}

impl fmt::Display for HomTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")?;
        if let Some(signs) = &self.signs {
            let s: String = signs
                .iter()
                .map(|&e| if e > 0 { '+' } else { '-' })
                .collect();
            write!(f, " [{s}]")?;
        }
        Ok(())
    }
}

/// An orbit under simultaneous conjugation by S_N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomClass {
    /// The lexicographically least tuple of the orbit.
    pub canonical: HomTuple,
    pub orbit_size: u64,
}

/// A constraint over the search variables (generator `sK` is variable K).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Condition {
    Equal(Word, Word),
    NotEqual(Word, Word),
    /// The order of the variable's image lies in the set.
    OrderIn(usize, Vec<u64>),
}

impl Condition {
    fn variables(&self) -> Vec<usize> {
        let mut v = match self {
            Condition::Equal(a, b) | Condition::NotEqual(a, b) => {
                let mut s = a.support();
                s.extend(b.support());
                s
            }
            Condition::OrderIn(x, _) => vec![*x],
        };
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `Some((a, b, m))` if this is the braid relation Π(a,b,m) = Π(b,a,m).
    fn braid(&self) -> Option<(usize, usize, usize)> {
        let Condition::Equal(l, r) = self else {
            return None;
        };
        let s = l.support();
        if s.len() != 2 || !l.is_positive() || l.len() != r.len() || l.len() < 2 {
            return None;
        }
        let first = l.letters()[0].generator();
        let other = if first == s[0] { s[1] } else { s[0] };
        let m = l.len();
        (pi_word(first, other, m).ok()? == *l && pi_word(other, first, m).ok()? == *r)
            .then_some((first, other, m))
    }
}

#[derive(Clone, Debug)]
enum Compiled {
    Commute(usize, usize),
    Braid(usize, usize, usize),
    Equal(Vec<(usize, i8)>, Vec<(usize, i8)>),
    NotEqual(Vec<(usize, i8)>, Vec<(usize, i8)>),
    OrderIn(usize, Vec<u64>),
}

fn compile_word(w: &Word) -> Vec<(usize, i8)> {
    w.letters()
        .iter()
        .map(|l| (l.generator() - 1, l.exp))
        .collect()
}

fn eval_compiled(w: &[(usize, i8)], images: &[Perm], degree: usize) -> Perm {
    let mut acc = Perm::identity(degree);
    for &(v, e) in w {
        let p = if e > 0 {
            images[v]
        } else {
            images[v].inverse()
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose_unchecked(&p);
        }
    }
    acc
}

impl Compiled {
    fn new(c: &Condition) -> Compiled {
        if let Some((a, b, m)) = c.braid() {
            return if m == 2 {
                Compiled::Commute(a - 1, b - 1)
            } else {
                Compiled::Braid(a - 1, b - 1, m)
            };
        }
        match c {
            Condition::Equal(a, b) => Compiled::Equal(compile_word(a), compile_word(b)),
            Condition::NotEqual(a, b) => Compiled::NotEqual(compile_word(a), compile_word(b)),
            Condition::OrderIn(v, set) => Compiled::OrderIn(v - 1, set.clone()),
        }
    }

    fn holds(&self, images: &[Perm], degree: usize) -> bool {
        match self {
            Compiled::Commute(a, b) => images[*a].commutes_with(&images[*b]),
            Compiled::Braid(a, b, m) => {
                let (x, y) = (images[*a], images[*b]);
                let (mut l, mut r) = (x, y);
                for i in 1..*m {
                    let (p, q) = if i % 2 == 0 { (x, y) } else { (y, x) };
                    l = l.compose_unchecked(&p);
                    r = r.compose_unchecked(&q);
                }
                l == r
            }
            Compiled::Equal(a, b) => {
                eval_compiled(a, images, degree) == eval_compiled(b, images, degree)
            }
            Compiled::NotEqual(a, b) => {
                eval_compiled(a, images, degree) != eval_compiled(b, images, degree)
            }
            Compiled::OrderIn(v, set) => set.contains(&images[*v].order()),
        }
    }
}

/// A homomorphism or constraint search.
#[derive(Clone, Debug)]
pub struct SearchQuery {
    pub variables: usize,
    pub degree: usize,
    pub conditions: Vec<Condition>,
    pub non_cyclic: bool,
    pub fixed: Vec<Option<Perm>>,
    pub branch_ceiling: u64,
    pub workers: Option<usize>,
}

impl SearchQuery {
    pub fn new(variables: usize, degree: usize) -> SearchQuery {
        SearchQuery {
            variables,
            degree,
            conditions: Vec::new(),
            non_cyclic: false,
            fixed: vec![None; variables],
            branch_ceiling: DEFAULT_BRANCH_CEILING,
            workers: None,
        }
    }

    pub fn from_presentation(p: &Presentation, degree: usize) -> SearchQuery {
        let mut q = SearchQuery::new(p.generators, degree);
        for (l, r) in &p.relations {
            q.conditions.push(Condition::Equal(l.clone(), r.clone()));
        }
        q
    }

    /// Homomorphisms A[Γ] → S_N, or A̅[Γ] → S_N when `mod_center` is set.
    /// For D_n both forms of δ are imposed.
    pub fn for_entry(entry: &CatalogEntry, degree: usize, mod_center: bool) -> SearchQuery {
        let q = SearchQuery::from_presentation(&entry.presentation(), degree);
        if !mod_center {
            return q;
        }
        let mut center = vec![entry.delta_word()];
        if entry.ty.family == Family::D {
            center.push(entry.delta_word_from_big_delta());
        }
        q.mod_center(&center)
    }

    pub fn mod_center(mut self, words: &[Word]) -> SearchQuery {
        for w in words {
            self.conditions
                .push(Condition::Equal(w.clone(), Word::empty()));
        }
        self
    }

    pub fn non_cyclic(mut self, yes: bool) -> SearchQuery {
        self.non_cyclic = yes;
        self
    }

    pub fn equation(mut self, a: Word, b: Word) -> SearchQuery {
        self.conditions.push(Condition::Equal(a, b));
        self
    }

    pub fn inequation(mut self, a: Word, b: Word) -> SearchQuery {
        self.conditions.push(Condition::NotEqual(a, b));
        self
    }

    pub fn order_in(mut self, var: usize, orders: &[u64]) -> SearchQuery {
        self.conditions
            .push(Condition::OrderIn(var, orders.to_vec()));
        self
    }

    pub fn fix(mut self, var: usize, image: Perm) -> SearchQuery {
        self.fixed[var - 1] = Some(image);
        self
    }

    pub fn branch_ceiling(mut self, ceiling: u64) -> SearchQuery {
        self.branch_ceiling = ceiling;
        self
    }

    pub fn workers(mut self, workers: Option<usize>) -> SearchQuery {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.degree == 0 || self.degree > MAX_SEARCH_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "search degree must be in 1..={MAX_SEARCH_DEGREE}, got {}",
                self.degree
            )));
        }
        if self.fixed.len() != self.variables {
            return Err(Error::InvalidParameter(
                "one fixed slot per variable expected".into(),
            ));
        }
        for c in &self.conditions {
            if let Some(&v) = c
                .variables()
                .iter()
                .find(|&&v| v == 0 || v > self.variables)
            {
                return Err(Error::MissingAssignment(v));
            }
        }
        for p in self.fixed.iter().flatten() {
            if p.degree() != self.degree {
                return Err(Error::DegreeMismatch(p.degree(), self.degree));
            }
        }
        Ok(())
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn all_perms(degree: usize) -> Arc<Vec<Perm>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Perm>>>>> = OnceLock::new();
    let mut map = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("cache poisoned");
    Arc::clone(
        map.entry(degree)
            .or_insert_with(|| Arc::new(Perm::all(degree))),
    )
}

type ClassMap = HashMap<Vec<usize>, Vec<Perm>>;

fn classes_by_type(degree: usize) -> Arc<ClassMap> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ClassMap>>>> = OnceLock::new();
    let all = all_perms(degree);
    let mut map = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("cache poisoned");
    Arc::clone(map.entry(degree).or_insert_with(|| {
        let mut m: ClassMap = HashMap::new();
        for p in all.iter() {
            m.entry(p.cycle_type()).or_default().push(*p);
        }
        Arc::new(m)
    }))
}

/// All partitions of `n`, largest part first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The lexicographically least element of each conjugacy class of S_N.
pub fn class_representatives(degree: usize) -> Vec<Perm> {
    let mut reps: Vec<Perm> = partitions(degree)
        .iter()
        .map(|p| Perm::min_of_cycle_type(degree, p))
        .collect();
    reps.sort();
    reps
}

/// Search plan: the variable order and what is checked at each depth.
struct Plan {
    degree: usize,
    variables: usize,
    order: Vec<usize>,
    fixed: Vec<Option<Perm>>,
    checks: Vec<Vec<Compiled>>,
    commute_with: Vec<Vec<usize>>,
    conjugate_to: Vec<Vec<usize>>,
    upfront: Vec<Compiled>,
    non_cyclic: bool,
    all: Arc<Vec<Perm>>,
    by_type: Option<Arc<ClassMap>>,
    ceiling: u64,
}

impl Plan {
    fn new(q: &SearchQuery) -> Result<Plan> {
        q.validate()?;
        let n = q.variables;
        let vars: Vec<Vec<usize>> = q
            .conditions
            .iter()
            .map(|c| c.variables().iter().map(|v| v - 1).collect())
            .collect();
        let braids: Vec<(usize, usize, usize)> = q
            .conditions
            .iter()
            .filter_map(Condition::braid)
            .map(|(a, b, m)| (a - 1, b - 1, m))
            .collect();

        let mut assigned = vec![false; n];
        let mut order: Vec<usize> = (0..n).filter(|&v| q.fixed[v].is_some()).collect();
        for &v in &order {
            assigned[v] = true;
        }
        while order.len() < n {
            let score = |v: usize| {
                let completes = vars
                    .iter()
                    .filter(|vs| vs.contains(&v) && vs.iter().all(|&x| x == v || assigned[x]))
                    .count();
                let linked = |odd: bool| {
                    braids
                        .iter()
                        .filter(|&&(a, b, m)| {
                            (m % 2 == 1) == odd
                                && ((a == v && assigned[b]) || (b == v && assigned[a]))
                        })
                        .count()
                };
                let involved = vars.iter().filter(|vs| vs.contains(&v)).count();
                (
                    completes.min(1),
                    linked(true),
                    linked(false),
                    completes,
                    involved,
                )
            };
            let best = (0..n)
                .filter(|&v| !assigned[v])
                .max_by(|&a, &b| score(a).cmp(&score(b)).then(b.cmp(&a)))
                .expect("unassigned variable");
            assigned[best] = true;
            order.push(best);
        }

        let mut depth_of = vec![0usize; n];
        for (d, &v) in order.iter().enumerate() {
            depth_of[v] = d;
        }
        let mut checks: Vec<Vec<Compiled>> = vec![Vec::new(); n];
        let mut upfront = Vec::new();
        for (c, vs) in q.conditions.iter().zip(&vars) {
            match vs.iter().map(|&v| depth_of[v]).max() {
                Some(d) => checks[d].push(Compiled::new(c)),
                None => upfront.push(Compiled::new(c)),
            }
        }
        let mut commute_with = vec![Vec::new(); n];
        let mut conjugate_to = vec![Vec::new(); n];
        for &(a, b, m) in &braids {
            let (early, late) = if depth_of[a] < depth_of[b] {
                (a, b)
            } else {
                (b, a)
            };
            let d = depth_of[late];
            if m == 2 {
                commute_with[d].push(early);
            } else if m % 2 == 1 {
                conjugate_to[d].push(early);
            }
        }
        let needs_classes = conjugate_to.iter().any(|c| !c.is_empty());
        Ok(Plan {
            degree: q.degree,
            variables: n,
            order,
            fixed: q.fixed.clone(),
            checks,
            commute_with,
            conjugate_to,
            upfront,
            non_cyclic: q.non_cyclic,
            all: all_perms(q.degree),
            by_type: needs_classes.then(|| classes_by_type(q.degree)),
            ceiling: q.branch_ceiling,
        })
    }

    fn candidates(&self, depth: usize, images: &[Perm]) -> Vec<Perm> {
        let v = self.order[depth];
        if let Some(p) = self.fixed[v] {
            return vec![p];
        }
        let nfact = factorial(self.degree);
        let mut best: Option<(u64, Perm, bool)> = None;
        for &c in &self.commute_with[depth] {
            let size = images[c].centralizer_order();
            if best.as_ref().is_none_or(|b| size < b.0) {
                best = Some((size, images[c], true));
            }
        }
        for &c in &self.conjugate_to[depth] {
            let size = nfact / images[c].centralizer_order();
            if best.as_ref().is_none_or(|b| size < b.0) {
                best = Some((size, images[c], false));
            }
        }
        // odd braid relations force a common cycle type
        let want = self.conjugate_to[depth]
            .first()
            .map(|&c| images[c].cycle_type());
        if self.conjugate_to[depth]
            .iter()
            .any(|&c| Some(images[c].cycle_type()) != want)
        {
            return Vec::new();
        }
        match best {
            Some((_, p, true)) => {
                let mut cands = p.centralizer();
                if let Some(t) = want {
                    cands.retain(|x| x.cycle_type() == t);
                }
                cands
            }
            Some((_, p, false)) => self
                .by_type
                .as_ref()
                .and_then(|m| m.get(&p.cycle_type()))
                .cloned()
                .unwrap_or_default(),
            None => self.all.to_vec(),
        }
    }

    fn dfs(
        &self,
        depth: usize,
        images: &mut Vec<Perm>,
        out: &mut Vec<Vec<Perm>>,
        counter: &Counter<'_>,
    ) -> Result<()> {
        if depth == self.order.len() {
            if !(self.non_cyclic && images.windows(2).all(|w| w[0] == w[1])) {
                out.push(images.clone());
            }
            return Ok(());
        }
        let v = self.order[depth];
        let cands = self.candidates(depth, images);
        counter.add(cands.len() as u64)?;
        for c in cands {
            images[v] = c;
            if self.checks[depth]
                .iter()
                .all(|k| k.holds(images, self.degree))
            {
                self.dfs(depth + 1, images, out, counter)?;
            }
        }
        Ok(())
    }

    /// Runs the search below `depth`, splitting the candidates at that depth
    /// across workers. `first` overrides the candidate list at `depth`.
    fn run_from(
        &self,
        images: Vec<Perm>,
        depth: usize,
        first: Option<Vec<Perm>>,
    ) -> Result<Vec<Vec<Perm>>> {
        if !self.upfront.iter().all(|k| k.holds(&images, self.degree)) {
            return Ok(Vec::new());
        }
        let counter_total = AtomicU64::new(0);
        let counter = Counter {
            total: &counter_total,
            ceiling: self.ceiling,
        };
        if depth == self.order.len() {
            let mut out = Vec::new();
            self.dfs(depth, &mut images.clone(), &mut out, &counter)?;
            return Ok(out);
        }
        let v = self.order[depth];
        let cands = first.unwrap_or_else(|| self.candidates(depth, &images));
        counter.add(cands.len() as u64)?;
        let parts: Vec<Result<Vec<Vec<Perm>>>> = cands
            .par_iter()
            .map(|&c| {
                let mut imgs = images.clone();
                imgs[v] = c;
                let mut out = Vec::new();
                if self.checks[depth]
                    .iter()
                    .all(|k| k.holds(&imgs, self.degree))
                {
                    self.dfs(depth + 1, &mut imgs, &mut out, &counter)?;
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all.sort();
        Ok(all)
    }

    fn initial_images(&self) -> (Vec<Perm>, usize) {
        let mut images = vec![Perm::identity(self.degree); self.variables];
        let mut depth = 0;
        for &v in &self.order {
            match self.fixed[v] {
                Some(p) => {
                    images[v] = p;
                    depth += 1;
                }
                None => break,
            }
        }
        (images, depth)
    }

    fn fixed_checks_hold(&self, images: &[Perm], depth: usize) -> bool {
        self.checks[..depth]
            .iter()
            .flatten()
            .all(|k| k.holds(images, self.degree))
    }
}

struct Counter<'a> {
    total: &'a AtomicU64,
    ceiling: u64,
}

impl Counter<'_> {
    fn add(&self, k: u64) -> Result<()> {
        let t = self.total.fetch_add(k, Ordering::Relaxed) + k;
        if t > self.ceiling {
            return Err(Error::ResourceBound(format!(
                "search explored more than {} branches",
                self.ceiling
            )));
        }
        Ok(())
    }
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Every solution of the query, sorted.
pub fn solve(q: &SearchQuery) -> Result<Vec<HomTuple>> {
    let plan = Plan::new(q)?;
    let (images, depth) = plan.initial_images();
    if !plan.fixed_checks_hold(&images, depth) {
        return Ok(Vec::new());
    }
    let raw = with_workers(q.workers, || plan.run_from(images, depth, None))??;
    Ok(raw.into_iter().map(HomTuple::new).collect())
}

/// Result of a class-level search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSearch {
    pub classes: Vec<HomClass>,
    /// Σ orbit sizes, i.e. the number of solutions.
    pub total: u64,
}

/// The conjugacy classes of solutions. Without fixed variables the first
/// variable in the plan is pinned to one representative per conjugacy class
/// of S_N, which visits every orbit at least once.
pub fn solve_classes(q: &SearchQuery) -> Result<ClassSearch> {
    if q.fixed.iter().any(Option::is_some) {
        let cls = classes(&solve(q)?);
        let total = cls.iter().map(|c| c.orbit_size).sum();
        return Ok(ClassSearch {
            classes: cls,
            total,
        });
    }
    let plan = Plan::new(q)?;
    let images = vec![Perm::identity(plan.degree); plan.variables];
    let reps = class_representatives(plan.degree);
    let raw = with_workers(q.workers, || plan.run_from(images, 0, Some(reps)))??;
    let nfact = factorial(plan.degree);
    let seen: BTreeMap<Vec<Perm>, u64> = orbit_representatives(&raw)
        .into_iter()
        .map(|(c, stab)| (c, nfact / stab))
        .collect();
    let classes: Vec<HomClass> = seen
        .into_iter()
        .map(|(c, orbit_size)| HomClass {
            canonical: HomTuple::new(c),
            orbit_size,
        })
        .collect();
    let total = classes.iter().map(|c| c.orbit_size).sum();
    Ok(ClassSearch { classes, total })
}

/// The least tuple in the orbit of `images` under simultaneous conjugation,
/// and the order of the tuple's stabilizer.
pub fn canonical_form(images: &[Perm]) -> (Vec<Perm>, u64) {
    let Some(u) = images.first() else {
        return (Vec::new(), 1);
    };
    let n = u.degree();
    let m = Perm::min_of_cycle_type(n, &u.cycle_type());
    let g0 = u.conjugator_to(&m).expect("same cycle type");
    let base: Vec<Perm> = images
        .iter()
        .map(|p| Perm::conjugate_unchecked(&g0, p))
        .collect();
    let mut best: Option<Vec<Perm>> = None;
    let mut stab = 0u64;
    'outer: for h in m.centralizer() {
        let mut cand = Vec::with_capacity(base.len());
        cand.push(m);
        let mut ord = std::cmp::Ordering::Equal;
        for (i, p) in base.iter().enumerate().skip(1) {
            let c = Perm::conjugate_unchecked(&h, p);
            if ord == std::cmp::Ordering::Equal {
                if let Some(b) = &best {
                    ord = c.cmp(&b[i]);
                    if ord == std::cmp::Ordering::Greater {
                        continue 'outer;
                    }
                }
            }
            cand.push(c);
        }
        match (&best, ord) {
            (None, _) | (_, std::cmp::Ordering::Less) => {
                best = Some(cand);
                stab = 1;
            }
            _ => stab += 1,
        }
    }
    (best.expect("centralizer is nonempty"), stab)
}

pub fn canonicalize(t: &HomTuple) -> HomTuple {
    HomTuple {
        images: canonical_form(&t.images).0,
        signs: t.signs.clone(),
    }
}

/// Partitions tuples into orbits under simultaneous conjugation, sorted by
/// canonical representative. Signs are conjugation invariant and kept as
/// part of the key.
pub fn classes(tuples: &[HomTuple]) -> Vec<HomClass> {
    let mut by_signs: BTreeMap<Option<Vec<i8>>, Vec<Vec<Perm>>> = BTreeMap::new();
    for t in tuples {
        by_signs
            .entry(t.signs.clone())
            .or_default()
            .push(t.images.clone());
    }
    let mut out: Vec<HomClass> = Vec::new();
    for (signs, group) in by_signs {
        let nfact = factorial(group[0].first().map_or(0, Perm::degree));
        for (images, stab) in orbit_representatives(&group) {
            out.push(HomClass {
                canonical: HomTuple {
                    images,
                    signs: signs.clone(),
                },
                orbit_size: nfact / stab,
            });
        }
    }
    out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    out
}

/// Canonical forms and stabilizer orders of the distinct orbits met by
/// `tuples`. Each orbit is expanded once under the centralizer of its
/// normalized first image, so repeated members cost a lookup.
fn orbit_representatives(tuples: &[Vec<Perm>]) -> Vec<(Vec<Perm>, u64)> {
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut cents: HashMap<Perm, Vec<Perm>> = HashMap::new();
    let mut out = Vec::new();
    for t in tuples {
        let Some(u) = t.first() else {
            out.push((Vec::new(), 1));
            continue;
        };
        let m = Perm::min_of_cycle_type(u.degree(), &u.cycle_type());
        let g0 = u.conjugator_to(&m).expect("same cycle type");
        let base: Vec<Perm> = t
            .iter()
            .map(|p| Perm::conjugate_unchecked(&g0, p))
            .collect();
        if seen.contains(&base) {
            continue;
        }
        let cent = cents.entry(m).or_insert_with(|| m.centralizer());
        let mut orbit: HashSet<Vec<Perm>> = HashSet::new();
        for h in cent.iter() {
            orbit.insert(
                base.iter()
                    .map(|p| Perm::conjugate_unchecked(h, p))
                    .collect(),
            );
        }
        let stab = (cent.len() / orbit.len()) as u64;
        let canonical = orbit.iter().min().expect("orbit is nonempty").clone();
        seen.extend(orbit);
        out.push((canonical, stab));
    }
    out.sort();
    out
}

/// Whether the homomorphism is cyclic. For a connected graph this is
/// equivalent to all generator images being equal: commuting images that
/// also satisfy a braid relation coincide, and this propagates along edges.
pub fn is_cyclic(t: &HomTuple, graph: &CoxeterGraph) -> Result<bool> {
    if !graph.is_connected() {
        return Err(Error::InvalidParameter(
            "cyclicity is only decided for connected graphs".into(),
        ));
    }
    Ok(t.is_constant())
}

/// All sign characters of A[Γ]: maps to ±1 constant on the components of
/// the subgraph of odd-labelled edges.
pub fn sign_assignments(graph: &CoxeterGraph) -> Vec<Vec<i8>> {
    let n = graph.n;
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if comp[y] == usize::MAX && graph.m[x][y] % 2 == 1 && x != y {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    (0..1u32 << count)
        .map(|mask| {
            (0..n)
                .map(|i| if mask >> comp[i] & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

/// The sign of `w` under a sign character.
pub fn sign_of(w: &Word, signs: &[i8]) -> i8 {
    let neg = w
        .letters()
        .iter()
        .filter(|l| signs[l.generator() - 1] < 0)
        .count();
    if neg % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The sign characters that kill every word in `center`.
pub fn sign_assignments_mod(graph: &CoxeterGraph, center: &[Word]) -> Vec<Vec<i8>> {
    sign_assignments(graph)
        .into_iter()
        .filter(|s| center.iter().all(|w| sign_of(w, s) == 1))
        .collect()
}

/// Solves for `variables` unknowns in S_N. Generators `s1..sK` in the
/// conditions refer to the `K` constants, the following ones to the unknowns.
pub fn constraint_search(
    degree: usize,
    constants: &[Perm],
    variables: usize,
    conditions: Vec<Condition>,
) -> Result<Vec<Vec<Perm>>> {
    let k = constants.len();
    let mut q = SearchQuery::new(k + variables, degree);
    q.conditions = conditions;
    for (i, c) in constants.iter().enumerate() {
        q = q.fix(i + 1, *c);
    }
    Ok(solve(&q)?
        .into_iter()
        .map(|t| t.images[k..].to_vec())
        .collect())
}

/// Index of the class containing `t`, if any.
pub fn find_class(classes: &[HomClass], t: &HomTuple) -> Option<usize> {
    let c = canonicalize(t);
    classes.iter().position(|k| k.canonical == c)
}

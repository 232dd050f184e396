//! Epimorphisms between two-bridge knot groups.
//!
//! `K ≥ K'` holds exactly when some even word of `K` is obtained from a word
//! `a` of `K'` by the interleaving
//!
//! ```text
//! (ε_1 a, 2c_1, ε_2 a⁻¹, 2c_2, ..., 2c_2r, ε_2r+1 a)      ε_1 = +1
//! ```
//!
//! where `a⁻¹` is `a` reversed. A gap with `c_j = 0` is deleted and the two
//! entries around it are added together. Detection here is generate-and-match:
//! every admissible interleaving of every small enough target is composed and
//! compared with the canonical word of `K`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::enumerate_words;
use crate::contfrac::EvenWord;
use crate::error::{Error, Result};
use crate::knot::{braid_index, crossing_number, knot_canonical, knot_from_word, KnotClass};
use crate::par::{map_reduce, Parallelism};

/// Parameters of one interleaving.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrsParams {
    pub target: EvenWord,
    /// Number of gap pairs; there are `2r` gaps and `2r + 1` copies of the
    /// target.
    pub r: u32,
    /// Copy signs, `eps[0] = +1`.
    pub eps: Vec<i8>,
    /// Gap values `c_1..c_2r`; the gap entry is `2c_j`.
    pub cvec: Vec<i64>,
}

impl OrsParams {
    pub fn new(target: EvenWord, r: u32, eps: Vec<i8>, cvec: Vec<i64>) -> Result<Self> {
        let p = OrsParams {
            target,
            r,
            eps,
            cvec,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let gaps = 2 * self.r as usize;
        if self.r == 0 {
            return Err(Error::InvalidParams("r must be positive".into()));
        }
        if self.eps.len() != gaps + 1 || self.cvec.len() != gaps {
            return Err(Error::InvalidParams(format!(
                "r = {} needs {} signs and {} gap values, got {} and {}",
                self.r,
                gaps + 1,
                gaps,
                self.eps.len(),
                self.cvec.len()
            )));
        }
        if self.eps[0] != 1 {
            return Err(Error::InvalidParams("the first sign must be +1".into()));
        }
        if let Some(e) = self.eps.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::InvalidParams(format!("sign {e} is not ±1")));
        }
        for (j, &c) in self.cvec.iter().enumerate() {
            if c == 0 && self.eps[j + 1] != self.eps[j] {
                return Err(Error::InvalidParams(format!(
                    "gap {} is zero but the signs around it differ",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    pub fn nonzero_gaps(&self) -> usize {
        self.cvec.iter().filter(|&&c| c != 0).count()
    }
}

/// Builds the interleaved word, deleting zero gaps and merging their
/// neighbours.
pub fn ors_compose(p: &OrsParams) -> Result<EvenWord> {
    p.validate()?;
    compose_entries(p.target.entries(), &p.eps, &p.cvec).map(EvenWord::from_vec_unchecked)
}

fn compose_entries(a: &[i64], eps: &[i8], cvec: &[i64]) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = Vec::with_capacity(eps.len() * (a.len() + 1));
    let mut pending_merge = false;
    for (j, &e) in eps.iter().enumerate() {
        let e = e as i64;
        let block = a.len();
        for i in 0..block {
            // Even-numbered copies (0-based) are `a`, odd ones are `a⁻¹`.
            let x = if j % 2 == 0 { a[i] } else { a[block - 1 - i] };
            let x = e * x;
            if i == 0 && pending_merge {
                let last = out.last_mut().expect("merge needs a previous entry");
                *last += x;
                if *last == 0 {
                    return Err(Error::MergeCancellation { gap: j });
                }
            } else {
                out.push(x);
            }
        }
        pending_merge = false;
        if let Some(&c) = cvec.get(j) {
            if c == 0 {
                pending_merge = true;
            } else {
                out.push(2 * c);
            }
        }
    }
    Ok(out)
}

/// The non-negative terms that add up to `braid(K) − (3·braid(K') − 4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InequalityAudit {
    /// `(2r − 2)(braid(K') − 2)`
    pub term_copies: i64,
    /// `Σ_{c_j ≠ 0} (|c_j| − 1)`
    pub term_cbudget: i64,
    /// `2r − #{c_j ≠ 0}`
    pub term_zero: i64,
    /// `(2r + 1)·t(a) + 2·#{c_j ≠ 0} − t(ã)`
    pub term_signs: i64,
    /// `braid(K) − 3·braid(K') + 4`
    pub slack: i64,
}

impl InequalityAudit {
    pub fn terms(&self) -> [i64; 4] {
        [
            self.term_copies,
            self.term_cbudget,
            self.term_zero,
            self.term_signs,
        ]
    }
}

fn audit_params(p: &OrsParams, composed: &EvenWord) -> Result<InequalityAudit> {
    let a = &p.target;
    let r = p.r as i64;
    let nz = p.nonzero_gaps() as i64;
    let braid_small = braid_index(a) as i64;
    let audit = InequalityAudit {
        term_copies: (2 * r - 2) * (braid_small - 2),
        term_cbudget: p
            .cvec
            .iter()
            .filter(|&&c| c != 0)
            .map(|c| c.abs() - 1)
            .sum(),
        term_zero: 2 * r - nz,
        term_signs: (2 * r + 1) * a.sign_changes() as i64 + 2 * nz - composed.sign_changes() as i64,
        slack: braid_index(composed) as i64 - 3 * braid_small + 4,
    };
    if let Some(t) = audit.terms().iter().find(|&&t| t < 0) {
        return Err(Error::AuditFailure(format!(
            "negative term {t} in {audit:?}"
        )));
    }
    if audit.terms().iter().sum::<i64>() != audit.slack {
        return Err(Error::AuditFailure(format!(
            "terms do not sum to the slack in {audit:?}"
        )));
    }
    Ok(audit)
}

/// A verified interleaving realizing `big ≥ small`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EpiWitness {
    pub big: KnotClass,
    pub small: KnotClass,
    pub params: OrsParams,
    pub audit: InequalityAudit,
}

impl EpiWitness {
    /// Recomposes the parameters and checks every recorded field.
    pub fn from_params(params: OrsParams) -> Result<Self> {
        let composed = ors_compose(&params)?;
        let audit = audit_params(&params, &composed)?;
        Ok(EpiWitness {
            big: knot_from_word(&composed)?,
            small: knot_from_word(&params.target)?,
            params,
            audit,
        })
    }

    pub fn verify(&self) -> Result<()> {
        let again = EpiWitness::from_params(self.params.clone())?;
        if again != *self {
            return Err(Error::AuditFailure(format!(
                "witness does not recompose to {}",
                self.big
            )));
        }
        Ok(())
    }
}

/// Recomputes the four terms from the witness parameters.
pub fn audit_inequality(w: &EpiWitness) -> Result<InequalityAudit> {
    let composed = ors_compose(&w.params)?;
    if knot_canonical(&composed) != *w.big.canon() {
        return Err(Error::AuditFailure(format!(
            "parameters compose to {composed}, not to {}",
            w.big
        )));
    }
    audit_params(&w.params, &composed)
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Maximum number of interleavings composed in one query.
    pub max_compositions: u64,
    pub parallelism: Parallelism,
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_compositions: DEFAULT_SEARCH_BUDGET,
            parallelism: Parallelism::default(),
        }
    }
}

/// What a composed word has to look like to be kept.
#[derive(Clone, Copy, Debug)]
enum Goal<'a> {
    /// Exactly this knot (its canonical word).
    Knot(&'a EvenWord),
    /// Any knot with crossing number at most this.
    UpTo(u32),
}

/// One independent search slice: a target word and a gap count.
struct Unit {
    target: EvenWord,
    r: u32,
}

struct UnitResult {
    composed: u64,
    capped: bool,
    found: Vec<(EvenWord, OrsParams)>,
}

/// Both words of every knot with crossing number in `crossings`.
fn target_words(crossings: impl Iterator<Item = u32>) -> Vec<EvenWord> {
    let mut out = Vec::new();
    for c in crossings {
        for w in enumerate_words(c) {
            let rn = w.rev_neg();
            let palindromic = rn == w;
            out.push(w);
            if !palindromic {
                out.push(rn);
            }
        }
    }
    out
}

fn units_for(targets: Vec<EvenWord>, max_c: u32) -> Vec<Unit> {
    let mut out = Vec::new();
    for target in targets {
        let small_c = crossing_number(&target);
        let mut r = 1;
        while (2 * r + 1) * small_c <= max_c {
            out.push(Unit {
                target: target.clone(),
                r,
            });
            r += 1;
        }
    }
    out
}

/// Enumerates gap vectors and signs for one unit.
struct GapWalker<'a> {
    unit: &'a Unit,
    goal: Goal<'a>,
    /// Allowed `Σ_{c_j ≠ 0} (|c_j| − 1)`.
    max_cost: i64,
    /// For exact goals: required number of zero gaps and `Σ|c_j|`.
    zeros: Option<usize>,
    abs_total: Option<i64>,
    cap: u64,
    composed: u64,
    capped: bool,
    cvec: Vec<i64>,
    eps: Vec<i8>,
    found: Vec<(EvenWord, OrsParams)>,
}

impl<'a> GapWalker<'a> {
    fn new(unit: &'a Unit, goal: Goal<'a>, cap: u64) -> Option<Self> {
        let a = &unit.target;
        let r = unit.r as i64;
        let copies = 2 * r + 1;
        let small_c = crossing_number(a) as i64;
        let (max_c, zeros, abs_total) = match goal {
            Goal::Knot(w) => {
                let len = copies * a.len() as i64 + 2 * r;
                let extra = len - w.len() as i64;
                if extra < 0 || extra % 2 != 0 || extra / 2 > 2 * r {
                    return None;
                }
                let abs = w.abs_sum() - copies * a.abs_sum();
                if abs < 0 || abs % 2 != 0 {
                    return None;
                }
                (
                    crossing_number(w) as i64,
                    Some((extra / 2) as usize),
                    Some(abs / 2),
                )
            }
            Goal::UpTo(c) => (c as i64, None, None),
        };
        // c(ã) ≥ (2r + 1)·c(a) + 2·Σ_{c_j ≠ 0}(|c_j| − 1).
        let spare = max_c - copies * small_c;
        if spare < 0 {
            return None;
        }
        Some(GapWalker {
            unit,
            goal,
            max_cost: spare / 2,
            zeros,
            abs_total,
            cap,
            composed: 0,
            capped: false,
            cvec: Vec::with_capacity(2 * unit.r as usize),
            eps: vec![1],
            found: Vec::new(),
        })
    }

    fn run(mut self) -> UnitResult {
        let zeros = self.zeros;
        let abs = self.abs_total;
        self.walk(self.max_cost, zeros, abs);
        UnitResult {
            composed: self.composed,
            capped: self.capped,
            found: self.found,
        }
    }

    fn walk(&mut self, cost_left: i64, zeros_left: Option<usize>, abs_left: Option<i64>) {
        if self.capped {
            return;
        }
        let gaps = 2 * self.unit.r as usize;
        let j = self.cvec.len();
        if j == gaps {
            if zeros_left.unwrap_or(0) == 0 && abs_left.unwrap_or(0) == 0 {
                self.leaf();
            }
            return;
        }
        let remaining = gaps - j;
        if let Some(z) = zeros_left {
            if z > remaining {
                return;
            }
        }
        let last_eps = *self.eps.last().unwrap();

        // c_j = 0 keeps the sign.
        if zeros_left.is_none_or(|z| z > 0) {
            self.cvec.push(0);
            self.eps.push(last_eps);
            self.walk(cost_left, zeros_left.map(|z| z - 1), abs_left);
            self.eps.pop();
            self.cvec.pop();
        }
        if zeros_left == Some(remaining) {
            return;
        }
        let mut max_v = 1 + cost_left;
        if let Some(a) = abs_left {
            max_v = max_v.min(a);
        }
        for v in 1..=max_v {
            for c in [v, -v] {
                for e in [1i8, -1] {
                    self.cvec.push(c);
                    self.eps.push(e);
                    self.walk(cost_left - (v - 1), zeros_left, abs_left.map(|a| a - v));
                    self.eps.pop();
                    self.cvec.pop();
                }
            }
        }
    }

    fn leaf(&mut self) {
        if self.composed >= self.cap {
            self.capped = true;
            return;
        }
        self.composed += 1;
        let entries = match compose_entries(self.unit.target.entries(), &self.eps, &self.cvec) {
            Ok(e) => e,
            Err(_) => unreachable!("zero gaps always carry equal signs here"),
        };
        let word = EvenWord::from_vec_unchecked(entries);
        let keep = match self.goal {
            Goal::Knot(k) => word.len() == k.len() && knot_canonical(&word) == *k,
            Goal::UpTo(c) => crossing_number(&word) <= c,
        };
        if keep {
            let params = OrsParams {
                target: self.unit.target.clone(),
                r: self.unit.r,
                eps: self.eps.clone(),
                cvec: self.cvec.clone(),
            };
            self.found.push((knot_canonical(&word), params));
        }
    }
}

fn run_search(units: Vec<Unit>, goal: Goal<'_>, budget: &SearchBudget) -> (Vec<EpiWitness>, bool) {
    let cap = budget.max_compositions;
    let results: Vec<UnitResult> = map_reduce(
        units.into_iter().enumerate().collect(),
        budget.parallelism,
        |(i, unit)| {
            let res = GapWalker::new(&unit, goal, cap)
                .map(GapWalker::run)
                .unwrap_or(UnitResult {
                    composed: 0,
                    capped: false,
                    found: Vec::new(),
                });
            vec![(i, res)]
        },
        Vec::new,
        |mut a, b| {
            a.extend(b);
            a
        },
    )
    .into_iter()
    .fold(BTreeMap::new(), |mut acc, (i, r)| {
        acc.insert(i, r);
        acc
    })
    .into_values()
    .collect();

    // Accept units in order while the running total stays within budget.
    let mut total = 0u64;
    let mut exceeded = false;
    let mut witnesses = Vec::new();
    for res in results {
        total += res.composed;
        if res.capped || total > cap {
            exceeded = true;
            break;
        }
        for (_, params) in res.found {
            let w = EpiWitness::from_params(params).expect("search produced an invalid witness");
            witnesses.push(w);
        }
    }
    witnesses.sort();
    witnesses.dedup();
    (witnesses, exceeded)
}

/// Every witness `K ≥ K'` for proper two-bridge targets `K'`, sorted.
pub fn epi_targets(k: &KnotClass, budget: &SearchBudget) -> Result<Vec<EpiWitness>> {
    let c = k.crossing();
    let targets = target_words(3..=c / 3);
    let units = units_for(targets, c);
    let (found, exceeded) = run_search(units, Goal::Knot(k.canon()), budget);
    if exceeded {
        return Err(Error::BudgetExceeded {
            budget: budget.max_compositions,
            partial: found,
        });
    }
    Ok(found)
}

/// First witness (in [`epi_targets`] order) with `small == kp`.
pub fn admits_epi(
    k: &KnotClass,
    kp: &KnotClass,
    budget: &SearchBudget,
) -> Result<Option<EpiWitness>> {
    if 3 * kp.crossing() > k.crossing() {
        return Ok(None);
    }
    let mut targets = vec![kp.canon().clone()];
    let rn = kp.canon().rev_neg();
    if rn != targets[0] {
        targets.push(rn);
    }
    let units = units_for(targets, k.crossing());
    let (found, exceeded) = run_search(units, Goal::Knot(k.canon()), budget);
    if exceeded {
        return Err(Error::BudgetExceeded {
            budget: budget.max_compositions,
            partial: found,
        });
    }
    Ok(found.into_iter().next())
}

pub fn is_minimal(k: &KnotClass, budget: &SearchBudget) -> Result<bool> {
    Ok(epi_targets(k, budget)?.is_empty())
}

/// The distinct target knots among a witness list, in order.
pub fn target_knots(witnesses: &[EpiWitness]) -> Vec<KnotClass> {
    let mut out: Vec<KnotClass> = witnesses.iter().map(|w| w.small.clone()).collect();
    out.sort();
    out.dedup();
    out
}

/// One edge of the epimorphism digraph: the first witness for the pair and
/// how many were found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiEdge {
    pub witness: EpiWitness,
    pub witness_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiGraph {
    pub max_c: u32,
    pub nodes: Vec<KnotClass>,
    pub edges: Vec<EpiEdge>,
}

/// Epimorphism digraph on all knots with crossing number at most `max_c`,
/// built by composing every admissible interleaving once.
pub fn epi_graph(max_c: u32, budget: &SearchBudget) -> Result<EpiGraph> {
    let mut nodes = Vec::new();
    for c in 3..=max_c {
        for w in enumerate_words(c) {
            nodes.push(knot_from_word(&w)?);
        }
    }
    let units = units_for(target_words(3..=max_c / 3), max_c);
    let (found, exceeded) = run_search(units, Goal::UpTo(max_c), budget);
    if exceeded {
        return Err(Error::BudgetExceeded {
            budget: budget.max_compositions,
            partial: found,
        });
    }
    let mut grouped: BTreeMap<(KnotClass, KnotClass), Vec<EpiWitness>> = BTreeMap::new();
    for w in found {
        grouped
            .entry((w.big.clone(), w.small.clone()))
            .or_default()
            .push(w);
    }
    let edges = grouped
        .into_values()
        .map(|ws| EpiEdge {
            witness_count: ws.len(),
            witness: ws.into_iter().next().expect("nonempty group"),
        })
        .collect();
    Ok(EpiGraph {
        max_c,
        nodes,
        edges,
    })
}

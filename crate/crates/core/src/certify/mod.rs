//! Multi-guess budget framework and certified upper bounds on the
//! hat-guessing number.
//!
//! A reduction chain removes one vertex per step. A step removing `v` from
//! the current state graph, with budgets `g` before and `g'` after, is valid
//! when
//!
//! ```text
//! g(v)/q + sum over neighbours w of v of g(w)/(g'(w) + 1)  <  1
//! ```
//!
//! holds in exact rational arithmetic and `g'` agrees with `g` on every
//! surviving vertex outside the neighbourhood of `v`. A chain of valid steps
//! that empties the graph proves that the multi-guess game with budgets `g`
//! (taken on the full graph) is not winnable with `q` colours, i.e. it
//! certifies the bound `q - 1`. Because every budget is at least one, the
//! bound applies to the plain hat-guessing number as well.
//!
//! The emitted [`ReductionCertificate`] embeds the neighbour lists, full
//! budget maps and the exact left-hand side of every step, so it can be
//! re-validated by [`checker::validate_certificate`] with no access to the
//! budget rule that produced it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::graph::outerplanar::{MopFailure, is_maximal_outerplanar};
use crate::graph::Graph;
use crate::ratio::big_rational_serde;

pub mod checker;

pub use checker::{CheckError, validate_certificate};

/// Per-vertex guess budget; values are positive.
pub type Budget = u128;

/// Map from vertex to its guess budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessBudget(pub BTreeMap<usize, Budget>);

impl GuessBudget {
    pub fn uniform(g: &Graph, k: Budget) -> GuessBudget {
        GuessBudget(g.vertices().map(|v| (v, k)).collect())
    }

    pub fn get(&self, v: usize) -> Option<Budget> {
        self.0.get(&v).copied()
    }
}

/// Deterministic rule assigning budgets to any residual graph state.
///
/// `Theorem { d }` is the schedule `g(v) = (2d)^(d - deg(v))` for
/// `deg(v) <= d` and `1` otherwise. `Outerplanar` assigns `4, 2, 1` to
/// degrees `2, 3, >= 4`; the chain tail below degree 2 keeps doubling
/// (`8` at degree 1, `16` at degree 0), which keeps every step passing at
/// `q = 41`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum BudgetRule {
    Theorem { d: usize },
    Outerplanar,
    Constant { k: Budget },
    Table { budgets: GuessBudget },
}

/// Live view of a host graph with some vertices removed.
#[derive(Clone)]
pub struct Residual<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    alive_count: usize,
}

impl<'a> Residual<'a> {
    pub fn new(g: &'a Graph) -> Residual<'a> {
        Residual {
            g,
            alive: vec![true; g.n()],
            deg: g.vertices().map(|v| g.degree(v)).collect(),
            alive_count: g.n(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.n()).filter(|&v| self.alive[v])
    }

    pub fn alive_neighbors(&self, v: usize) -> Vec<usize> {
        self.g.neighbors(v).iter().copied().filter(|&w| self.alive[w]).collect()
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        self.alive_count -= 1;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }
}

/// One failing step, reported with its exact left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedStep {
    pub v: usize,
    pub lhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyError {
    QZero,
    /// `(2d)^d + 1` exceeds the supported 128-bit range (d > 23).
    QTooLarge { d: usize },
    BudgetMissing { v: usize },
    BudgetZero { v: usize },
    /// `g_next` changed a surviving vertex outside the removed vertex's
    /// neighbourhood.
    BudgetMismatch { x: usize },
    VertexNotAlive { v: usize },
    BadOrder { reason: String },
    /// Explicit-order certification hit a failing step.
    StepFailed(FailedStep),
    /// Auto search found no passing step; the best (smallest) failing
    /// left-hand side is reported.
    NoPassingStep { stage: usize, best: Option<FailedStep> },
    NotMaximalOuterplanar(MopFailure),
    /// A schedule the proof guarantees to pass failed: an implementation bug.
    Internal(String),
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::QZero => write!(f, "q must be positive"),
            CertifyError::QTooLarge { d } => {
                write!(f, "(2*{d})^{d} + 1 exceeds the supported 128-bit range")
            }
            CertifyError::BudgetMissing { v } => write!(f, "budget missing for vertex {v}"),
            CertifyError::BudgetZero { v } => write!(f, "budget for vertex {v} must be positive"),
            CertifyError::BudgetMismatch { x } => {
                write!(f, "g' changes vertex {x} outside the removed neighbourhood")
            }
            CertifyError::VertexNotAlive { v } => write!(f, "vertex {v} not in the state graph"),
            CertifyError::BadOrder { reason } => write!(f, "bad elimination order: {reason}"),
            CertifyError::StepFailed(fs) => {
                write!(f, "step removing {} fails: lhs = {} >= 1", fs.v, fs.lhs)
            }
            CertifyError::NoPassingStep { stage, best } => match best {
                Some(fs) => write!(
                    f,
                    "no passing step at stage {stage}; best candidate {} has lhs = {}",
                    fs.v, fs.lhs
                ),
                None => write!(f, "no passing step at stage {stage}"),
            },
            CertifyError::NotMaximalOuterplanar(reason) => {
                write!(f, "input is not maximal outerplanar: {reason}")
            }
            CertifyError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for CertifyError {}

impl BudgetRule {
    /// Budget of a vertex with the given degree in the current state.
    fn value_for(&self, v: usize, residual_degree: usize) -> Result<Budget, CertifyError> {
        match self {
            BudgetRule::Theorem { d } => {
                if residual_degree > *d {
                    Ok(1)
                } else {
                    pow_u128(2 * *d as u128, (*d - residual_degree) as u32)
                        .ok_or(CertifyError::QTooLarge { d: *d })
                }
            }
            BudgetRule::Outerplanar => Ok(match residual_degree {
                0 => 16,
                1 => 8,
                2 => 4,
                3 => 2,
                _ => 1,
            }),
            BudgetRule::Constant { k } => {
                if *k == 0 {
                    Err(CertifyError::BudgetZero { v })
                } else {
                    Ok(*k)
                }
            }
            BudgetRule::Table { budgets } => match budgets.get(v) {
                None => Err(CertifyError::BudgetMissing { v }),
                Some(0) => Err(CertifyError::BudgetZero { v }),
                Some(k) => Ok(k),
            },
        }
    }

    /// Budgets for every alive vertex of the state.
    pub fn budgets(&self, res: &Residual<'_>) -> Result<GuessBudget, CertifyError> {
        let mut map = BTreeMap::new();
        for v in res.alive_vertices() {
            map.insert(v, self.value_for(v, res.degree(v))?);
        }
        Ok(GuessBudget(map))
    }

    /// Budgets after additionally removing `v` (degrees of its neighbours
    /// drop by one).
    fn budgets_after(&self, res: &Residual<'_>, v: usize) -> Result<GuessBudget, CertifyError> {
        let nb = res.alive_neighbors(v);
        let mut map = BTreeMap::new();
        for u in res.alive_vertices() {
            if u == v {
                continue;
            }
            let deg = if nb.binary_search(&u).is_ok() { res.degree(u) - 1 } else { res.degree(u) };
            map.insert(u, self.value_for(u, deg)?);
        }
        Ok(GuessBudget(map))
    }
}

fn pow_u128(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// `(2d)^d`, the bound certified by the `Theorem { d }` schedule.
pub fn theorem_bound_value(d: usize) -> Result<Budget, CertifyError> {
    pow_u128(2 * d as u128, d as u32).ok_or(CertifyError::QTooLarge { d })
}

/// Result of checking one reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub lhs: BigRational,
    pub pass: bool,
}

fn big(x: Budget) -> BigInt {
    BigInt::from(x)
}

/// Checks the reduction inequality for removing `v` from the state graph,
/// exactly. `g` must cover every state vertex, `g_next` every surviving one,
/// and they must agree outside the closed neighbourhood of `v`.
pub fn check_reduction_step(
    res: &Residual<'_>,
    v: usize,
    g: &GuessBudget,
    g_next: &GuessBudget,
    q: Budget,
) -> Result<StepReport, CertifyError> {
    if q == 0 {
        return Err(CertifyError::QZero);
    }
    if v >= res.graph().n() || !res.is_alive(v) {
        return Err(CertifyError::VertexNotAlive { v });
    }
    let fetch = |budget: &GuessBudget, u: usize| -> Result<Budget, CertifyError> {
        match budget.get(u) {
            None => Err(CertifyError::BudgetMissing { v: u }),
            Some(0) => Err(CertifyError::BudgetZero { v: u }),
            Some(k) => Ok(k),
        }
    };
    let neighbors = res.alive_neighbors(v);
    for u in res.alive_vertices() {
        let before = fetch(g, u)?;
        if u == v {
            continue;
        }
        let after = fetch(g_next, u)?;
        if neighbors.binary_search(&u).is_err() && after != before {
            return Err(CertifyError::BudgetMismatch { x: u });
        }
    }
    let mut lhs = BigRational::new(big(fetch(g, v)?), big(q));
    for &w in &neighbors {
        lhs += BigRational::new(big(fetch(g, w)?), big(fetch(g_next, w)?) + BigInt::one());
    }
    let pass = lhs < BigRational::one();
    Ok(StepReport { lhs, pass })
}

/// Fast left-hand side for a candidate removal under a degree-based rule
/// (no budget maps built). Used by the auto order search.
fn candidate_lhs(
    res: &Residual<'_>,
    v: usize,
    rule: &BudgetRule,
    q: Budget,
) -> Result<BigRational, CertifyError> {
    let mut lhs = BigRational::new(big(rule.value_for(v, res.degree(v))?), big(q));
    for w in res.alive_neighbors(v) {
        let before = rule.value_for(w, res.degree(w))?;
        let after = rule.value_for(w, res.degree(w) - 1)?;
        lhs += BigRational::new(big(before), big(after) + BigInt::one());
    }
    Ok(lhs)
}

/// One recorded reduction step. `g` maps every state vertex to its budget
/// before the step, `g_next` every surviving vertex to its budget after.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub v: usize,
    pub neighbors: Vec<usize>,
    pub g: BTreeMap<usize, Budget>,
    pub g_next: BTreeMap<usize, Budget>,
    #[serde(with = "big_rational_serde")]
    pub lhs: BigRational,
}

/// A machine-checkable proof that the multi-guess game with the first step's
/// budgets is lost at `q` colours, i.e. the hat-guessing number is at most
/// `bound = q - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub q: Budget,
    pub bound: Budget,
    pub steps: Vec<ReductionStep>,
}

impl ReductionCertificate {
    /// Budgets claimed on the full graph (empty map for the empty graph).
    pub fn initial_budgets(&self) -> GuessBudget {
        GuessBudget(self.steps.first().map(|s| s.g.clone()).unwrap_or_default())
    }

    /// Largest step left-hand side across the chain, if any.
    pub fn worst_lhs(&self) -> Option<BigRational> {
        self.steps.iter().map(|s| s.lhs.clone()).max()
    }
}

/// Vertex order for [`certify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOrder {
    /// Greedy: at each stage take the lowest-index vertex whose step passes.
    Auto,
    /// Follow the given permutation of the vertices.
    Explicit(Vec<usize>),
}

/// Certifies `HG_g(G) <= q - 1` where `g` is the rule's budget on the full
/// graph, walking the given order and re-verifying every step exactly.
pub fn certify(
    g: &Graph,
    rule: &BudgetRule,
    q: Budget,
    order: &CertifyOrder,
) -> Result<ReductionCertificate, CertifyError> {
    if q == 0 {
        return Err(CertifyError::QZero);
    }
    let mut res = Residual::new(g);
    let mut steps = Vec::with_capacity(g.n());
    let explicit: Option<&[usize]> = match order {
        CertifyOrder::Auto => None,
        CertifyOrder::Explicit(seq) => {
            if seq.len() != g.n() {
                return Err(CertifyError::BadOrder {
                    reason: format!("order lists {} of {} vertices", seq.len(), g.n()),
                });
            }
            Some(seq)
        }
    };
    let mut stage = 0usize;
    while res.alive_count() > 0 {
        let v = match explicit {
            Some(seq) => {
                let v = seq[stage];
                if v >= g.n() || !res.is_alive(v) {
                    return Err(CertifyError::BadOrder {
                        reason: format!("vertex {v} repeated or out of range at stage {stage}"),
                    });
                }
                v
            }
            None => {
                let mut chosen = None;
                let mut best: Option<FailedStep> = None;
                for v in res.alive_vertices().collect::<Vec<_>>() {
                    let lhs = candidate_lhs(&res, v, rule, q)?;
                    if lhs < BigRational::one() {
                        chosen = Some(v);
                        break;
                    }
                    if best.as_ref().map_or(true, |b| lhs < b.lhs) {
                        best = Some(FailedStep { v, lhs });
                    }
                }
                match chosen {
                    Some(v) => v,
                    None => return Err(CertifyError::NoPassingStep { stage, best }),
                }
            }
        };
        let budgets = rule.budgets(&res)?;
        let budgets_after = rule.budgets_after(&res, v)?;
        let report = check_reduction_step(&res, v, &budgets, &budgets_after, q)?;
        if !report.pass {
            return Err(CertifyError::StepFailed(FailedStep { v, lhs: report.lhs }));
        }
        steps.push(ReductionStep {
            v,
            neighbors: res.alive_neighbors(v),
            g: budgets.0,
            g_next: budgets_after.0,
            lhs: report.lhs,
        });
        res.remove(v);
        stage += 1;
    }
    Ok(ReductionCertificate { q, bound: q - 1, steps })
}

/// Certificate for the general strong-degeneracy bound together with the
/// computed `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBound {
    pub d: usize,
    pub certificate: ReductionCertificate,
}

/// Computes `d = strong_degeneracy(g)`, then certifies the bound `(2d)^d`
/// at `q = (2d)^d + 1` along the witnessing elimination order.
///
/// The schedule is guaranteed to pass on strongly `d`-degenerate inputs; a
/// failure here is a bug and is surfaced as [`CertifyError::Internal`].
pub fn certify_theorem_bound(g: &Graph) -> Result<TheoremBound, CertifyError> {
    let (d, order) = crate::elimination::strong_degeneracy(g);
    let bound = theorem_bound_value(d)?;
    let q = bound.checked_add(1).ok_or(CertifyError::QTooLarge { d })?;
    let rule = BudgetRule::Theorem { d };
    match certify(g, &rule, q, &CertifyOrder::Explicit(order.vertices())) {
        Ok(cert) => Ok(TheoremBound { d, certificate: cert }),
        Err(CertifyError::StepFailed(fs)) => Err(CertifyError::Internal(format!(
            "theorem({d}) step at vertex {} failed with lhs {} on a strongly {d}-degenerate input",
            fs.v, fs.lhs
        ))),
        Err(e) => Err(e),
    }
}

/// Certifies `HG(G) <= 40` for maximal outerplanar inputs with the
/// outerplanar schedule at `q = 41`.
///
/// At every stage only ears (degree-2 vertices) can pass, and one always
/// does: some ear has a neighbour of degree at most 4, which caps its step at
/// `4/41 + 2/5 + 1/2 < 1`.
pub fn certify_outerplanar(g: &Graph) -> Result<ReductionCertificate, CertifyError> {
    if let crate::graph::outerplanar::MopCheck::No { reason } = is_maximal_outerplanar(g) {
        return Err(CertifyError::NotMaximalOuterplanar(reason));
    }
    match certify(g, &BudgetRule::Outerplanar, 41, &CertifyOrder::Auto) {
        Ok(cert) => Ok(cert),
        Err(CertifyError::NoPassingStep { stage, best }) => Err(CertifyError::Internal(format!(
            "no passing ear at stage {stage} of a maximal outerplanar input (best {:?})",
            best.map(|b| (b.v, b.lhs.to_string()))
        ))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family::FamilySpec;

    fn gen(text: &str, seed: u64) -> Graph {
        FamilySpec::parse(text, seed).unwrap().generate().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn isolated_vertex_step() {
        // d = 1: an isolated vertex has budget (2d)^d = 2; at q = 3 the step
        // left-hand side is the empty-sum case 2/3.
        let g = Graph::edgeless(1);
        let res = Residual::new(&g);
        let budgets = BudgetRule::Theorem { d: 1 }.budgets(&res).unwrap();
        assert_eq!(budgets.get(0), Some(2));
        let report =
            check_reduction_step(&res, 0, &budgets, &GuessBudget(BTreeMap::new()), 3).unwrap();
        assert_eq!(report.lhs, rat(2, 3));
        assert!(report.pass);
    }

    #[test]
    fn final_k2_of_a_tree() {
        // theorem(1) on P_2 at q = 3: leaf and neighbour both have budget 1;
        // after removal the neighbour is isolated with budget 2.
        let g = gen("path:2", 0);
        let res = Residual::new(&g);
        let rule = BudgetRule::Theorem { d: 1 };
        let budgets = rule.budgets(&res).unwrap();
        assert_eq!((budgets.get(0), budgets.get(1)), (Some(1), Some(1)));
        let after = rule.budgets_after(&res, 0).unwrap();
        assert_eq!(after.get(1), Some(2));
        let report = check_reduction_step(&res, 0, &budgets, &after, 3).unwrap();
        assert_eq!(report.lhs, rat(1, 3) + rat(1, 3));
        assert!(report.pass);
    }

    #[test]
    fn outerplanar_worst_ear_value() {
        // An ear with neighbour degrees {3, >= 5} gives exactly
        // 4/41 + 2/5 + 1/2, the schedule's worst case.
        let worst = rat(4, 41) + rat(2, 5) + rat(1, 2);
        assert!(worst < BigRational::one());
        // Fan on 6 vertices: ear 0 has neighbours of degree 3 and 5.
        let g = crate::graph::outerplanar::fan(6);
        let res = Residual::new(&g);
        let lhs = candidate_lhs(&res, 0, &BudgetRule::Outerplanar, 41).unwrap();
        assert_eq!(lhs, worst);
    }

    #[test]
    fn mismatch_outside_neighborhood_rejected() {
        let g = gen("path:3", 0);
        let res = Residual::new(&g);
        let rule = BudgetRule::Theorem { d: 1 };
        let budgets = rule.budgets(&res).unwrap();
        let mut after = rule.budgets_after(&res, 0).unwrap();
        after.0.insert(2, 99); // vertex 2 is not a neighbour of 0
        assert_eq!(
            check_reduction_step(&res, 0, &budgets, &after, 3),
            Err(CertifyError::BudgetMismatch { x: 2 })
        );
    }

    #[test]
    fn tree_certificate_bounds_two() {
        for seed in 0..5 {
            let g = gen("random-tree:9", seed);
            let tb = certify_theorem_bound(&g).unwrap();
            assert_eq!(tb.d, 1);
            assert_eq!(tb.certificate.bound, 2);
            assert_eq!(tb.certificate.q, 3);
            validate_certificate(&g, &tb.certificate).unwrap();
        }
    }

    #[test]
    fn theorem_bounds_match_formula() {
        let tb = certify_theorem_bound(&gen("cycle:5", 0)).unwrap();
        assert_eq!((tb.d, tb.certificate.bound), (2, 16));
        let tb = certify_theorem_bound(&gen("complete-bipartite:2,3", 0)).unwrap();
        assert_eq!((tb.d, tb.certificate.bound), (3, 216));
    }

    #[test]
    fn k23_fails_at_theorem_2() {
        let g = gen("complete-bipartite:2,3", 0);
        let err = certify(&g, &BudgetRule::Theorem { d: 2 }, 17, &CertifyOrder::Auto).unwrap_err();
        let CertifyError::NoPassingStep { stage: 0, best: Some(best) } = err else {
            panic!("expected exhausted search at stage 0, got {err:?}");
        };
        assert!(best.lhs >= BigRational::one());
    }

    #[test]
    fn outerplanar_base_and_fans() {
        let k3 = gen("complete:3", 0);
        let cert = certify_outerplanar(&k3).unwrap();
        assert_eq!(cert.bound, 40);
        validate_certificate(&k3, &cert).unwrap();

        let fan6 = crate::graph::outerplanar::fan(6);
        let cert = certify_outerplanar(&fan6).unwrap();
        assert_eq!(cert.bound, 40);
        let worst = rat(4, 41) + rat(2, 5) + rat(1, 2);
        assert_eq!(cert.worst_lhs().unwrap(), worst);
        validate_certificate(&fan6, &cert).unwrap();
    }

    #[test]
    fn outerplanar_rejects_non_mop() {
        let g = gen("cycle:5", 0);
        assert!(matches!(
            certify_outerplanar(&g),
            Err(CertifyError::NotMaximalOuterplanar(_))
        ));
    }

    #[test]
    fn seeded_mop_certificates() {
        let g = gen("maximal-outerplanar:50", 7);
        let cert = certify_outerplanar(&g).unwrap();
        assert_eq!(cert.bound, 40);
        validate_certificate(&g, &cert).unwrap();
    }

    #[test]
    fn raising_g_next_weakens_neighbour_terms() {
        // Budget monotonicity at the step level: a larger surviving budget
        // strictly lowers that neighbour's term.
        let g = gen("path:2", 0);
        let res = Residual::new(&g);
        let base = GuessBudget(BTreeMap::from([(0, 1), (1, 1)]));
        let low = GuessBudget(BTreeMap::from([(1, 2)]));
        let high = GuessBudget(BTreeMap::from([(1, 5)]));
        let r_low = check_reduction_step(&res, 0, &base, &low, 3).unwrap();
        let r_high = check_reduction_step(&res, 0, &base, &high, 3).unwrap();
        assert!(r_high.lhs < r_low.lhs);
    }

    #[test]
    fn lhs_exactly_one_fails() {
        // Constant budgets on K_2: g = 1, g' = 1 gives 1/q + 1/2; at q = 2
        // the left-hand side is exactly 1 and the step must fail.
        let g = gen("path:2", 0);
        let res = Residual::new(&g);
        let rule = BudgetRule::Constant { k: 1 };
        let budgets = rule.budgets(&res).unwrap();
        let after = rule.budgets_after(&res, 0).unwrap();
        let report = check_reduction_step(&res, 0, &budgets, &after, 2).unwrap();
        assert_eq!(report.lhs, BigRational::one());
        assert!(!report.pass);
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = gen("maximal-outerplanar:12", 3);
        let cert = certify_outerplanar(&g).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: ReductionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(cert, back);
        validate_certificate(&g, &back).unwrap();
    }
}

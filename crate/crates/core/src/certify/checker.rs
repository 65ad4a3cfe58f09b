//! Independent certificate validation.
//!
//! Re-validates a [`ReductionCertificate`](super::ReductionCertificate)
//! against a host graph using nothing but the certificate's own data: the
//! budget maps must chain consistently, agree outside each removed
//! neighbourhood, and every stored left-hand side must re-derive exactly and
//! be strictly below one. The budget rule that generated the certificate is
//! never consulted; the certificate is the trust root.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::graph::Graph;

use super::{Budget, ReductionCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckError {
    BoundMismatch { q: Budget, bound: Budget },
    VertexNotAlive { step: usize, v: usize },
    WrongNeighbors { step: usize },
    BudgetDomain { step: usize, detail: String },
    BudgetZero { step: usize, v: usize },
    ChainBroken { step: usize, v: usize },
    BudgetMismatch { step: usize, x: usize },
    LhsMismatch { step: usize },
    StepNotPassing { step: usize },
    GraphNotEmptied { left: usize },
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::BoundMismatch { q, bound } => {
                write!(f, "bound {bound} is not q - 1 for q = {q}")
            }
            CheckError::VertexNotAlive { step, v } => {
                write!(f, "step {step}: vertex {v} out of range or already removed")
            }
            CheckError::WrongNeighbors { step } => {
                write!(f, "step {step}: stored neighbours differ from the state graph")
            }
            CheckError::BudgetDomain { step, detail } => {
                write!(f, "step {step}: budget domain mismatch ({detail})")
            }
            CheckError::BudgetZero { step, v } => {
                write!(f, "step {step}: budget for vertex {v} is zero")
            }
            CheckError::ChainBroken { step, v } => {
                write!(f, "step {step}: g disagrees with the previous step's g' at vertex {v}")
            }
            CheckError::BudgetMismatch { step, x } => {
                write!(f, "step {step}: g' changes vertex {x} outside the removed neighbourhood")
            }
            CheckError::LhsMismatch { step } => {
                write!(f, "step {step}: stored lhs does not re-derive from the budgets")
            }
            CheckError::StepNotPassing { step } => write!(f, "step {step}: lhs >= 1"),
            CheckError::GraphNotEmptied { left } => {
                write!(f, "chain ends with {left} vertices still present")
            }
        }
    }
}

impl std::error::Error for CheckError {}

/// Fully re-validates `cert` against `g`. On success the certificate proves
/// that the multi-guess game on `g` with the first step's budgets is lost at
/// `cert.q` colours.
pub fn validate_certificate(g: &Graph, cert: &ReductionCertificate) -> Result<(), CheckError> {
    if cert.q == 0 || cert.bound != cert.q - 1 {
        return Err(CheckError::BoundMismatch { q: cert.q, bound: cert.bound });
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut prev_next: Option<&BTreeMap<usize, Budget>> = None;

    for (i, step) in cert.steps.iter().enumerate() {
        let v = step.v;
        if v >= n || !alive[v] {
            return Err(CheckError::VertexNotAlive { step: i, v });
        }
        let neighbors: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        if neighbors != step.neighbors {
            return Err(CheckError::WrongNeighbors { step: i });
        }

        // Budget domains: g covers exactly the alive vertices, g' exactly the
        // survivors.
        if step.g.len() != alive_count {
            return Err(CheckError::BudgetDomain {
                step: i,
                detail: format!("g has {} entries, state has {alive_count}", step.g.len()),
            });
        }
        if step.g_next.len() != alive_count - 1 {
            return Err(CheckError::BudgetDomain {
                step: i,
                detail: format!(
                    "g' has {} entries, surviving state has {}",
                    step.g_next.len(),
                    alive_count - 1
                ),
            });
        }
        for (&u, &val) in &step.g {
            if u >= n || !alive[u] {
                return Err(CheckError::BudgetDomain {
                    step: i,
                    detail: format!("g names removed vertex {u}"),
                });
            }
            if val == 0 {
                return Err(CheckError::BudgetZero { step: i, v: u });
            }
        }
        for (&u, &val) in &step.g_next {
            if u >= n || !alive[u] || u == v {
                return Err(CheckError::BudgetDomain {
                    step: i,
                    detail: format!("g' names vertex {u} outside the surviving state"),
                });
            }
            if val == 0 {
                return Err(CheckError::BudgetZero { step: i, v: u });
            }
        }

        // Chain: this step's g must be the previous step's g'.
        if let Some(prev) = prev_next {
            if prev != &step.g {
                let culprit = step
                    .g
                    .iter()
                    .find(|(u, val)| prev.get(u) != Some(val))
                    .map(|(&u, _)| u)
                    .unwrap_or(v);
                return Err(CheckError::ChainBroken { step: i, v: culprit });
            }
        }

        // g' agrees with g outside N(v).
        for (&u, &val) in &step.g_next {
            if neighbors.binary_search(&u).is_err() && step.g.get(&u) != Some(&val) {
                return Err(CheckError::BudgetMismatch { step: i, x: u });
            }
        }

        // Recompute the left-hand side from scratch.
        let mut lhs = BigRational::new(BigInt::from(step.g[&v]), BigInt::from(cert.q));
        for &w in &neighbors {
            lhs += BigRational::new(
                BigInt::from(step.g[&w]),
                BigInt::from(step.g_next[&w]) + BigInt::one(),
            );
        }
        if lhs != step.lhs {
            return Err(CheckError::LhsMismatch { step: i });
        }
        if lhs >= BigRational::one() {
            return Err(CheckError::StepNotPassing { step: i });
        }

        alive[v] = false;
        alive_count -= 1;
        prev_next = Some(&step.g_next);
    }

    if alive_count != 0 {
        return Err(CheckError::GraphNotEmptied { left: alive_count });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify_outerplanar, certify_theorem_bound};
    use crate::graph::family::FamilySpec;

    fn gen(text: &str, seed: u64) -> Graph {
        FamilySpec::parse(text, seed).unwrap().generate().unwrap()
    }

    #[test]
    fn accepts_genuine_certificates() {
        let g = gen("maximal-outerplanar:20", 2);
        let cert = certify_outerplanar(&g).unwrap();
        validate_certificate(&g, &cert).unwrap();
        let g = gen("cycle:7", 0);
        let tb = certify_theorem_bound(&g).unwrap();
        validate_certificate(&g, &tb.certificate).unwrap();
    }

    #[test]
    fn rejects_tampered_lhs() {
        let g = gen("cycle:6", 0);
        let mut cert = certify_theorem_bound(&g).unwrap().certificate;
        cert.steps[0].lhs = BigRational::new(1.into(), 100.into());
        assert_eq!(validate_certificate(&g, &cert), Err(CheckError::LhsMismatch { step: 0 }));
    }

    #[test]
    fn rejects_tampered_budgets() {
        let g = gen("cycle:6", 0);
        let mut cert = certify_theorem_bound(&g).unwrap().certificate;
        // Inflating a later step's g breaks the chain with the prior g'.
        let v = cert.steps[1].v;
        cert.steps[1].g.insert(v, 10_000);
        assert!(matches!(
            validate_certificate(&g, &cert),
            Err(CheckError::ChainBroken { step: 1, .. }) | Err(CheckError::LhsMismatch { step: 1 })
        ));
    }

    #[test]
    fn rejects_truncated_chain() {
        let g = gen("cycle:6", 0);
        let mut cert = certify_theorem_bound(&g).unwrap().certificate;
        cert.steps.pop();
        assert_eq!(validate_certificate(&g, &cert), Err(CheckError::GraphNotEmptied { left: 1 }));
    }

    #[test]
    fn rejects_wrong_bound() {
        let g = gen("cycle:6", 0);
        let mut cert = certify_theorem_bound(&g).unwrap().certificate;
        cert.bound += 1;
        assert!(matches!(validate_certificate(&g, &cert), Err(CheckError::BoundMismatch { .. })));
    }

    #[test]
    fn rejects_foreign_graph() {
        let g = gen("maximal-outerplanar:10", 4);
        let cert = certify_outerplanar(&g).unwrap();
        let other = gen("maximal-outerplanar:10", 5);
        if other != g {
            assert!(validate_certificate(&other, &cert).is_err());
        }
    }
}

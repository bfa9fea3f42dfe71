//! Crossed modules and the normality decision procedure.
//!
//! A crossed module is a homomorphism `d: N -> G` together with an action
//! of `G` on `N` by automorphisms subject to equivariance (CM1) and the
//! Peiffer identity (CM2). A finite group map is homotopy normal at the
//! level of path components exactly when such a structure exists over it;
//! `decide_normal` searches the finitely many candidate actions
//! exhaustively, so absence is a proof of non-normality.

mod gamma;
mod moore;

pub use gamma::{
    constant_simplicial_group, equivariant_iso_check, gamma_from_cm, gamma_unchecked,
    verify_simplicial_group, EquivariantReport, LevelGroup, SgViolation, SimplicialGroupReport,
    TruncatedSimplicialGroup,
};
pub use moore::{moore_homotopy, moore_homotopy_table};

use crate::groups::{
    automorphism_group, for_each_hom, image_normal, kernel, quotient_by_image, FiniteGroup,
    GroupActionOnGroup, GroupError, GroupHom,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrossedError {
    #[error("boundary and action do not share the same groups")]
    MismatchedGroups,
    #[error("not a crossed module: {report}")]
    InvalidCrossedModule { report: CmReport },
    #[error("action search budget exceeded: needs ~{needed:.1} bits, budget {budget:.1}")]
    SearchBudgetExceeded { needed: f64, budget: f64 },
    #[error("boundary is not injective")]
    NotInjective,
    #[error("degree {degree} out of range (truncation {truncation} leaves degrees 0..={top})")]
    DegreeOutOfRange {
        degree: usize,
        truncation: usize,
        top: usize,
    },
    #[error("moore boundary image is not normal at degree {degree}")]
    ImageNotNormal { degree: usize },
    #[error("kernel of the boundary is not central in N: witness ({n}, {m})")]
    KernelNotCentral { n: usize, m: usize },
    #[error("two-type cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// CM1 failure: `d(g . n) != g d(n) g^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cm1Violation {
    pub g: usize,
    pub n: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for Cm1Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CM1 at (g={}, n={}): d(g.n)={} but g d(n) g^-1={}",
            self.g, self.n, self.lhs, self.rhs
        )
    }
}

/// CM2 failure: `(d n) . m != n m n^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cm2Violation {
    pub n: usize,
    pub m: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for Cm2Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CM2 at (n={}, m={}): (dn).m={} but n m n^-1={}",
            self.n, self.m, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CmReport {
    pub cm1: Vec<Cm1Violation>,
    pub cm2: Vec<Cm2Violation>,
}

impl CmReport {
    pub fn is_ok(&self) -> bool {
        self.cm1.is_empty() && self.cm2.is_empty()
    }
}

impl fmt::Display for CmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        write!(f, "{} CM1 / {} CM2 violation(s)", self.cm1.len(), self.cm2.len())?;
        if let Some(v) = self.cm1.first() {
            write!(f, "; first: {v}")?;
        } else if let Some(v) = self.cm2.first() {
            write!(f, "; first: {v}")?;
        }
        Ok(())
    }
}

/// A crossed module: boundary `d: N -> G` plus an action of `G` on `N`,
/// satisfying CM1 and CM2. `new` validates; `unchecked` exists for
/// fault-injection diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    boundary: GroupHom,
    action: GroupActionOnGroup,
}

impl CrossedModule {
    pub fn new(boundary: GroupHom, action: GroupActionOnGroup) -> Result<Self, CrossedError> {
        let report = check_crossed_module(&boundary, &action)?;
        if !report.is_ok() {
            return Err(CrossedError::InvalidCrossedModule { report });
        }
        Ok(CrossedModule { boundary, action })
    }

    /// Skips the CM1/CM2 check; downstream verifiers are expected to
    /// report the damage.
    pub fn unchecked(boundary: GroupHom, action: GroupActionOnGroup) -> Self {
        CrossedModule { boundary, action }
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &GroupActionOnGroup {
        &self.action
    }

    /// N, the source of the boundary.
    pub fn n(&self) -> &FiniteGroup {
        self.boundary.source()
    }

    /// G, the target of the boundary.
    pub fn g(&self) -> &FiniteGroup {
        self.boundary.target()
    }
}

/// Checks CM1 and CM2 pointwise; an empty report certifies a crossed
/// module. Errors only on mismatched groups.
pub fn check_crossed_module(
    boundary: &GroupHom,
    action: &GroupActionOnGroup,
) -> Result<CmReport, CrossedError> {
    if boundary.source() != action.carrier() || boundary.target() != action.actor() {
        return Err(CrossedError::MismatchedGroups);
    }
    let n = boundary.source();
    let g = boundary.target();
    let mut report = CmReport::default();
    for gamma in g.elements() {
        for x in n.elements() {
            let lhs = boundary.apply(action.act(gamma, x));
            let rhs = g.conjugate(gamma, boundary.apply(x));
            if lhs != rhs {
                report.cm1.push(Cm1Violation {
                    g: gamma,
                    n: x,
                    lhs,
                    rhs,
                });
            }
        }
    }
    for x in n.elements() {
        let dx = boundary.apply(x);
        for y in n.elements() {
            let lhs = action.act(dx, y);
            let rhs = n.conjugate(x, y);
            if lhs != rhs {
                report.cm2.push(Cm2Violation {
                    n: x,
                    m: y,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(report)
}

/// Cap on the action search, measured in bits of the candidate space:
/// `|gens(G)| * |gens(N)| * log2|N|` bounds `|gens(G)| * log2|Aut N|`
/// without computing the automorphism group first. The default admits
/// every group of order up to 24.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub max_bits: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_bits: 64.0 }
    }
}

/// Outcome of the normality decision, with search statistics.
#[derive(Debug, Clone)]
pub struct NormalDecision {
    pub certificate: Option<CrossedModule>,
    pub actions_tried: usize,
    pub aut_order: usize,
    pub generator_count: usize,
}

impl NormalDecision {
    pub fn is_normal(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Searches for a crossed-module structure over `f: N -> G`. The candidate
/// actions are exactly the homomorphisms `G -> Aut(N)`, enumerated in
/// lexicographic generator-image order; the first valid one is returned,
/// and absence after the exhaustive sweep proves there is none.
pub fn decide_normal(f: &GroupHom, budget: &SearchBudget) -> Result<NormalDecision, CrossedError> {
    let n = f.source();
    let g = f.target();
    let g_gens = g.minimal_generators().len().max(1);
    let n_gens = n.minimal_generators().len().max(1);
    let needed = (g_gens * n_gens) as f64 * (n.order() as f64).log2().max(1.0);
    if needed > budget.max_bits {
        return Err(CrossedError::SearchBudgetExceeded {
            needed,
            budget: budget.max_bits,
        });
    }

    let (aut, perms) = automorphism_group(n);
    let mut certificate = None;
    let mut actions_tried = 0usize;
    for_each_hom(g, &aut, |hom| {
        actions_tried += 1;
        let act: Vec<Vec<usize>> = g.elements().map(|x| perms[hom.apply(x)].clone()).collect();
        let action = GroupActionOnGroup::new(g.clone(), n.clone(), act)
            .expect("homomorphism to Aut(N) induces an action");
        let report = check_crossed_module(f, &action).expect("groups match by construction");
        if report.is_ok() {
            certificate = Some(CrossedModule {
                boundary: f.clone(),
                action,
            });
            false
        } else {
            true
        }
    });
    Ok(NormalDecision {
        certificate,
        actions_tried,
        aut_order: aut.order(),
        generator_count: g_gens,
    })
}

/// The conjugation crossed module of an injective map with normal image:
/// `g . n = f^-1(g f(n) g^-1)`.
pub fn conjugation_cm(f: &GroupHom) -> Result<CrossedModule, CrossedError> {
    if !f.is_injective() {
        return Err(CrossedError::NotInjective);
    }
    if !image_normal(f) {
        return Err(GroupError::ImageNotNormal.into());
    }
    let n = f.source();
    let g = f.target();
    let mut preimage = vec![usize::MAX; g.order()];
    for x in n.elements() {
        preimage[f.apply(x)] = x;
    }
    let act: Vec<Vec<usize>> = g
        .elements()
        .map(|gamma| {
            n.elements()
                .map(|x| preimage[g.conjugate(gamma, f.apply(x))])
                .collect()
        })
        .collect();
    let action = GroupActionOnGroup::new(g.clone(), n.clone(), act)?;
    CrossedModule::new(f.clone(), action)
}

/// The two nontrivial homotopy groups of the 2-type of a crossed module.
#[derive(Debug, Clone)]
pub struct TwoTypeInvariants {
    /// coker d
    pub pi1: FiniteGroup,
    /// ker d, necessarily abelian
    pub pi2: FiniteGroup,
}

/// Computes `pi1 = coker d` and `pi2 = ker d`, asserts `pi2` is central in
/// `N` (hence abelian), and cross-checks against the Moore homotopy groups
/// of the realized simplicial group at truncation 4.
pub fn two_type_invariants(cm: &CrossedModule) -> Result<TwoTypeInvariants, CrossedError> {
    let report = check_crossed_module(cm.boundary(), cm.action())?;
    if !report.is_ok() {
        return Err(CrossedError::InvalidCrossedModule { report });
    }
    let (pi1, _) = quotient_by_image(cm.boundary())?;
    let (pi2, incl) = kernel(cm.boundary());

    // CM2 with dn = e forces ker d to commute with all of N
    let n = cm.n();
    for a in pi2.elements() {
        let na = incl.apply(a);
        for m in n.elements() {
            if n.mul(na, m) != n.mul(m, na) {
                return Err(CrossedError::KernelNotCentral { n: na, m });
            }
        }
    }
    debug_assert!(pi2.is_abelian());

    let gamma = gamma_unchecked(cm, 4);
    let moore0 = moore_homotopy(&gamma, 0)?;
    let moore1 = moore_homotopy(&gamma, 1)?;
    let moore2 = moore_homotopy(&gamma, 2)?;
    if crate::groups::is_isomorphic(&moore0, &pi1).is_none() {
        return Err(CrossedError::CrossCheckFailed(format!(
            "pi_0 of the simplicial group has order {}, coker d has order {}",
            moore0.order(),
            pi1.order()
        )));
    }
    if crate::groups::is_isomorphic(&moore1, &pi2).is_none() {
        return Err(CrossedError::CrossCheckFailed(format!(
            "pi_1 of the simplicial group has order {}, ker d has order {}",
            moore1.order(),
            pi2.order()
        )));
    }
    if moore2.order() != 1 {
        return Err(CrossedError::CrossCheckFailed(format!(
            "pi_2 of the simplicial group has order {}, expected 1",
            moore2.order()
        )));
    }

    Ok(TwoTypeInvariants {
        pi1: pi1.rename("pi1"),
        pi2: pi2.rename("pi2"),
    })
}

//! Discrete homotopy actions, rigidification and the canonical-action
//! agreement check.
//!
//! A discrete homotopy action is a simplicial map `pi: A -> B` where `B`
//! is a reduced Segal complex and, at every level, both composite-face-
//! times-projection maps `A_n -> A_0 x B_n` are bijections (discrete
//! levels carry no homotopy, so "equivalence" means bijection throughout).
//! Such data rigidifies into an honest right action of the group recovered
//! from `B`, and the two constructions are mutually inverse up to
//! equivariant isomorphism.

use crate::bar::{
    bar, level_g_action, nerve, recover_group_from_nerve, segal_check, BarError, SegalReport,
};
use crate::crossed::{
    check_crossed_module, gamma_unchecked, CrossedError, CrossedModule, TruncatedSimplicialGroup,
};
use crate::groups::{enumerate_homs, FiniteGroup, RightGSet};
use crate::simplicial::{compose_face_path, SimplicialError, SimplicialMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("homotopy actions need truncation >= 3, got {got}")]
    TruncationTooSmall { got: usize },
    #[error("not a homotopy action: {0}")]
    NotHomotopyAction(String),
    #[error("rigidified action violates a g-set axiom: {0}")]
    AxiomFailure(String),
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

/// A simplicial map satisfying the homotopy-action conditions in the
/// discrete model; `from_bar` and `check_homotopy_action` produce and
/// certify these.
#[derive(Debug, Clone)]
pub struct DiscreteHomotopyAction {
    pi: SimplicialMap,
}

impl DiscreteHomotopyAction {
    /// Wraps a simplicial map after checking the three conditions.
    pub fn new(pi: SimplicialMap) -> Result<Self, ActionError> {
        let report = check_homotopy_action(&pi)?;
        if !report.is_ok() {
            return Err(ActionError::NotHomotopyAction(report.to_string()));
        }
        Ok(DiscreteHomotopyAction { pi })
    }

    pub fn pi(&self) -> &SimplicialMap {
        &self.pi
    }

    /// The acted-on set: level 0 of the source.
    pub fn carrier_size(&self) -> usize {
        self.pi.source().level_size(0)
    }
}

/// Report on the three homotopy-action conditions.
#[derive(Debug, Clone)]
pub struct HomotopyActionReport {
    /// condition (2): the target is a reduced Segal complex
    pub segal: SegalReport,
    /// condition (3) per level `1..=k`: both `(d_1..d_n) x pi_n` and
    /// `(d_0..d_0) x pi_n` are bijections onto `A_0 x B_n`
    pub levels: Vec<(usize, bool, Option<String>)>,
}

impl HomotopyActionReport {
    pub fn is_ok(&self) -> bool {
        self.segal.passed() && self.levels.iter().all(|(_, ok, _)| *ok)
    }
}

impl fmt::Display for HomotopyActionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target Segal conditions:")?;
        writeln!(f, "{}", self.segal)?;
        for (n, ok, witness) in &self.levels {
            match witness {
                Some(w) if !ok => writeln!(f, "level {n} equivalences: FAIL ({w})")?,
                _ => writeln!(f, "level {n} equivalences: {}", if *ok { "ok" } else { "FAIL" })?,
            }
        }
        Ok(())
    }
}

/// Checks the homotopy-action conditions on an arbitrary simplicial map.
pub fn check_homotopy_action(pi: &SimplicialMap) -> Result<HomotopyActionReport, ActionError> {
    let k = pi.source().truncation();
    if k < 3 {
        return Err(ActionError::TruncationTooSmall { got: k });
    }
    let segal = segal_check(pi.target());
    let a = pi.source();
    let a0 = a.level_size(0);

    let mut levels = Vec::new();
    for n in 1..=k {
        let b_n = pi.target().level_size(n);
        let expected = a0 * b_n;
        if a.level_size(n) != expected {
            levels.push((
                n,
                false,
                Some(format!(
                    "A_{n} has {} simplices, A_0 x B_{n} needs {expected}",
                    a.level_size(n)
                )),
            ));
            continue;
        }
        // d_1 d_2 .. d_n, applied innermost first
        let last_faces: Vec<usize> = (1..=n).rev().collect();
        let to_base = compose_face_path(a, n, &last_faces)?;
        let zero_faces = vec![0usize; n];
        let d0_power = compose_face_path(a, n, &zero_faces)?;

        let mut witness = None;
        for (label, composite) in [("d_1..d_n", &to_base), ("d_0..d_0", &d0_power)] {
            let mut seen = vec![false; expected];
            for x in 0..a.level_size(n) {
                let code = composite[x] + a0 * pi.level_map(n)[x];
                if seen[code] {
                    witness = Some(format!("{label} x pi_{n} is not injective at simplex {x}"));
                    break;
                }
                seen[code] = true;
            }
            if witness.is_some() {
                break;
            }
        }
        levels.push((n, witness.is_none(), witness));
    }
    Ok(HomotopyActionReport { segal, levels })
}

/// The projection `Bar(X, G) -> B_.G` as a homotopy action.
pub fn from_bar(gset: &RightGSet, k: usize) -> Result<DiscreteHomotopyAction, ActionError> {
    if k < 3 {
        return Err(ActionError::TruncationTooSmall { got: k });
    }
    let a = bar(gset, k);
    let b = nerve(gset.group(), k);
    let nx = gset.carrier_size();
    let level_maps: Vec<Vec<usize>> = (0..=k)
        .map(|m| (0..a.level_size(m)).map(|idx| idx / nx).collect())
        .collect();
    let pi = SimplicialMap::new(
        a.underlying().clone(),
        b.underlying().clone(),
        level_maps,
    )?;
    DiscreteHomotopyAction::new(pi)
}

/// A group together with an honest right action: the output of
/// rigidification.
#[derive(Debug, Clone)]
pub struct RigidAction {
    pub group: FiniteGroup,
    pub action: RightGSet,
}

/// Extracts the strict action underlying a homotopy action: the group is
/// recovered from the Segal structure of `B`, and `x . b` is read off by
/// inverting the exact bijection `d_1 x pi_1` and applying `d_0`. The
/// g-set axioms of the result are verified, not assumed.
pub fn rigidify(action: &DiscreteHomotopyAction) -> Result<RigidAction, ActionError> {
    let pi = action.pi();
    let group = recover_group_from_nerve(pi.target())?;
    let a = pi.source();
    let a0 = a.level_size(0);
    let b1 = pi.target().level_size(1);

    let d1 = a.face(1, 1);
    let d0 = a.face(1, 0);
    let mut inverse = vec![usize::MAX; a0 * b1];
    for x in 0..a.level_size(1) {
        let code = d1[x] + a0 * pi.level_map(1)[x];
        if inverse[code] != usize::MAX {
            return Err(ActionError::NotHomotopyAction(format!(
                "d_1 x pi_1 is not injective at simplex {x}"
            )));
        }
        inverse[code] = x;
    }
    if inverse.iter().any(|&v| v == usize::MAX) {
        return Err(ActionError::NotHomotopyAction(
            "d_1 x pi_1 is not surjective".to_string(),
        ));
    }

    let table: Vec<Vec<usize>> = (0..a0)
        .map(|x| (0..b1).map(|b| d0[inverse[x + a0 * b]]).collect())
        .collect();
    let gset = RightGSet::new(group.clone(), a0, table)
        .map_err(|e| ActionError::AxiomFailure(e.to_string()))?;
    Ok(RigidAction {
        group,
        action: gset,
    })
}

/// Equivariant isomorphism of right actions: a group isomorphism plus a
/// carrier bijection intertwining them, found by backtracking.
pub fn equivariant_isomorphic(a: &RightGSet, b: &RightGSet) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.carrier_size() != b.carrier_size() {
        return None;
    }
    let isos: Vec<Vec<usize>> = enumerate_homs(a.group(), b.group())
        .into_iter()
        .filter(|h| h.is_injective() && h.source().order() == h.target().order())
        .map(|h| h.map().to_vec())
        .collect();
    for psi in isos {
        if let Some(beta) = match_carrier(a, b, &psi) {
            return Some((psi, beta));
        }
    }
    None
}

fn match_carrier(a: &RightGSet, b: &RightGSet, psi: &[usize]) -> Option<Vec<usize>> {
    let n = a.carrier_size();
    let mut beta = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        a: &RightGSet,
        b: &RightGSet,
        psi: &[usize],
        beta: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(x) = (0..a.carrier_size()).find(|&x| beta[x] == usize::MAX) else {
            return true;
        };
        'targets: for y in 0..b.carrier_size() {
            if used[y] {
                continue;
            }
            // propagate along the orbit of x and record what we set
            let mut trail: Vec<usize> = Vec::new();
            let mut ok = true;
            let mut stack = vec![(x, y)];
            while let Some((u, v)) = stack.pop() {
                if beta[u] != usize::MAX {
                    if beta[u] != v {
                        ok = false;
                        break;
                    }
                    continue;
                }
                if used[v] {
                    ok = false;
                    break;
                }
                beta[u] = v;
                used[v] = true;
                trail.push(u);
                for g in a.group().elements() {
                    stack.push((a.act(u, g), b.act(v, psi[g])));
                }
            }
            if ok && assign(a, b, psi, beta, used) {
                return true;
            }
            for &u in &trail {
                used[beta[u]] = false;
                beta[u] = usize::MAX;
            }
            if !ok {
                continue 'targets;
            }
        }
        false
    }
    if assign(a, b, psi, &mut beta, &mut used) {
        Some(beta)
    } else {
        None
    }
}

/// One commutative square between homotopy actions; `Backward` means the
/// horizontal maps point from the second action into the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareDirection {
    Forward,
    Backward,
}

/// A commutative square of simplicial maps between two homotopy actions,
/// with level-wise bijective horizontals.
#[derive(Debug, Clone)]
pub struct ActionSquare {
    pub direction: SquareDirection,
    pub a_map: SimplicialMap,
    pub b_map: SimplicialMap,
}

impl ActionSquare {
    /// Checks commutativity against the two vertical maps and that both
    /// horizontals are level-wise bijections.
    pub fn verify(&self, from: &SimplicialMap, to: &SimplicialMap) -> Result<(), String> {
        let (src, dst) = match self.direction {
            SquareDirection::Forward => (from, to),
            SquareDirection::Backward => (to, from),
        };
        if !self.a_map.is_levelwise_bijective() || !self.b_map.is_levelwise_bijective() {
            return Err("horizontal maps are not level-wise bijections".to_string());
        }
        for m in 0..=src.source().truncation() {
            for x in 0..src.source().level_size(m) {
                let via_target = dst.level_map(m)[self.a_map.level_map(m)[x]];
                let via_source = self.b_map.level_map(m)[src.level_map(m)[x]];
                if via_target != via_source {
                    return Err(format!("square does not commute at level {m}, simplex {x}"));
                }
            }
        }
        Ok(())
    }
}

/// A zig-zag of commutative squares connecting two homotopy actions.
/// Every check in this crate uses length 1, but longer chains verify the
/// same way square by square.
#[derive(Debug, Clone)]
pub struct ActionZigZag {
    pub squares: Vec<ActionSquare>,
}

impl ActionZigZag {
    pub fn single(square: ActionSquare) -> Self {
        ActionZigZag {
            squares: vec![square],
        }
    }

    pub fn length(&self) -> usize {
        self.squares.len()
    }

    /// Verifies the chain against the actions it connects; `chain` lists
    /// the vertical maps, one more than there are squares.
    pub fn verify(&self, chain: &[&SimplicialMap]) -> Result<(), String> {
        if chain.len() != self.squares.len() + 1 {
            return Err("chain length does not match square count".to_string());
        }
        for (i, square) in self.squares.iter().enumerate() {
            square.verify(chain[i], chain[i + 1])?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct RoundtripReport {
    pub problems: Vec<String>,
}

impl RoundtripReport {
    pub fn is_ok(&self) -> bool {
        self.problems.is_empty()
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.problems.join("; "))
        }
    }
}

/// The weakly-inverse correspondence, exercised on one action: rigidifying
/// `from_bar(X, G)` must give back `(G, X)` up to equivariant isomorphism,
/// and `from_bar` of the rigidified action must be connected to the
/// original by a length-1 zig-zag of level-wise bijections.
pub fn roundtrip_check(gset: &RightGSet, k: usize) -> Result<RoundtripReport, ActionError> {
    let mut problems = Vec::new();
    let action = from_bar(gset, k)?;
    let rigid = rigidify(&action)?;

    let iso = equivariant_isomorphic(gset, &rigid.action);
    if iso.is_none() {
        problems.push(format!(
            "rigidified action on {} points over {} is not equivariantly isomorphic to the input",
            rigid.action.carrier_size(),
            rigid.group.name()
        ));
    }

    let rebuilt = from_bar(&rigid.action, k)?;
    match iso {
        Some((psi, beta)) => {
            // horizontal maps relabel tuples coordinatewise
            let a_maps: Vec<Vec<usize>> = (0..=k)
                .map(|m| {
                    let nx = gset.carrier_size();
                    let ng = gset.group().order();
                    (0..action.pi().source().level_size(m))
                        .map(|idx| {
                            let x = idx % nx;
                            let mut rest = idx / nx;
                            let mut out = beta[x];
                            let mut radix = nx;
                            for _ in 0..m {
                                out += radix * psi[rest % ng];
                                radix *= ng;
                                rest /= ng;
                            }
                            out
                        })
                        .collect()
                })
                .collect();
            let b_maps: Vec<Vec<usize>> = (0..=k)
                .map(|m| {
                    let ng = gset.group().order();
                    (0..action.pi().target().level_size(m))
                        .map(|idx| {
                            let mut rest = idx;
                            let mut out = 0usize;
                            let mut radix = 1usize;
                            for _ in 0..m {
                                out += radix * psi[rest % ng];
                                radix *= ng;
                                rest /= ng;
                            }
                            out
                        })
                        .collect()
                })
                .collect();
            let a_map = SimplicialMap::new(
                action.pi().source().clone(),
                rebuilt.pi().source().clone(),
                a_maps,
            );
            let b_map = SimplicialMap::new(
                action.pi().target().clone(),
                rebuilt.pi().target().clone(),
                b_maps,
            );
            match (a_map, b_map) {
                (Ok(a_map), Ok(b_map)) => {
                    let square = ActionSquare {
                        direction: SquareDirection::Forward,
                        a_map,
                        b_map,
                    };
                    let zigzag = ActionZigZag::single(square);
                    if let Err(e) = zigzag.verify(&[action.pi(), rebuilt.pi()]) {
                        problems.push(e);
                    }
                }
                _ => problems.push("relabeling maps are not simplicial".to_string()),
            }
        }
        None => {
            problems.push("no equivariant isomorphism, skipping the zig-zag".to_string());
        }
    }

    Ok(RoundtripReport { problems })
}

/// One disagreement between the two canonical actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementMismatch {
    pub level: usize,
    pub g: usize,
    pub simplex: usize,
    pub via_product: usize,
    pub via_translation: usize,
}

impl fmt::Display for AgreementMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {}, g={}, simplex {}: group product gives {}, translation gives {}",
            self.level, self.g, self.simplex, self.via_product, self.via_translation
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AgreementReport {
    pub mismatches: Vec<AgreementMismatch>,
}

impl AgreementReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for AgreementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::report::write_findings(f, "canonical action", &self.mismatches)
    }
}

/// Level-wise agreement of the canonical actions: multiplying by the
/// degenerate image of `g` in each level group of the simplicial group
/// must equal the left-translation action on the bar side, under the
/// identity labeling.
pub fn canonical_action_agreement(
    cm: &CrossedModule,
    k: usize,
) -> Result<AgreementReport, CrossedError> {
    let report = check_crossed_module(cm.boundary(), cm.action())?;
    if !report.is_ok() {
        return Err(CrossedError::InvalidCrossedModule { report });
    }
    let gamma = gamma_unchecked(cm, k);
    let bar = crate::bar::bar_of_hom(cm.boundary(), k);
    Ok(canonical_action_agreement_on(&gamma, &bar))
}

/// The agreement check on already-built objects; used directly for
/// fault-injection diagnostics.
pub fn canonical_action_agreement_on(
    sg: &TruncatedSimplicialGroup,
    bar: &crate::bar::BarComplex,
) -> AgreementReport {
    let mut mismatches = Vec::new();
    let k = sg.truncation().min(bar.truncation());
    let Some(f) = bar.via_hom() else {
        return AgreementReport { mismatches };
    };
    let g = f.target();
    for m in 0..=k {
        let translation = match level_g_action(bar, m) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let mut embed: Vec<usize> = (0..sg.level_size(0)).collect();
        for j in 0..m {
            let s = sg.underlying().degeneracy(j, j);
            for v in embed.iter_mut() {
                *v = s[*v];
            }
        }
        let lg = sg.level_group(m);
        for gamma in g.elements() {
            let embedded = embed[gamma];
            for xi in 0..sg.level_size(m) {
                let via_product = lg.mul(embedded, xi);
                let via_translation = translation.table[gamma][xi];
                if via_product != via_translation {
                    mismatches.push(AgreementMismatch {
                        level: m,
                        g: gamma,
                        simplex: xi,
                        via_product,
                        via_translation,
                    });
                    if mismatches.len() >= 64 {
                        return AgreementReport { mismatches };
                    }
                }
            }
        }
    }
    AgreementReport { mismatches }
}

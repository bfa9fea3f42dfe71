//! The bar construction, nerves of groups, Segal checks and group recovery.
//!
//! `bar(X, G)` materializes levels `X x G^m` with the usual face formulas:
//! `d_0` feeds the first group coordinate into the action, middle faces
//! multiply adjacent coordinates, the last face drops the tail, and
//! degeneracies insert the identity. Level `m` is indexed little-endian:
//! `x + |X| * (g_1 + |G| * (g_2 + ...))`.

use crate::groups::{FiniteGroup, GroupHom, RightGSet};
use crate::simplicial::{compose_face_path, SimplicialError, TruncatedSimplicialSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("truncation must be at least {needed}, got {got}")]
    TruncationTooSmall { needed: usize, got: usize },
    #[error("Segal structure required through level {level} does not hold: {reason}")]
    SegalFailed { level: usize, reason: String },
    #[error("level action requires a bar complex built from a homomorphism (carrier = target group)")]
    NotHomogeneous,
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// A bar complex `Bar(X, G)`: the underlying truncated simplicial set plus
/// the group and right G-set that label its levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarComplex {
    underlying: TruncatedSimplicialSet,
    group: FiniteGroup,
    gset: RightGSet,
    via_hom: Option<GroupHom>,
}

impl BarComplex {
    pub fn underlying(&self) -> &TruncatedSimplicialSet {
        &self.underlying
    }

    /// The acting group G of `Bar(X, G)`.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gset(&self) -> &RightGSet {
        &self.gset
    }

    /// The homomorphism behind `bar_of_hom`, when that is how this complex
    /// was built.
    pub fn via_hom(&self) -> Option<&GroupHom> {
        self.via_hom.as_ref()
    }

    pub fn truncation(&self) -> usize {
        self.underlying.truncation()
    }

    pub fn level_size(&self, m: usize) -> usize {
        self.underlying.level_size(m)
    }

    /// Index of the labeled simplex `(x, g_1, ..., g_m)` at level `m`.
    pub fn index_of(&self, m: usize, x: usize, gs: &[usize]) -> usize {
        debug_assert_eq!(gs.len(), m);
        let nx = self.gset.carrier_size();
        let ng = self.group.order();
        let mut idx = 0usize;
        for &g in gs.iter().rev() {
            idx = idx * ng + g;
        }
        idx * nx + x
    }

    /// Labeled tuple `(x, [g_1, ..., g_m])` of a level-`m` index.
    pub fn tuple_of(&self, m: usize, idx: usize) -> (usize, Vec<usize>) {
        let nx = self.gset.carrier_size();
        let ng = self.group.order();
        let x = idx % nx;
        let mut rest = idx / nx;
        let mut gs = Vec::with_capacity(m);
        for _ in 0..m {
            gs.push(rest % ng);
            rest /= ng;
        }
        (x, gs)
    }

    /// Tuple labels per level, in the on-disk `[[x, g_1, ..], ..]` shape.
    pub fn tuple_labels(&self) -> Vec<Vec<Vec<usize>>> {
        (0..=self.truncation())
            .map(|m| {
                (0..self.level_size(m))
                    .map(|idx| {
                        let (x, gs) = self.tuple_of(m, idx);
                        let mut row = vec![x];
                        row.extend(gs);
                        row
                    })
                    .collect()
            })
            .collect()
    }
}

/// The bar construction on a right G-set, truncated at `k >= 1`.
pub fn bar(gset: &RightGSet, k: usize) -> BarComplex {
    assert!(k >= 1, "bar construction needs truncation >= 1");
    let g = gset.group().clone();
    let nx = gset.carrier_size();
    let ng = g.order();
    let level_sizes: Vec<usize> = (0..=k).map(|m| nx * ng.pow(m as u32)).collect();

    let decode = |m: usize, idx: usize| -> (usize, Vec<usize>) {
        let x = idx % nx;
        let mut rest = idx / nx;
        let mut gs = Vec::with_capacity(m);
        for _ in 0..m {
            gs.push(rest % ng);
            rest /= ng;
        }
        (x, gs)
    };
    let encode = |x: usize, gs: &[usize]| -> usize {
        let mut idx = 0usize;
        for &v in gs.iter().rev() {
            idx = idx * ng + v;
        }
        idx * nx + x
    };

    let mut faces = Vec::with_capacity(k);
    for m in 1..=k {
        let mut per_level = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let map: Vec<usize> = (0..level_sizes[m])
                .map(|idx| {
                    let (x, gs) = decode(m, idx);
                    if i == 0 {
                        encode(gset.act(x, gs[0]), &gs[1..])
                    } else if i < m {
                        let mut out = gs.clone();
                        out[i - 1] = g.mul(gs[i - 1], gs[i]);
                        out.remove(i);
                        encode(x, &out)
                    } else {
                        encode(x, &gs[..m - 1])
                    }
                })
                .collect();
            per_level.push(map);
        }
        faces.push(per_level);
    }

    let mut degeneracies = Vec::with_capacity(k);
    for m in 0..k {
        let mut per_level = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let map: Vec<usize> = (0..level_sizes[m])
                .map(|idx| {
                    let (x, gs) = decode(m, idx);
                    let mut out = gs.clone();
                    out.insert(i, g.identity());
                    encode(x, &out)
                })
                .collect();
            per_level.push(map);
        }
        degeneracies.push(per_level);
    }

    let underlying = TruncatedSimplicialSet::new(k, level_sizes, faces, degeneracies, None)
        .expect("bar construction is well-shaped");
    BarComplex {
        underlying,
        group: g,
        gset: gset.clone(),
        via_hom: None,
    }
}

/// Classifying-space nerve `B_.G = Bar(point, G)`.
pub fn nerve(g: &FiniteGroup, k: usize) -> BarComplex {
    bar(&RightGSet::trivial(g, 1), k)
}

/// `Bar(G, N)` of a homomorphism `f: N -> G`: the target acting on itself
/// on the right through `f`, labeled by `G x N^m`.
pub fn bar_of_hom(f: &GroupHom, k: usize) -> BarComplex {
    let gset = RightGSet::via_hom(f);
    let mut complex = bar(&gset, k);
    complex.via_hom = Some(f.clone());
    complex
}

/// Result of checking the reduced-Segal conditions on a simplicial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegalReport {
    pub basepoint_ok: bool,
    /// per level 2..=k: bijectivity of the Segal map, with a witness reason
    pub segal_ok: Vec<(usize, bool, Option<String>)>,
    pub pi0_group_ok: bool,
    pub group_witness: Option<String>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.basepoint_ok && self.pi0_group_ok && self.segal_ok.iter().all(|(_, ok, _)| *ok)
    }

    pub fn passed_through(&self, level: usize) -> bool {
        self.basepoint_ok
            && self.pi0_group_ok
            && self
                .segal_ok
                .iter()
                .filter(|(n, _, _)| *n <= level)
                .all(|(_, ok, _)| *ok)
    }
}

impl fmt::Display for SegalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "basepoint: {}", if self.basepoint_ok { "ok" } else { "FAIL" })?;
        for (n, ok, witness) in &self.segal_ok {
            match witness {
                Some(w) if !ok => writeln!(f, "segal level {n}: FAIL ({w})")?,
                _ => writeln!(f, "segal level {n}: {}", if *ok { "ok" } else { "FAIL" })?,
            }
        }
        match &self.group_witness {
            Some(w) if !self.pi0_group_ok => write!(f, "group-like: FAIL ({w})"),
            _ => write!(f, "group-like: {}", if self.pi0_group_ok { "ok" } else { "FAIL" }),
        }
    }
}

/// The composite of faces realizing the vertex-pair inclusion
/// `[1] -> [n]`, `0 -> j-1, 1 -> j`: delete every vertex above `j`, then
/// the `j-1` vertices below `j-1`.
pub fn segal_chart(
    s: &TruncatedSimplicialSet,
    n: usize,
    j: usize,
) -> Result<Vec<usize>, SimplicialError> {
    debug_assert!(1 <= j && j <= n);
    let mut spec: Vec<usize> = (j + 1..=n).rev().collect();
    spec.extend(std::iter::repeat(0).take(j - 1));
    compose_face_path(s, n, &spec)
}

/// Checks the reduced-Segal conditions: singleton level 0, Segal maps
/// bijective at each level `2..=k`, and a group structure on level 1
/// (two-sided identity `s_0(*)` and two-sided inverses).
pub fn segal_check(s: &TruncatedSimplicialSet) -> SegalReport {
    let k = s.truncation();
    assert!(k >= 2, "segal check needs truncation >= 2");
    let basepoint_ok = s.level_size(0) == 1;
    let b1 = s.level_size(1);

    let mut segal_ok = Vec::new();
    let mut p2_inverse: Option<Vec<usize>> = None;
    for n in 2..=k {
        let charts: Vec<Vec<usize>> = (1..=n)
            .map(|j| segal_chart(s, n, j).expect("chart spec is valid within truncation"))
            .collect();
        let expected = b1.checked_pow(n as u32).unwrap_or(usize::MAX);
        if s.level_size(n) != expected {
            segal_ok.push((
                n,
                false,
                Some(format!(
                    "level has {} simplices, product needs {expected}",
                    s.level_size(n)
                )),
            ));
            continue;
        }
        let mut hit = vec![usize::MAX; expected];
        let mut witness = None;
        for x in 0..s.level_size(n) {
            let mut code = 0usize;
            for chart in charts.iter().rev() {
                code = code * b1 + chart[x];
            }
            if hit[code] != usize::MAX {
                witness = Some(format!(
                    "simplices {} and {x} share Segal image",
                    hit[code]
                ));
                break;
            }
            hit[code] = x;
        }
        let ok = witness.is_none();
        if n == 2 && ok {
            p2_inverse = Some(hit.clone());
        }
        segal_ok.push((n, ok, witness));
    }

    // group-likeness of level 1 under a * b = d_1(p_2^{-1}(a, b))
    let (pi0_group_ok, group_witness) = if !basepoint_ok {
        (false, Some("level 0 is not a singleton".to_string()))
    } else if let Some(inv2) = p2_inverse {
        let d1 = s.face(2, 1);
        let mult = |a: usize, b: usize| d1[inv2[b * b1 + a]];
        let e = s.degeneracy(0, 0)[0];
        let mut verdict = (true, None);
        for a in 0..b1 {
            if mult(e, a) != a || mult(a, e) != a {
                verdict = (false, Some(format!("s_0(*) is not an identity for {a}")));
                break;
            }
        }
        if verdict.0 {
            for a in 0..b1 {
                let has_inverse =
                    (0..b1).any(|b| mult(a, b) == e && mult(b, a) == e);
                if !has_inverse {
                    verdict = (false, Some(format!("element {a} has no inverse")));
                    break;
                }
            }
        }
        verdict
    } else {
        (false, Some("Segal map at level 2 is not bijective".to_string()))
    };

    SegalReport {
        basepoint_ok,
        segal_ok,
        pi0_group_ok,
        group_witness,
    }
}

/// Reads the group carried by level 1 of a nerve-like simplicial set:
/// product `a * b = d_1(p_2^{-1}(a, b))`, identity `s_0(*)`. Requires the
/// Segal structure through level 3 so associativity is forced.
pub fn recover_group_from_nerve(s: &TruncatedSimplicialSet) -> Result<FiniteGroup, BarError> {
    if s.truncation() < 3 {
        return Err(BarError::TruncationTooSmall {
            needed: 3,
            got: s.truncation(),
        });
    }
    let report = segal_check(s);
    if !report.passed_through(3) {
        return Err(BarError::SegalFailed {
            level: 3,
            reason: report.to_string(),
        });
    }
    let b1 = s.level_size(1);
    let chart1 = segal_chart(s, 2, 1).expect("chart valid at level 2");
    let chart2 = segal_chart(s, 2, 2).expect("chart valid at level 2");
    let mut inverse = vec![usize::MAX; b1 * b1];
    for x in 0..s.level_size(2) {
        inverse[chart2[x] * b1 + chart1[x]] = x;
    }
    let d1 = s.face(2, 1);
    let table: Vec<Vec<usize>> = (0..b1)
        .map(|a| (0..b1).map(|b| d1[inverse[b * b1 + a]]).collect())
        .collect();
    FiniteGroup::from_table("recovered", &table, Some(s.degeneracy(0, 0)[0])).map_err(|e| {
        BarError::SegalFailed {
            level: 3,
            reason: format!("recovered table is not a group: {e}"),
        }
    })
}

/// The left-translation action of the carrier group on one bar level,
/// `g . (x, n_1, .., n_m) = (g x, n_1, .., n_m)`, verified to be an action
/// commuting with every face `d_i`, `i >= 1`, and every degeneracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGAction {
    pub level: usize,
    /// `table[g][xi]`: the image of simplex `xi` under `g`
    pub table: Vec<Vec<usize>>,
}

pub fn level_g_action(b: &BarComplex, m: usize) -> Result<LevelGAction, BarError> {
    let f = b.via_hom().ok_or(BarError::NotHomogeneous)?;
    let g = f.target();
    let size = b.level_size(m);
    let nx = b.gset().carrier_size();
    debug_assert_eq!(nx, g.order());
    let table: Vec<Vec<usize>> = g
        .elements()
        .map(|gamma| {
            (0..size)
                .map(|idx| {
                    let x = idx % nx;
                    idx - x + g.mul(gamma, x)
                })
                .collect()
        })
        .collect();

    // action axioms
    for idx in 0..size {
        debug_assert_eq!(table[g.identity()][idx], idx);
    }
    for gamma in g.elements() {
        for delta in g.elements() {
            let gd = g.mul(gamma, delta);
            for idx in 0..size {
                if table[gd][idx] != table[gamma][table[delta][idx]] {
                    return Err(BarError::SegalFailed {
                        level: m,
                        reason: format!(
                            "level action not multiplicative at ({gamma}, {delta}, {idx})"
                        ),
                    });
                }
            }
        }
    }
    // equivariance of the structure maps that do not touch the carrier
    let s = b.underlying();
    if m >= 1 {
        for i in 1..=m {
            let face = s.face(m, i);
            for gamma in g.elements() {
                for idx in 0..size {
                    if face[table[gamma][idx]] != level_translate(g, nx, face[idx], gamma) {
                        return Err(BarError::SegalFailed {
                            level: m,
                            reason: format!("action does not commute with d_{i}"),
                        });
                    }
                }
            }
        }
    }
    if m < b.truncation() {
        for i in 0..=m {
            let degeneracy = s.degeneracy(m, i);
            for gamma in g.elements() {
                for idx in 0..size {
                    if degeneracy[table[gamma][idx]]
                        != level_translate(g, nx, degeneracy[idx], gamma)
                    {
                        return Err(BarError::SegalFailed {
                            level: m,
                            reason: format!("action does not commute with s_{i}"),
                        });
                    }
                }
            }
        }
    }
    Ok(LevelGAction { level: m, table })
}

fn level_translate(g: &FiniteGroup, nx: usize, idx: usize, gamma: usize) -> usize {
    let x = idx % nx;
    idx - x + g.mul(gamma, x)
}

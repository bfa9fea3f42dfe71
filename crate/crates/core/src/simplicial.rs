//! Truncated simplicial sets over finite index sets.
//!
//! A `TruncatedSimplicialSet` materializes levels `0..=k` with every face
//! and degeneracy stored as a plain index array. Construction checks only
//! shape (sizes and ranges); the simplicial identities are the business of
//! `verify_simplicial`, which reports violations with witnesses so that
//! deliberately broken objects can be inspected.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("truncation must be at least 1")]
    TruncationTooSmall,
    #[error("expected {expected} level sizes, got {got}")]
    LevelCountMismatch { expected: usize, got: usize },
    #[error("missing {kind} map ({level}, {index})")]
    MissingMap {
        kind: &'static str,
        level: usize,
        index: usize,
    },
    #[error("{kind} map ({level}, {index}) has length {len}, expected {expected}")]
    MapLength {
        kind: &'static str,
        level: usize,
        index: usize,
        len: usize,
        expected: usize,
    },
    #[error("{kind} map ({level}, {index}) sends {simplex} to {value}, beyond level size {size}")]
    MapRange {
        kind: &'static str,
        level: usize,
        index: usize,
        simplex: usize,
        value: usize,
        size: usize,
    },
    #[error("unexpected {kind} map key ({level}, {index})")]
    UnexpectedMap {
        kind: &'static str,
        level: usize,
        index: usize,
    },
    #[error("face index {index} invalid at level {level}")]
    IndexOutOfRange { index: usize, level: usize },
    #[error("degree {degree} out of range (truncation {truncation})")]
    DegreeOutOfRange { degree: usize, truncation: usize },
    #[error("label block shape does not match level sizes")]
    LabelShape,
    #[error("simplicial map level {level} does not commute with {kind} {index}: witness {simplex}")]
    NotSimplicial {
        level: usize,
        kind: &'static str,
        index: usize,
        simplex: usize,
    },
    #[error("simplicial map truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
}

/// Levels `0..=truncation` of a simplicial set, with faces `d_i` (`1 <= m`,
/// `0 <= i <= m`) and degeneracies `s_i` (`m < truncation`, `0 <= i <= m`)
/// as index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    truncation: usize,
    level_sizes: Vec<usize>,
    /// faces[m-1][i]: level m -> level m-1
    faces: Vec<Vec<Vec<usize>>>,
    /// degeneracies[m][i]: level m -> level m+1
    degeneracies: Vec<Vec<Vec<usize>>>,
    labels: Option<Vec<Vec<String>>>,
}

impl TruncatedSimplicialSet {
    pub fn new(
        truncation: usize,
        level_sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self, SimplicialError> {
        if truncation < 1 {
            return Err(SimplicialError::TruncationTooSmall);
        }
        if level_sizes.len() != truncation + 1 {
            return Err(SimplicialError::LevelCountMismatch {
                expected: truncation + 1,
                got: level_sizes.len(),
            });
        }
        check_maps("face", &faces, truncation, &level_sizes, -1)?;
        check_maps("degeneracy", &degeneracies, truncation, &level_sizes, 1)?;
        if let Some(ref l) = labels {
            if l.len() != truncation + 1
                || l.iter().zip(&level_sizes).any(|(row, &n)| row.len() != n)
            {
                return Err(SimplicialError::LabelShape);
            }
        }
        Ok(TruncatedSimplicialSet {
            truncation,
            level_sizes,
            faces,
            degeneracies,
            labels,
        })
    }

    /// Constant simplicial set on an `n`-element set.
    pub fn constant(n: usize, truncation: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        let faces = (1..=truncation).map(|m| vec![id.clone(); m + 1]).collect();
        let degeneracies = (0..truncation).map(|m| vec![id.clone(); m + 1]).collect();
        TruncatedSimplicialSet::new(truncation, vec![n; truncation + 1], faces, degeneracies, None)
            .expect("constant simplicial set is well-shaped")
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn level_size(&self, m: usize) -> usize {
        self.level_sizes[m]
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    /// `d_i` as an index array, level `m` to `m - 1`.
    pub fn face(&self, m: usize, i: usize) -> &[usize] {
        &self.faces[m - 1][i]
    }

    /// `s_i` as an index array, level `m` to `m + 1`.
    pub fn degeneracy(&self, m: usize, i: usize) -> &[usize] {
        &self.degeneracies[m][i]
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<Vec<String>>>) -> Result<(), SimplicialError> {
        if let Some(ref l) = labels {
            if l.len() != self.truncation + 1
                || l.iter().zip(&self.level_sizes).any(|(row, &n)| row.len() != n)
            {
                return Err(SimplicialError::LabelShape);
            }
        }
        self.labels = labels;
        Ok(())
    }

    /// Marks, per level, which simplices are degenerate (in the image of
    /// some `s_i`). Level 0 has no degenerate simplices.
    pub fn degenerate_flags(&self) -> Vec<Vec<bool>> {
        let mut flags: Vec<Vec<bool>> = self.level_sizes.iter().map(|&n| vec![false; n]).collect();
        for m in 0..self.truncation {
            for i in 0..=m {
                for &img in self.degeneracy(m, i) {
                    flags[m + 1][img] = true;
                }
            }
        }
        flags
    }
}

fn check_maps(
    kind: &'static str,
    maps: &[Vec<Vec<usize>>],
    truncation: usize,
    level_sizes: &[usize],
    delta: isize,
) -> Result<(), SimplicialError> {
    // faces live on levels 1..=k, degeneracies on 0..k: k map families each
    if maps.len() != truncation {
        return Err(SimplicialError::LevelCountMismatch {
            expected: truncation,
            got: maps.len(),
        });
    }
    for (slot, per_level) in maps.iter().enumerate() {
        // for faces slot = m-1, for degeneracies slot = m
        let m = if delta < 0 { slot + 1 } else { slot };
        let expected_count = m + 1;
        if per_level.len() != expected_count {
            return Err(if per_level.len() < expected_count {
                SimplicialError::MissingMap {
                    kind,
                    level: m,
                    index: per_level.len(),
                }
            } else {
                SimplicialError::UnexpectedMap {
                    kind,
                    level: m,
                    index: expected_count,
                }
            });
        }
        let domain = level_sizes[m];
        let codomain = level_sizes[(m as isize + delta) as usize];
        for (i, map) in per_level.iter().enumerate() {
            if map.len() != domain {
                return Err(SimplicialError::MapLength {
                    kind,
                    level: m,
                    index: i,
                    len: map.len(),
                    expected: domain,
                });
            }
            for (simplex, &value) in map.iter().enumerate() {
                if value >= codomain {
                    return Err(SimplicialError::MapRange {
                        kind,
                        level: m,
                        index: i,
                        simplex,
                        value,
                        size: codomain,
                    });
                }
            }
        }
    }
    Ok(())
}

/// One violated simplicial identity, with the simplex it fails on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialViolation {
    pub identity: String,
    pub level: usize,
    pub simplex: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for SimplicialViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at level {} on simplex {}: {} != {}",
            self.identity, self.level, self.simplex, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplicialReport {
    pub violations: Vec<SimplicialViolation>,
}

impl SimplicialReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SimplicialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::report::write_findings(f, "simplicial identity", &self.violations)
    }
}

/// Checks the five simplicial identity families on every composable pair
/// within truncation. An empty report means the object is simplicial.
pub fn verify_simplicial(s: &TruncatedSimplicialSet) -> SimplicialReport {
    let k = s.truncation();
    let mut violations = Vec::new();
    let mut record = |identity: String, level: usize, simplex: usize, lhs: usize, rhs: usize| {
        violations.push(SimplicialViolation {
            identity,
            level,
            simplex,
            lhs,
            rhs,
        });
    };

    // d_i d_j = d_{j-1} d_i for i < j
    for m in 2..=k {
        for j in 1..=m {
            for i in 0..j {
                let dj = s.face(m, j);
                let di_lower = s.face(m - 1, i);
                let di = s.face(m, i);
                let djm1_lower = s.face(m - 1, j - 1);
                for x in 0..s.level_size(m) {
                    let lhs = di_lower[dj[x]];
                    let rhs = djm1_lower[di[x]];
                    if lhs != rhs {
                        record(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), m, x, lhs, rhs);
                    }
                }
            }
        }
    }

    // s_i s_j = s_{j+1} s_i for i <= j
    for m in 0..k.saturating_sub(1) {
        for j in 0..=m {
            for i in 0..=j {
                let sj = s.degeneracy(m, j);
                let si_upper = s.degeneracy(m + 1, i);
                let si = s.degeneracy(m, i);
                let sj1_upper = s.degeneracy(m + 1, j + 1);
                for x in 0..s.level_size(m) {
                    let lhs = si_upper[sj[x]];
                    let rhs = sj1_upper[si[x]];
                    if lhs != rhs {
                        record(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), m, x, lhs, rhs);
                    }
                }
            }
        }
    }

    // mixed identities, starting from s_j at level m
    for m in 0..k {
        for j in 0..=m {
            let sj = s.degeneracy(m, j);
            // d_i s_j = s_{j-1} d_i for i < j
            for i in 0..j {
                let di_upper = s.face(m + 1, i);
                let di = s.face(m, i);
                let sjm1_lower = s.degeneracy(m - 1, j - 1);
                for x in 0..s.level_size(m) {
                    let lhs = di_upper[sj[x]];
                    let rhs = sjm1_lower[di[x]];
                    if lhs != rhs {
                        record(format!("d_{i} s_{j} = s_{} d_{i}", j - 1), m, x, lhs, rhs);
                    }
                }
            }
            // d_j s_j = id = d_{j+1} s_j
            for i in [j, j + 1] {
                let di_upper = s.face(m + 1, i);
                for x in 0..s.level_size(m) {
                    let lhs = di_upper[sj[x]];
                    if lhs != x {
                        record(format!("d_{i} s_{j} = id"), m, x, lhs, x);
                    }
                }
            }
            // d_i s_j = s_j d_{i-1} for i > j + 1
            for i in j + 2..=m + 1 {
                let di_upper = s.face(m + 1, i);
                let dim1 = s.face(m, i - 1);
                let sj_lower = s.degeneracy(m - 1, j);
                for x in 0..s.level_size(m) {
                    let lhs = di_upper[sj[x]];
                    let rhs = sj_lower[dim1[x]];
                    if lhs != rhs {
                        record(format!("d_{i} s_{j} = s_{j} d_{}", i - 1), m, x, lhs, rhs);
                    }
                }
            }
        }
    }

    SimplicialReport { violations }
}

/// Partition of the level-0 set; classes are sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Partition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// The coequalizer of `d_0, d_1: level 1 => level 0`.
pub fn pi0(s: &TruncatedSimplicialSet) -> Partition {
    let n = s.level_size(0);
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut Vec<usize>, a: usize) -> usize {
        let mut a = a;
        while rep[a] != a {
            rep[a] = rep[rep[a]];
            a = rep[a];
        }
        a
    }
    let d0 = s.face(1, 0);
    let d1 = s.face(1, 1);
    for e in 0..s.level_size(1) {
        let (a, b) = (find(&mut rep, d0[e]), find(&mut rep, d1[e]));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            rep[hi] = lo;
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0usize; n];
    for x in 0..n {
        let r = find(&mut rep, x);
        let idx = *class_index.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(x);
        class_of[x] = idx;
    }
    Partition { classes, class_of }
}

/// A map of finite sets, the input of the power construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetMap {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub map: Vec<usize>,
}

impl FinSetMap {
    pub fn new(domain_size: usize, codomain_size: usize, map: Vec<usize>) -> Result<Self, SimplicialError> {
        if map.len() != domain_size {
            return Err(SimplicialError::MapLength {
                kind: "finset",
                level: 0,
                index: 0,
                len: map.len(),
                expected: domain_size,
            });
        }
        for (simplex, &value) in map.iter().enumerate() {
            if value >= codomain_size {
                return Err(SimplicialError::MapRange {
                    kind: "finset",
                    level: 0,
                    index: 0,
                    simplex,
                    value,
                    size: codomain_size,
                });
            }
        }
        Ok(FinSetMap {
            domain_size,
            codomain_size,
            map,
        })
    }

    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.codomain_size];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() == self.codomain_size
    }
}

/// Iterated fiber power of a finite-set map: level `m` is the set of
/// `(m+1)`-tuples of domain elements with equal image, `d_i` deletes
/// coordinate `i` and `s_i` repeats it.
pub fn cech_power(f: &FinSetMap, truncation: usize) -> TruncatedSimplicialSet {
    assert!(truncation >= 1);
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); f.codomain_size];
    for (e, &b) in f.map.iter().enumerate() {
        fibers[b].push(e);
    }
    let fibers: Vec<Vec<usize>> = fibers.into_iter().filter(|fb| !fb.is_empty()).collect();

    // tuples per level, fiber blocks in codomain order, lexicographic inside
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(truncation + 1);
    for m in 0..=truncation {
        let mut tuples = Vec::new();
        for fiber in &fibers {
            let mut stack = vec![0usize; m + 1];
            loop {
                tuples.push(stack.iter().map(|&i| fiber[i]).collect::<Vec<usize>>());
                let mut pos = m + 1;
                while pos > 0 {
                    pos -= 1;
                    stack[pos] += 1;
                    if stack[pos] < fiber.len() {
                        break;
                    }
                    stack[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX {
                    break;
                }
            }
        }
        levels.push(tuples);
    }
    let index: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|tuples| {
            tuples
                .iter()
                .enumerate()
                .map(|(i, t)| (t.as_slice(), i))
                .collect()
        })
        .collect();

    let mut faces = Vec::new();
    for m in 1..=truncation {
        let mut per_level = Vec::new();
        for i in 0..=m {
            let map: Vec<usize> = levels[m]
                .iter()
                .map(|t| {
                    let mut shorter = t.clone();
                    shorter.remove(i);
                    index[m - 1][shorter.as_slice()]
                })
                .collect();
            per_level.push(map);
        }
        faces.push(per_level);
    }
    let mut degeneracies = Vec::new();
    for m in 0..truncation {
        let mut per_level = Vec::new();
        for i in 0..=m {
            let map: Vec<usize> = levels[m]
                .iter()
                .map(|t| {
                    let mut longer = t.clone();
                    longer.insert(i, t[i]);
                    index[m + 1][longer.as_slice()]
                })
                .collect();
            per_level.push(map);
        }
        degeneracies.push(per_level);
    }
    let labels: Vec<Vec<String>> = levels
        .iter()
        .map(|tuples| {
            tuples
                .iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(|e| format!("e{e}")).collect();
                    format!("({})", parts.join(","))
                })
                .collect()
        })
        .collect();
    let level_sizes = levels.iter().map(|t| t.len()).collect();
    TruncatedSimplicialSet::new(truncation, level_sizes, faces, degeneracies, Some(labels))
        .expect("power construction is well-shaped")
}

/// The composite face map `d_{spec[last]} o ... o d_{spec[0]}` starting at
/// level `m`; `spec[0]` is applied first. Empty spec gives the identity.
pub fn compose_face_path(
    s: &TruncatedSimplicialSet,
    m: usize,
    spec: &[usize],
) -> Result<Vec<usize>, SimplicialError> {
    if m > s.truncation() || spec.len() > m {
        return Err(SimplicialError::DegreeOutOfRange {
            degree: m,
            truncation: s.truncation(),
        });
    }
    let mut current: Vec<usize> = (0..s.level_size(m)).collect();
    let mut level = m;
    for &i in spec {
        if i > level || level == 0 {
            return Err(SimplicialError::IndexOutOfRange { index: i, level });
        }
        let face = s.face(level, i);
        for v in current.iter_mut() {
            *v = face[*v];
        }
        level -= 1;
    }
    Ok(current)
}

/// A simplicial map between sets of equal truncation; construction checks
/// commutation with every face and degeneracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: TruncatedSimplicialSet,
    target: TruncatedSimplicialSet,
    level_maps: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(
        source: TruncatedSimplicialSet,
        target: TruncatedSimplicialSet,
        level_maps: Vec<Vec<usize>>,
    ) -> Result<Self, SimplicialError> {
        if source.truncation() != target.truncation() {
            return Err(SimplicialError::TruncationMismatch {
                left: source.truncation(),
                right: target.truncation(),
            });
        }
        let k = source.truncation();
        if level_maps.len() != k + 1 {
            return Err(SimplicialError::LevelCountMismatch {
                expected: k + 1,
                got: level_maps.len(),
            });
        }
        for m in 0..=k {
            let f = &level_maps[m];
            if f.len() != source.level_size(m) {
                return Err(SimplicialError::MapLength {
                    kind: "level",
                    level: m,
            index: 0,
                    len: f.len(),
                    expected: source.level_size(m),
                });
            }
            for (simplex, &value) in f.iter().enumerate() {
                if value >= target.level_size(m) {
                    return Err(SimplicialError::MapRange {
                        kind: "level",
                        level: m,
                        index: 0,
                        simplex,
                        value,
                        size: target.level_size(m),
                    });
                }
            }
        }
        for m in 1..=k {
            for i in 0..=m {
                let df = source.face(m, i);
                let dg = target.face(m, i);
                for x in 0..source.level_size(m) {
                    if level_maps[m - 1][df[x]] != dg[level_maps[m][x]] {
                        return Err(SimplicialError::NotSimplicial {
                            level: m,
                            kind: "face",
                            index: i,
                            simplex: x,
                        });
                    }
                }
            }
        }
        for m in 0..k {
            for i in 0..=m {
                let sf = source.degeneracy(m, i);
                let sg = target.degeneracy(m, i);
                for x in 0..source.level_size(m) {
                    if level_maps[m + 1][sf[x]] != sg[level_maps[m][x]] {
                        return Err(SimplicialError::NotSimplicial {
                            level: m,
                            kind: "degeneracy",
                            index: i,
                            simplex: x,
                        });
                    }
                }
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            level_maps,
        })
    }

    pub fn source(&self) -> &TruncatedSimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &TruncatedSimplicialSet {
        &self.target
    }

    pub fn level_map(&self, m: usize) -> &[usize] {
        &self.level_maps[m]
    }

    pub fn level_maps(&self) -> &[Vec<usize>] {
        &self.level_maps
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        (0..=self.source.truncation()).all(|m| {
            if self.source.level_size(m) != self.target.level_size(m) {
                return false;
            }
            let mut seen = vec![false; self.target.level_size(m)];
            self.level_maps[m].iter().all(|&v| {
                let fresh = !seen[v];
                seen[v] = true;
                fresh
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::nerve;
    use crate::catalog;

    #[test]
    fn constant_set_is_simplicial() {
        let s = TruncatedSimplicialSet::constant(3, 3);
        assert!(verify_simplicial(&s).is_ok());
        assert_eq!(pi0(&s).count(), 3);
    }

    #[test]
    fn nerve_is_simplicial_and_connected() {
        let s = nerve(&catalog::cyclic(2), 3);
        let report = verify_simplicial(s.underlying());
        assert!(report.is_ok(), "{report}");
        assert_eq!(pi0(s.underlying()).count(), 1);
    }

    #[test]
    fn corrupted_face_is_reported() {
        let s = nerve(&catalog::cyclic(2), 3);
        let mut faces: Vec<Vec<Vec<usize>>> = (1..=3)
            .map(|m| (0..=m).map(|i| s.underlying().face(m, i).to_vec()).collect())
            .collect();
        let degeneracies: Vec<Vec<Vec<usize>>> = (0..3)
            .map(|m| {
                (0..=m)
                    .map(|i| s.underlying().degeneracy(m, i).to_vec())
                    .collect()
            })
            .collect();
        faces[1][0][1] ^= 1; // flip one d_0 entry at level 2
        let broken = TruncatedSimplicialSet::new(
            3,
            s.underlying().level_sizes().to_vec(),
            faces,
            degeneracies,
            None,
        )
        .unwrap();
        let report = verify_simplicial(&broken);
        assert!(!report.is_ok());
        assert!(report.violations.iter().any(|v| v.level == 2));
    }

    fn abc_to_xy() -> FinSetMap {
        FinSetMap::new(3, 2, vec![0, 0, 1]).unwrap()
    }

    #[test]
    fn cech_point_identity() {
        let f = FinSetMap::new(1, 1, vec![0]).unwrap();
        let s = cech_power(&f, 3);
        assert_eq!(s.level_sizes(), &[1, 1, 1, 1]);
    }

    #[test]
    fn cech_level_sizes_match_fiber_powers() {
        let f = abc_to_xy();
        let s = cech_power(&f, 3);
        // oracle: sum over fibers of |fiber|^(m+1)
        let expected: Vec<usize> = (0..=3).map(|m| {
            let mut fibers = vec![0usize; f.codomain_size];
            for &b in &f.map {
                fibers[b] += 1;
            }
            fibers.iter().filter(|&&n| n > 0).map(|&n| n.pow(m as u32 + 1)).sum()
        }).collect();
        assert_eq!(s.level_sizes(), expected.as_slice());
        assert_eq!(s.level_sizes(), &[3, 5, 9, 17]);
        assert!(verify_simplicial(&s).is_ok());
        assert_eq!(pi0(&s).count(), 2);
    }

    #[test]
    fn cech_hits_only_components_meeting_the_image() {
        let f = FinSetMap::new(1, 2, vec![0]).unwrap();
        let s = cech_power(&f, 2);
        assert_eq!(pi0(&s).count(), 1);
        assert_eq!(pi0(&s).count(), f.image_size());
    }

    #[test]
    fn face_path_composites() {
        let s3 = catalog::symmetric(3);
        let n = nerve(&s3, 3);
        let identity = compose_face_path(n.underlying(), 2, &[]).unwrap();
        assert_eq!(identity, (0..n.underlying().level_size(2)).collect::<Vec<_>>());

        // d_1 on the nerve at level 2 is the multiplication map
        let mult = compose_face_path(n.underlying(), 2, &[1]).unwrap();
        for a in s3.elements() {
            for b in s3.elements() {
                let idx = n.index_of(2, 0, &[a, b]);
                assert_eq!(mult[idx], n.index_of(1, 0, &[s3.mul(a, b)]));
            }
        }

        // deleting coordinate 0 twice projects onto the last coordinate
        let f = abc_to_xy();
        let s = cech_power(&f, 2);
        let proj = compose_face_path(&s, 2, &[0, 0]).unwrap();
        let labels = s.labels().unwrap();
        for (x, &img) in proj.iter().enumerate() {
            let tuple = &labels[2][x];
            let last = tuple.trim_end_matches(')').rsplit(',').next().unwrap();
            assert_eq!(labels[0][img], format!("({last})"));
        }

        assert!(compose_face_path(&s, 2, &[0, 0, 0]).is_err());
        assert!(compose_face_path(&s, 1, &[2]).is_err());
    }
}

//! On-disk JSON formats and their conversions to core values.
//!
//! All indices are 0-based and identities are stored explicitly. Group
//! references inside homomorphism, g-set and crossed-module files may be
//! inline objects or path strings; resolving paths is the caller's
//! business (the CLI passes a filesystem resolver). Certificates embed
//! full tables so they stay independently checkable.

use crate::bar::BarComplex;
use crate::crossed::CrossedModule;
use crate::groups::{FiniteGroup, GroupActionOnGroup, GroupError, GroupHom, RightGSet};
use crate::simplicial::{FinSetMap, SimplicialError, TruncatedSimplicialSet};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad file shape: {0}")]
    Shape(String),
    #[error("unresolved group reference: {0}")]
    Unresolved(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            order: g.order(),
            identity: g.identity(),
            table: g.table_rows(),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup, FileError> {
        if self.table.len() != self.order {
            return Err(FileError::Shape(format!(
                "order field says {}, table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        Ok(FiniteGroup::from_table(
            self.name,
            &self.table,
            Some(self.identity),
        )?)
    }
}

/// Either an inline group or a path to a group file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupFile),
}

impl GroupRef {
    pub fn resolve(
        self,
        resolver: &dyn Fn(&str) -> Result<GroupFile, FileError>,
    ) -> Result<FiniteGroup, FileError> {
        match self {
            GroupRef::Inline(g) => g.into_group(),
            GroupRef::Path(p) => resolver(&p)?.into_group(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    pub source: GroupRef,
    pub target: GroupRef,
    pub map: Vec<usize>,
}

impl HomFile {
    pub fn from_hom(f: &GroupHom) -> Self {
        HomFile {
            source: GroupRef::Inline(GroupFile::from_group(f.source())),
            target: GroupRef::Inline(GroupFile::from_group(f.target())),
            map: f.map().to_vec(),
        }
    }

    pub fn into_hom(
        self,
        resolver: &dyn Fn(&str) -> Result<GroupFile, FileError>,
    ) -> Result<GroupHom, FileError> {
        let source = self.source.resolve(resolver)?;
        let target = self.target.resolve(resolver)?;
        Ok(GroupHom::new(source, target, self.map)?)
    }
}

/// Label payload of a simplicial-set file: plain strings per simplex, or
/// the tuple block emitted for bar complexes, keyed `level_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelsBlock {
    Strings(Vec<Vec<String>>),
    Tuples(BTreeMap<String, Vec<Vec<usize>>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetFile {
    pub truncation: usize,
    pub level_sizes: Vec<usize>,
    /// keys "m,i" for the face `d_i` out of level m
    pub faces: BTreeMap<String, Vec<usize>>,
    /// keys "m,i" for the degeneracy `s_i` out of level m
    pub degeneracies: BTreeMap<String, Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<LabelsBlock>,
}

fn map_key(m: usize, i: usize) -> String {
    format!("{m},{i}")
}

fn parse_key(key: &str) -> Result<(usize, usize), FileError> {
    let mut parts = key.split(',');
    let m = parts
        .next()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| FileError::Shape(format!("bad map key {key:?}")))?;
    let i = parts
        .next()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| FileError::Shape(format!("bad map key {key:?}")))?;
    if parts.next().is_some() {
        return Err(FileError::Shape(format!("bad map key {key:?}")));
    }
    Ok((m, i))
}

impl SimplicialSetFile {
    pub fn from_simplicial(s: &TruncatedSimplicialSet) -> Self {
        let k = s.truncation();
        let mut faces = BTreeMap::new();
        for m in 1..=k {
            for i in 0..=m {
                faces.insert(map_key(m, i), s.face(m, i).to_vec());
            }
        }
        let mut degeneracies = BTreeMap::new();
        for m in 0..k {
            for i in 0..=m {
                degeneracies.insert(map_key(m, i), s.degeneracy(m, i).to_vec());
            }
        }
        SimplicialSetFile {
            truncation: k,
            level_sizes: s.level_sizes().to_vec(),
            faces,
            degeneracies,
            labels: s.labels().map(|l| LabelsBlock::Strings(l.clone())),
        }
    }

    pub fn into_simplicial(self) -> Result<TruncatedSimplicialSet, FileError> {
        let k = self.truncation;
        if k < 1 {
            return Err(FileError::Shape("truncation must be at least 1".into()));
        }
        let mut faces: Vec<Vec<Vec<usize>>> = (1..=k).map(|m| vec![Vec::new(); m + 1]).collect();
        for (key, map) in self.faces {
            let (m, i) = parse_key(&key)?;
            if m < 1 || m > k || i > m {
                return Err(FileError::Shape(format!("face key {key:?} out of range")));
            }
            faces[m - 1][i] = map;
        }
        let mut degeneracies: Vec<Vec<Vec<usize>>> =
            (0..k).map(|m| vec![Vec::new(); m + 1]).collect();
        for (key, map) in self.degeneracies {
            let (m, i) = parse_key(&key)?;
            if m >= k || i > m {
                return Err(FileError::Shape(format!(
                    "degeneracy key {key:?} out of range"
                )));
            }
            degeneracies[m][i] = map;
        }
        let labels = match self.labels {
            Some(LabelsBlock::Strings(l)) => Some(l),
            Some(LabelsBlock::Tuples(t)) => Some(tuple_labels_to_strings(&t, &self.level_sizes)?),
            None => None,
        };
        Ok(TruncatedSimplicialSet::new(
            k,
            self.level_sizes,
            faces,
            degeneracies,
            labels,
        )?)
    }
}

fn tuple_labels_to_strings(
    tuples: &BTreeMap<String, Vec<Vec<usize>>>,
    level_sizes: &[usize],
) -> Result<Vec<Vec<String>>, FileError> {
    let mut out: Vec<Vec<String>> = level_sizes.iter().map(|&n| vec![String::new(); n]).collect();
    for (key, rows) in tuples {
        let m: usize = key
            .strip_prefix("level_")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FileError::Shape(format!("bad label key {key:?}")))?;
        if m >= out.len() || rows.len() != level_sizes[m] {
            return Err(FileError::Shape(format!("label block {key:?} mis-sized")));
        }
        for (idx, tuple) in rows.iter().enumerate() {
            let parts: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
            out[m][idx] = format!("({})", parts.join(","));
        }
    }
    Ok(out)
}

/// Serializes a bar complex: the underlying simplicial set with the tuple
/// labels block in the labels slot.
pub fn bar_to_file(b: &BarComplex) -> SimplicialSetFile {
    let mut file = SimplicialSetFile::from_simplicial(b.underlying());
    let mut tuples = BTreeMap::new();
    for (m, rows) in b.tuple_labels().into_iter().enumerate() {
        tuples.insert(format!("level_{m}"), rows);
    }
    file.labels = Some(LabelsBlock::Tuples(tuples));
    file
}

/// Serializes the simplicial group of a crossed module: the underlying
/// simplicial set with `(g, n_1, .., n_m)` tuple labels.
pub fn gamma_to_file(
    sg: &crate::crossed::TruncatedSimplicialGroup,
    cm: &CrossedModule,
) -> SimplicialSetFile {
    let mut file = SimplicialSetFile::from_simplicial(sg.underlying());
    let ng = cm.g().order();
    let nn = cm.n().order();
    let mut tuples = BTreeMap::new();
    for m in 0..=sg.truncation() {
        let rows: Vec<Vec<usize>> = (0..sg.level_size(m))
            .map(|idx| {
                let mut row = vec![idx % ng];
                let mut rest = idx / ng;
                for _ in 0..m {
                    row.push(rest % nn);
                    rest /= nn;
                }
                row
            })
            .collect();
        tuples.insert(format!("level_{m}"), rows);
    }
    file.labels = Some(LabelsBlock::Tuples(tuples));
    file
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinSetMapFile {
    pub domain: usize,
    pub codomain: usize,
    pub map: Vec<usize>,
}

impl FinSetMapFile {
    pub fn from_map(f: &FinSetMap) -> Self {
        FinSetMapFile {
            domain: f.domain_size,
            codomain: f.codomain_size,
            map: f.map.clone(),
        }
    }

    pub fn into_map(self) -> Result<FinSetMap, FileError> {
        Ok(FinSetMap::new(self.domain, self.codomain, self.map)?)
    }
}

/// Crossed-module certificate: boundary hom plus the action table
/// `action[g][n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedModuleFile {
    pub boundary: HomFile,
    pub action: Vec<Vec<usize>>,
}

impl CrossedModuleFile {
    pub fn from_cm(cm: &CrossedModule) -> Self {
        CrossedModuleFile {
            boundary: HomFile::from_hom(cm.boundary()),
            action: cm.action().table().to_vec(),
        }
    }

    pub fn into_cm(
        self,
        resolver: &dyn Fn(&str) -> Result<GroupFile, FileError>,
    ) -> Result<CrossedModule, FileError> {
        let boundary = self.boundary.into_hom(resolver)?;
        let action = GroupActionOnGroup::new(
            boundary.target().clone(),
            boundary.source().clone(),
            self.action,
        )?;
        CrossedModule::new(boundary, action)
            .map_err(|e| FileError::Shape(format!("not a crossed module: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetFile {
    pub group: GroupRef,
    pub carrier_size: usize,
    pub act: Vec<Vec<usize>>,
}

impl GSetFile {
    pub fn from_gset(x: &RightGSet) -> Self {
        GSetFile {
            group: GroupRef::Inline(GroupFile::from_group(x.group())),
            carrier_size: x.carrier_size(),
            act: x.table().to_vec(),
        }
    }

    pub fn into_gset(
        self,
        resolver: &dyn Fn(&str) -> Result<GroupFile, FileError>,
    ) -> Result<RightGSet, FileError> {
        let group = self.group.resolve(resolver)?;
        Ok(RightGSet::new(group, self.carrier_size, self.act)?)
    }
}

/// The level-map block of a serialized homotopy action; the two simplicial
/// sets travel in their own files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMapsFile {
    pub level_maps: Vec<Vec<usize>>,
}

/// A resolver for callers that never use path references.
pub fn no_paths(path: &str) -> Result<GroupFile, FileError> {
    Err(FileError::Unresolved(path.to_string()))
}

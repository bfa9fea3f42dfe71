//! Built-in group catalog: trivial, Z/n for n <= 12, S3, D4, Q8, D5, D6, A4.
//!
//! Every entry is constructed from a concrete model (residues, permutations,
//! quaternion units) and passes table validation.

use crate::groups::{symmetric_perms, FiniteGroup};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::from_table("1", &[vec![0]], Some(0)).expect("trivial group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(format!("Z/{n}"), &table, Some(0)).expect("cyclic group")
}

fn group_from_perms(name: &str, perms: &[Vec<usize>]) -> FiniteGroup {
    let index: HashMap<&Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let deg = perms[0].len();
    let mut table = vec![vec![0usize; perms.len()]; perms.len()];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp: Vec<usize> = (0..deg).map(|x| p[q[x]]).collect();
            table[i][j] = *index.get(&comp).expect("composition stays in the set");
        }
    }
    FiniteGroup::from_table(name, &table, None).expect("permutation group")
}

/// Full symmetric group on `0..n`, elements in lexicographic order.
pub fn symmetric(n: usize) -> FiniteGroup {
    group_from_perms(&format!("S{n}"), &symmetric_perms(n))
}

/// Alternating group on `0..n`.
pub fn alternating(n: usize) -> FiniteGroup {
    let perms: Vec<Vec<usize>> = symmetric_perms(n)
        .into_iter()
        .filter(|p| {
            let mut inversions = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            inversions % 2 == 0
        })
        .collect();
    group_from_perms(&format!("A{n}"), &perms)
}

/// Dihedral group of order `2n` as symmetries of the n-gon vertex set.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let mut perms = Vec::with_capacity(2 * n);
    for b in 0..2 {
        for a in 0..n {
            let perm: Vec<usize> = (0..n)
                .map(|v| {
                    let w = if b == 0 { v } else { (n - v) % n };
                    (w + a) % n
                })
                .collect();
            perms.push(perm);
        }
    }
    group_from_perms(&format!("D{n}"), &perms)
}

/// Quaternion group: elements 1, -1, i, -i, j, -j, k, -k in that order.
pub fn quaternion8() -> FiniteGroup {
    // (sign, axis) pairs; axis 0 is the real unit
    let axis_mul = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![vec![0usize; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (sx, ax) = (x % 2, x / 2);
            let (sy, ay) = (y % 2, y / 2);
            let (sp, ap) = axis_mul[ax][ay];
            table[x][y] = ap * 2 + (sx ^ sy ^ sp);
        }
    }
    FiniteGroup::from_table("Q8", &table, Some(0)).expect("quaternion group")
}

/// Klein four-group; not a catalog entry but a common test subject.
pub fn klein_four() -> FiniteGroup {
    crate::groups::direct_product(&cyclic(2), &cyclic(2)).rename("V4")
}

/// The full built-in catalog in a fixed order.
pub fn builtin() -> Vec<CatalogEntry> {
    let mut entries = vec![CatalogEntry {
        name: "1".to_string(),
        group: trivial(),
    }];
    for n in 2..=12 {
        entries.push(CatalogEntry {
            name: format!("Z/{n}"),
            group: cyclic(n),
        });
    }
    for (name, group) in [
        ("S3", symmetric(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion8()),
        ("D5", dihedral(5)),
        ("D6", dihedral(6)),
        ("A4", alternating(4)),
    ] {
        entries.push(CatalogEntry {
            name: name.to_string(),
            group,
        });
    }
    entries
}

/// Catalog lookup by name; accepts "trivial" as an alias for "1".
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let canonical = if name.eq_ignore_ascii_case("trivial") {
        "1"
    } else {
        name
    };
    builtin()
        .into_iter()
        .find(|e| e.name == canonical)
        .map(|e| e.group)
}

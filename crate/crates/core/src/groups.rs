//! Finite group arithmetic on multiplication tables.
//!
//! Groups are stored as full Cayley tables over element indices `0..order`,
//! with the identity recorded explicitly (element 0 need not be the
//! identity, so third-party tables can be ingested as-is). All operations
//! here are table-driven and total: validation, homomorphisms, kernels,
//! images, quotients, automorphism groups and exhaustive enumeration of
//! homomorphisms / actions-by-automorphisms.

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table entry out of range at ({row}, {col}): {value} not below order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table is not square: row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("empty multiplication table")]
    Empty,
    #[error("multiplication is not associative: witness ({a}, {b}, {c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("identity hint {hint} is not a two-sided identity")]
    IdentityHintWrong { hint: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("map has length {len}, expected source order {expected}")]
    MapLengthMismatch { len: usize, expected: usize },
    #[error("map value {value} at {index} not below target order {order}")]
    MapOutOfRange {
        index: usize,
        value: usize,
        order: usize,
    },
    #[error("identity is not preserved")]
    IdentityNotPreserved,
    #[error("not a homomorphism: witness pair ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("image of the map is not a normal subgroup")]
    ImageNotNormal,
    #[error("map is not injective")]
    NotInjective,
    #[error("subset is not closed under multiplication: witness ({a}, {b})")]
    NotClosed { a: usize, b: usize },
    #[error("action row for {actor} is not an automorphism of the carrier")]
    RowNotAutomorphism { actor: usize },
    #[error("identity of the actor does not act trivially: moves {carrier}")]
    IdentityActsNontrivially { carrier: usize },
    #[error("action is not multiplicative: witness actors ({g}, {h}) on {n}")]
    ActionNotMultiplicative { g: usize, h: usize, n: usize },
    #[error("g-set axiom violated: witness ({x}, {g}, {h})")]
    GSetAxiom { x: usize, g: usize, h: usize },
    #[error("action table has wrong shape")]
    ActionShape,
}

/// A finite group presented by its full multiplication table.
///
/// `table[a * order + b]` is the index of the product of elements `a` and
/// `b`. Validation (`from_table`) checks closure, associativity, a
/// two-sided identity and inverses, and is the only way to construct one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square index table as a group. `identity_hint`, when
    /// given, must name the actual identity element.
    pub fn from_table(
        name: impl Into<String>,
        table: &[Vec<usize>],
        identity_hint: Option<usize>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::OutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| flat[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        if let Some(hint) = identity_hint {
            if hint != identity {
                return Err(GroupError::IdentityHintWrong { hint });
            }
        }

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NonAssociative { a, b, c });
                    }
                }
            }
        }

        let mut inverse = vec![0usize; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NoInverse { element: a })?;
        }

        Ok(FiniteGroup {
            name: name.into(),
            order,
            table: flat,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn conjugate(&self, g: usize, n: usize) -> usize {
        self.mul(self.mul(g, n), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Greedy irredundant generating sequence: repeatedly adjoin the
    /// smallest element outside the subgroup generated so far.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = closure(self, &[]);
        while span.len() < self.order {
            let next = (0..self.order)
                .find(|a| !span.contains(a))
                .expect("span smaller than the group must miss an element");
            gens.push(next);
            let mut seed = span.clone();
            seed.push(next);
            span = closure(self, &seed);
        }
        gens
    }
}

/// Smallest subset of `g` containing `seed` and the identity, closed under
/// multiplication. Returned sorted.
pub fn closure(g: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    let mut worklist: Vec<usize> = vec![g.identity()];
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            worklist.push(s);
        }
    }
    let mut members = worklist.clone();
    while let Some(a) = worklist.pop() {
        // products with everything already inside, both orders
        let snapshot: Vec<usize> = members.clone();
        for &b in &snapshot {
            for p in [g.mul(a, b), g.mul(b, a)] {
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                    worklist.push(p);
                }
            }
        }
    }
    members.sort_unstable();
    members
}

/// The subgroup on an already-closed element set, with its inclusion.
/// Elements must be sorted; closure is checked, not taken.
pub fn subgroup(g: &FiniteGroup, elements: &[usize], name: impl Into<String>) -> Result<(FiniteGroup, GroupHom), GroupError> {
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut table = vec![vec![0usize; elements.len()]; elements.len()];
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            let p = g.mul(a, b);
            match pos.get(&p) {
                Some(&k) => table[i][j] = k,
                None => return Err(GroupError::NotClosed { a, b }),
            }
        }
    }
    let sub = FiniteGroup::from_table(name, &table, None)?;
    let incl = GroupHom::new(sub.clone(), g.clone(), elements.to_vec())?;
    Ok((sub, incl))
}

/// Direct product with lexicographic element encoding `(a, b) = a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let n = a.order() * b.order();
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / b.order(), x % b.order());
            let (ya, yb) = (y / b.order(), y % b.order());
            table[x][y] = a.mul(xa, ya) * b.order() + b.mul(xb, yb);
        }
    }
    FiniteGroup::from_table(format!("{} x {}", a.name(), b.name()), &table, None)
        .expect("direct product of groups is a group")
}

/// A homomorphism between validated finite groups, stored as the image
/// array over source element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MapLengthMismatch {
                len: map.len(),
                expected: source.order(),
            });
        }
        for (index, &value) in map.iter().enumerate() {
            if value >= target.order() {
                return Err(GroupError::MapOutOfRange {
                    index,
                    value,
                    order: target.order(),
                });
            }
        }
        if map[source.identity()] != target.identity() {
            return Err(GroupError::IdentityNotPreserved);
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity_on(g: &FiniteGroup) -> Self {
        GroupHom::new(g.clone(), g.clone(), g.elements().collect())
            .expect("identity map is a homomorphism")
    }

    /// The unique map from the trivial group.
    pub fn from_trivial(trivial: &FiniteGroup, target: &FiniteGroup) -> Result<Self, GroupError> {
        GroupHom::new(trivial.clone(), target.clone(), vec![target.identity()])
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| {
            let fresh = !seen[v];
            seen[v] = true;
            fresh
        })
    }

    /// Image element set, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

/// Kernel as a subgroup of the source, with its inclusion.
pub fn kernel(f: &GroupHom) -> (FiniteGroup, GroupHom) {
    let elems: Vec<usize> = f
        .source()
        .elements()
        .filter(|&a| f.apply(a) == f.target().identity())
        .collect();
    subgroup(f.source(), &elems, format!("ker({})", f.source().name()))
        .expect("kernel is a subgroup")
}

/// True iff the image of `f` is a normal subgroup of the target.
pub fn image_normal(f: &GroupHom) -> bool {
    let t = f.target();
    let im = f.image();
    let inside = {
        let mut v = vec![false; t.order()];
        for &x in &im {
            v[x] = true;
        }
        v
    };
    t.elements()
        .all(|g| im.iter().all(|&n| inside[t.conjugate(g, n)]))
}

/// Quotient of the target by the image of `f`, with the projection.
/// Cosets are represented by their least element.
pub fn quotient_by_image(f: &GroupHom) -> Result<(FiniteGroup, GroupHom), GroupError> {
    if !image_normal(f) {
        return Err(GroupError::ImageNotNormal);
    }
    let t = f.target();
    let im = f.image();
    let mut coset_of = vec![usize::MAX; t.order()];
    let mut reps = Vec::new();
    for g in t.elements() {
        if coset_of[g] == usize::MAX {
            let idx = reps.len();
            reps.push(g);
            for &n in &im {
                coset_of[t.mul(g, n)] = idx;
            }
        }
    }
    let k = reps.len();
    let mut table = vec![vec![0usize; k]; k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i][j] = coset_of[t.mul(a, b)];
        }
    }
    let q = FiniteGroup::from_table(format!("{}/im", t.name()), &table, None)?;
    let proj = GroupHom::new(t.clone(), q, coset_of)?;
    let q = proj.target().clone();
    Ok((q, proj))
}

/// Enumerates every homomorphism from `g` to `h`, in lexicographic order of
/// the images of `g.minimal_generators()`. Exhaustive and duplicate-free.
pub fn enumerate_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    for_each_hom(g, h, |hom| {
        out.push(hom);
        true
    });
    out
}

/// Visitor form of `enumerate_homs`; the callback returns `false` to stop.
pub fn for_each_hom<F: FnMut(GroupHom) -> bool>(g: &FiniteGroup, h: &FiniteGroup, mut visit: F) {
    let gens = g.minimal_generators();
    // spanning words: each element as (parent, generator slot) from a BFS
    let mut parent = vec![None::<(usize, usize)>; g.order()];
    let mut bfs_order = vec![g.identity()];
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut head = 0;
    while head < bfs_order.len() {
        let a = bfs_order[head];
        head += 1;
        for (slot, &s) in gens.iter().enumerate() {
            let b = g.mul(a, s);
            if !seen[b] {
                seen[b] = true;
                parent[b] = Some((a, slot));
                bfs_order.push(b);
            }
        }
    }

    let gen_orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&d| {
            h.elements()
                .filter(|&y| d % h.element_order(y) == 0)
                .collect()
        })
        .collect();

    let mut images = vec![0usize; gens.len()];
    let mut stack = vec![0usize]; // candidate cursor per depth
    'outer: loop {
        let depth = stack.len() - 1;
        if depth == gens.len() {
            // full assignment: extend over the BFS tree and check
            let mut phi = vec![0usize; g.order()];
            phi[g.identity()] = h.identity();
            for &b in bfs_order.iter().skip(1) {
                let (p, slot) = parent[b].expect("non-root BFS nodes have parents");
                phi[b] = h.mul(phi[p], images[slot]);
            }
            let consistent = gens.iter().enumerate().all(|(i, &s)| phi[s] == images[i])
                && g.elements().all(|a| {
                    g.elements()
                        .all(|b| phi[g.mul(a, b)] == h.mul(phi[a], phi[b]))
                });
            if consistent {
                let hom = GroupHom::new(g.clone(), h.clone(), phi)
                    .expect("checked assignment is a homomorphism");
                if !visit(hom) {
                    return;
                }
            }
            stack.pop();
            if stack.is_empty() {
                return;
            }
            *stack.last_mut().expect("nonempty stack") += 1;
            continue;
        }
        let cursor = *stack.last().expect("nonempty stack");
        if cursor >= candidates[depth].len() {
            stack.pop();
            if stack.is_empty() {
                return;
            }
            *stack.last_mut().expect("nonempty stack") += 1;
            continue 'outer;
        }
        images[depth] = candidates[depth][cursor];
        stack.push(0);
    }
}

/// Isomorphism search by generator backtracking. Returns the element map
/// when the groups are isomorphic.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut spectrum_a: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
    let mut spectrum_b: Vec<usize> = b.elements().map(|x| b.element_order(x)).collect();
    spectrum_a.sort_unstable();
    spectrum_b.sort_unstable();
    if spectrum_a != spectrum_b {
        return None;
    }
    let mut found = None;
    for_each_hom(a, b, |hom| {
        if hom.is_injective() {
            found = Some(hom.map().to_vec());
            false
        } else {
            true
        }
    });
    found
}

/// An action of `actor` on the group `carrier` by automorphisms,
/// `act[g][n]` being the index of `n` acted on by `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupActionOnGroup {
    actor: FiniteGroup,
    carrier: FiniteGroup,
    act: Vec<Vec<usize>>,
}

impl GroupActionOnGroup {
    pub fn new(
        actor: FiniteGroup,
        carrier: FiniteGroup,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        if act.len() != actor.order() || act.iter().any(|row| row.len() != carrier.order()) {
            return Err(GroupError::ActionShape);
        }
        for (g, row) in act.iter().enumerate() {
            if row.iter().any(|&v| v >= carrier.order()) {
                return Err(GroupError::ActionShape);
            }
            let mut seen = vec![false; carrier.order()];
            for &v in row {
                if seen[v] {
                    return Err(GroupError::RowNotAutomorphism { actor: g });
                }
                seen[v] = true;
            }
            let is_endo = carrier.elements().all(|n| {
                carrier
                    .elements()
                    .all(|m| row[carrier.mul(n, m)] == carrier.mul(row[n], row[m]))
            });
            if !is_endo || row[carrier.identity()] != carrier.identity() {
                return Err(GroupError::RowNotAutomorphism { actor: g });
            }
        }
        for n in carrier.elements() {
            if act[actor.identity()][n] != n {
                return Err(GroupError::IdentityActsNontrivially { carrier: n });
            }
        }
        for g in actor.elements() {
            for h in actor.elements() {
                let gh = actor.mul(g, h);
                for n in carrier.elements() {
                    if act[gh][n] != act[g][act[h][n]] {
                        return Err(GroupError::ActionNotMultiplicative { g, h, n });
                    }
                }
            }
        }
        Ok(GroupActionOnGroup {
            actor,
            carrier,
            act,
        })
    }

    /// Skips axiom validation. Intended for fault-injection diagnostics:
    /// verifiers downstream are expected to report the damage.
    pub fn from_table_unchecked(
        actor: FiniteGroup,
        carrier: FiniteGroup,
        act: Vec<Vec<usize>>,
    ) -> Self {
        GroupActionOnGroup {
            actor,
            carrier,
            act,
        }
    }

    pub fn trivial(actor: &FiniteGroup, carrier: &FiniteGroup) -> Self {
        let row: Vec<usize> = carrier.elements().collect();
        GroupActionOnGroup {
            actor: actor.clone(),
            carrier: carrier.clone(),
            act: vec![row; actor.order()],
        }
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    #[inline]
    pub fn act(&self, g: usize, n: usize) -> usize {
        self.act[g][n]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }
}

/// The automorphism group of `n` as a finite group under composition
/// `(p * q)(x) = p(q(x))`, plus the permutation realizing each element.
pub fn automorphism_group(n: &FiniteGroup) -> (FiniteGroup, Vec<Vec<usize>>) {
    let mut perms: Vec<Vec<usize>> = enumerate_homs(n, n)
        .into_iter()
        .filter(|h| h.is_injective())
        .map(|h| h.map().to_vec())
        .collect();
    perms.sort();
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let k = perms.len();
    let mut table = vec![vec![0usize; k]; k];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp: Vec<usize> = (0..n.order()).map(|x| p[q[x]]).collect();
            table[i][j] = index[&comp];
        }
    }
    let aut = FiniteGroup::from_table(format!("Aut({})", n.name()), &table, None)
        .expect("automorphisms form a group under composition");
    (aut, perms)
}

/// Every action of `g` on `n` by automorphisms, i.e. every homomorphism
/// `g -> Aut(n)` converted to an action table. Lexicographic in the
/// generator images, exhaustive and duplicate-free.
pub fn enumerate_actions(g: &FiniteGroup, n: &FiniteGroup) -> Vec<GroupActionOnGroup> {
    let mut out = Vec::new();
    for_each_action(g, n, |a| {
        out.push(a);
        true
    });
    out
}

/// Visitor form of `enumerate_actions`; the callback returns `false` to stop.
pub fn for_each_action<F: FnMut(GroupActionOnGroup) -> bool>(
    g: &FiniteGroup,
    n: &FiniteGroup,
    mut visit: F,
) {
    let (aut, perms) = automorphism_group(n);
    for_each_hom(g, &aut, |hom| {
        let act: Vec<Vec<usize>> = g.elements().map(|x| perms[hom.apply(x)].clone()).collect();
        let action = GroupActionOnGroup::new(g.clone(), n.clone(), act)
            .expect("a homomorphism to Aut(N) induces an action");
        visit(action)
    });
}

/// A right action of a finite group on a finite set,
/// `act[x][g]` being the index of `x * g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightGSet {
    group: FiniteGroup,
    carrier_size: usize,
    act: Vec<Vec<usize>>,
}

impl RightGSet {
    pub fn new(
        group: FiniteGroup,
        carrier_size: usize,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        if act.len() != carrier_size
            || act
                .iter()
                .any(|row| row.len() != group.order() || row.iter().any(|&v| v >= carrier_size))
        {
            return Err(GroupError::ActionShape);
        }
        for x in 0..carrier_size {
            if act[x][group.identity()] != x {
                return Err(GroupError::GSetAxiom {
                    x,
                    g: group.identity(),
                    h: group.identity(),
                });
            }
            for g in group.elements() {
                for h in group.elements() {
                    if act[act[x][g]][h] != act[x][group.mul(g, h)] {
                        return Err(GroupError::GSetAxiom { x, g, h });
                    }
                }
            }
        }
        Ok(RightGSet {
            group,
            carrier_size,
            act,
        })
    }

    /// The group acting on itself by right translation.
    pub fn translation(group: &FiniteGroup) -> Self {
        let act: Vec<Vec<usize>> = group
            .elements()
            .map(|x| group.elements().map(|g| group.mul(x, g)).collect())
            .collect();
        RightGSet {
            carrier_size: group.order(),
            group: group.clone(),
            act,
        }
    }

    /// Trivial action on an `n`-point set.
    pub fn trivial(group: &FiniteGroup, n: usize) -> Self {
        let act: Vec<Vec<usize>> = (0..n).map(|x| vec![x; group.order()]).collect();
        RightGSet {
            group: group.clone(),
            carrier_size: n,
            act,
        }
    }

    /// Right action of `group` on `target` through a homomorphism,
    /// `x * n = x * f(n)`.
    pub fn via_hom(f: &GroupHom) -> Self {
        let t = f.target();
        let act: Vec<Vec<usize>> = t
            .elements()
            .map(|x| f.source().elements().map(|n| t.mul(x, f.apply(n))).collect())
            .collect();
        RightGSet {
            group: f.source().clone(),
            carrier_size: t.order(),
            act,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    #[inline]
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.act[x][g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }
}

/// Enumerates every right action of `g` on a set of `carrier_size` points.
/// Right actions correspond to homomorphisms into the opposite symmetric
/// group, realized here by `x * g = phi(g^-1)(x)`.
pub fn enumerate_right_actions(g: &FiniteGroup, carrier_size: usize) -> Vec<RightGSet> {
    let sym = crate::catalog::symmetric(carrier_size);
    let perms = symmetric_perms(carrier_size);
    enumerate_homs(g, &sym)
        .into_iter()
        .map(|phi| {
            let act: Vec<Vec<usize>> = (0..carrier_size)
                .map(|x| g.elements().map(|e| perms[phi.apply(g.inv(e))][x]).collect())
                .collect();
            RightGSet::new(g.clone(), carrier_size, act)
                .expect("a homomorphism to the opposite symmetric group induces a right action")
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order; the element
/// numbering used by `catalog::symmetric`.
pub fn symmetric_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out.sort();
    out
}

fn permute(slots: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
    if from == slots.len() {
        out.push(slots.clone());
        return;
    }
    for i in from..slots.len() {
        slots.swap(from, i);
        permute(slots, from + 1, out);
        slots.swap(from, i);
    }
    if slots.is_empty() {
        out.push(Vec::new());
    }
}

/// Invariant factors `d_1 | d_2 | ...` of a finite abelian group, largest
/// last, via repeated splitting along an element of maximal order.
pub fn abelian_invariants(g: &FiniteGroup) -> Option<Vec<usize>> {
    if !g.is_abelian() {
        return None;
    }
    let mut factors = Vec::new();
    let mut current = g.clone();
    while current.order() > 1 {
        let top = current
            .elements()
            .max_by_key(|&a| current.element_order(a))
            .expect("nontrivial group has elements");
        let d = current.element_order(top);
        factors.push(d);
        let cyclic: Vec<usize> = {
            let mut v = closure(&current, &[top]);
            v.sort_unstable();
            v
        };
        let (_, incl) = subgroup(&current, &cyclic, "cyclic").expect("cyclic subgroup is closed");
        let (q, _) = quotient_by_image(&incl).expect("subgroups of abelian groups are normal");
        current = q;
    }
    factors.reverse();
    Some(factors)
}

/// Short human description: catalog name when matched, abelian invariant
/// factors otherwise, or just the order.
pub fn describe_group(g: &FiniteGroup) -> String {
    if g.order() == 1 {
        return "1".to_string();
    }
    if let Some(inv) = abelian_invariants(g) {
        return inv
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ");
    }
    for entry in crate::catalog::builtin() {
        if entry.group.order() == g.order() && is_isomorphic(g, &entry.group).is_some() {
            return entry.name;
        }
    }
    format!("group of order {}", g.order())
}

//! Finite relations `Δ ⊆ Λ × Λ` and the set-level operations that mirror the
//! group structure: closed and normal subsets, closures, brackets, the
//! descending `γ` series, isolated pairs and differences.
//!
//! Subsets `Γ ⊆ Δ` are themselves [`Relation`] values. Operations that take a
//! subset check containment first and report [`RelationError::NotSubset`].

mod builders;
mod io;

pub use builders::{chain, ngon, random_normal_subset, random_perturbed_order, random_relation};
pub use io::{parse_pair_list, parse_relation, ParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::structure::{ChainDirection, SubsetChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("pair {0} is not in the ambient relation")]
    NotSubset(Pair),
    #[error("subset is not closed in the ambient relation")]
    NotClosed,
    #[error("subset is not normal in the ambient relation")]
    NotNormal,
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("invalid builder argument: {0}")]
    BadArgument(String),
    #[error("no relation satisfying the axioms found in {0} attempts")]
    AttemptsExhausted(usize),
    #[error(
        "descending series did not terminate within {0} steps; the relation violates the axioms"
    )]
    NotNilpotent(usize),
}

/// An element of the node set `Λ`, identified by an opaque text label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node(Arc<str>);

impl Node {
    pub fn new(label: impl AsRef<str>) -> Self {
        Node(Arc::from(label.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Self {
        Node::new(s)
    }
}

impl From<String> for Node {
    fn from(s: String) -> Self {
        Node::new(s)
    }
}

impl From<usize> for Node {
    fn from(i: usize) -> Self {
        Node::new(i.to_string())
    }
}

impl From<&Node> for Node {
    fn from(n: &Node) -> Self {
        n.clone()
    }
}

/// An ordered pair `(i, j)`; the index of a basis vector `e(i,j)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub src: Node,
    pub dst: Node,
}

impl Pair {
    pub fn new(src: impl Into<Node>, dst: impl Into<Node>) -> Self {
        Pair {
            src: src.into(),
            dst: dst.into(),
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.src, self.dst)
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for [`Pair::new`].
pub fn pair(src: impl Into<Node>, dst: impl Into<Node>) -> Pair {
    Pair::new(src, dst)
}

/// A finite relation on an explicit node set.
///
/// Reflexive pairs are representable so that [`Relation::check_axioms`] can
/// diagnose them; group construction rejects any relation that fails the check.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Relation {
    nodes: BTreeSet<Node>,
    pairs: BTreeSet<Pair>,
    succ: BTreeMap<Node, BTreeSet<Node>>,
    pred: BTreeMap<Node, BTreeSet<Node>>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation{}", self.pair_set())
    }
}

impl Relation {
    /// Builds a relation; endpoints of `pairs` are added to the node set.
    pub fn new(
        nodes: impl IntoIterator<Item = Node>,
        pairs: impl IntoIterator<Item = Pair>,
    ) -> Self {
        let mut rel = Relation {
            nodes: nodes.into_iter().collect(),
            ..Default::default()
        };
        for p in pairs {
            rel.insert(p);
        }
        rel
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = Pair>) -> Self {
        Self::new([], pairs)
    }

    /// A relation over this one's node set with the given pairs.
    pub fn restrict(&self, pairs: impl IntoIterator<Item = Pair>) -> Self {
        Self::new(self.nodes.iter().cloned(), pairs)
    }

    /// The empty subset over this node set.
    pub fn empty_subset(&self) -> Self {
        self.restrict([])
    }

    fn insert(&mut self, p: Pair) -> bool {
        if self.pairs.contains(&p) {
            return false;
        }
        self.nodes.insert(p.src.clone());
        self.nodes.insert(p.dst.clone());
        self.succ
            .entry(p.src.clone())
            .or_default()
            .insert(p.dst.clone());
        self.pred
            .entry(p.dst.clone())
            .or_default()
            .insert(p.src.clone());
        self.pairs.insert(p);
        true
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> + '_ {
        self.nodes.iter()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = &Pair> + '_ {
        self.pairs.iter()
    }

    pub fn pair_set(&self) -> PairSet<'_> {
        PairSet(&self.pairs)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: &Node, j: &Node) -> bool {
        self.succ.get(i).is_some_and(|s| s.contains(j))
    }

    pub fn contains_pair(&self, p: &Pair) -> bool {
        self.pairs.contains(p)
    }

    /// All `k` with `(i, k)` in the relation.
    pub fn successors<'a>(&'a self, i: &Node) -> impl Iterator<Item = &'a Node> + 'a {
        self.succ.get(i).into_iter().flatten()
    }

    /// All `k` with `(k, j)` in the relation.
    pub fn predecessors<'a>(&'a self, j: &Node) -> impl Iterator<Item = &'a Node> + 'a {
        self.pred.get(j).into_iter().flatten()
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    fn ensure_subset(&self, sub: &Relation) -> Result<(), RelationError> {
        match sub.pairs.iter().find(|p| !self.pairs.contains(*p)) {
            Some(p) => Err(RelationError::NotSubset(p.clone())),
            None => Ok(()),
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        for n in &other.nodes {
            out.nodes.insert(n.clone());
        }
        for p in &other.pairs {
            out.insert(p.clone());
        }
        out
    }

    /// Pairs in both relations, over this relation's node set.
    pub fn intersection(&self, other: &Relation) -> Relation {
        self.restrict(self.pairs.intersection(&other.pairs).cloned())
    }

    /// Pairs of `self` not in `other`, over this node set. No hypotheses
    /// are checked; see [`Relation::difference`] for the checked version.
    pub fn minus(&self, other: &Relation) -> Relation {
        self.restrict(self.pairs.difference(&other.pairs).cloned())
    }

    /// The node span `π₁(Ω) ∪ π₂(Ω)` of a pair set.
    pub fn span(&self) -> BTreeSet<Node> {
        self.pairs
            .iter()
            .flat_map(|p| [p.src.clone(), p.dst.clone()])
            .collect()
    }

    /// Checks irreflexivity and the four-point axiom: whenever
    /// `(i,j), (j,k), (k,l), (i,l)` are all present, `(i,k)` is present
    /// exactly when `(j,l)` is.
    pub fn check_axioms(&self) -> AxiomCheck {
        let mut violations: Vec<AxiomViolation> = self
            .pairs
            .iter()
            .filter(|p| p.src == p.dst)
            .map(|p| AxiomViolation::Reflexive(p.src.clone()))
            .collect();
        for p in &self.pairs {
            let (i, j) = (&p.src, &p.dst);
            for k in self.successors(j) {
                for l in self.successors(k) {
                    if !self.contains(i, l) {
                        continue;
                    }
                    let ik = self.contains(i, k);
                    let jl = self.contains(j, l);
                    if ik != jl {
                        let (present_side, absent_side) = if ik {
                            (pair(i, k), pair(j, l))
                        } else {
                            (pair(j, l), pair(i, k))
                        };
                        violations.push(AxiomViolation::A2(A2Violation {
                            quadruple: [i.clone(), j.clone(), k.clone(), l.clone()],
                            present_side,
                            absent_side,
                        }));
                    }
                }
            }
        }
        AxiomCheck { violations }
    }

    /// `Γ` is closed when `(i,j), (j,k) ∈ Γ` and `(i,k) ∈ Δ` force `(i,k) ∈ Γ`.
    pub fn is_closed(&self, sub: &Relation) -> Result<bool, RelationError> {
        self.ensure_subset(sub)?;
        Ok(self.closed_unchecked(sub))
    }

    fn closed_unchecked(&self, sub: &Relation) -> bool {
        sub.pairs.iter().all(|p| {
            sub.successors(&p.dst)
                .all(|k| !self.contains(&p.src, k) || sub.contains(&p.src, k))
        })
    }

    /// `Γ` is normal when it absorbs extensions on either side:
    /// `(i,j) ∈ Γ, (j,k), (i,k) ∈ Δ ⇒ (i,k) ∈ Γ` and
    /// `(i,j) ∈ Γ, (k,i), (k,j) ∈ Δ ⇒ (k,j) ∈ Γ`.
    pub fn is_normal(&self, sub: &Relation) -> Result<bool, RelationError> {
        self.ensure_subset(sub)?;
        let normal = sub.pairs.iter().all(|p| {
            let (i, j) = (&p.src, &p.dst);
            self.successors(j)
                .all(|k| !self.contains(i, k) || sub.contains(i, k))
                && self
                    .predecessors(i)
                    .all(|k| !self.contains(k, j) || sub.contains(k, j))
        });
        debug_assert!(
            !normal || self.closed_unchecked(sub),
            "normal subset must be closed"
        );
        Ok(normal)
    }

    /// The smallest closed subset containing `Ω`.
    pub fn closure(&self, omega: &Relation) -> Result<Relation, RelationError> {
        self.ensure_subset(omega)?;
        let mut out = self.restrict(omega.pairs.iter().cloned());
        let mut work: Vec<Pair> = omega.pairs.iter().cloned().collect();
        while let Some(p) = work.pop() {
            let mut found = Vec::new();
            // p on the left: (i,j)∘(j,k)
            for k in out.successors(&p.dst) {
                if self.contains(&p.src, k) && !out.contains(&p.src, k) {
                    found.push(pair(&p.src, k));
                }
            }
            // p on the right: (h,i)∘(i,j)
            for h in out.predecessors(&p.src) {
                if self.contains(h, &p.dst) && !out.contains(h, &p.dst) {
                    found.push(pair(h, &p.dst));
                }
            }
            for q in found {
                if out.insert(q.clone()) {
                    work.push(q);
                }
            }
        }
        Ok(out)
    }

    /// The smallest normal subset containing `Ω`.
    pub fn normal_closure(&self, omega: &Relation) -> Result<Relation, RelationError> {
        self.ensure_subset(omega)?;
        let mut out = self.restrict(omega.pairs.iter().cloned());
        let mut work: Vec<Pair> = omega.pairs.iter().cloned().collect();
        while let Some(p) = work.pop() {
            let (i, j) = (&p.src, &p.dst);
            let mut found = Vec::new();
            for k in self.successors(j) {
                if self.contains(i, k) {
                    found.push(pair(i, k));
                }
            }
            for k in self.predecessors(i) {
                if self.contains(k, j) {
                    found.push(pair(k, j));
                }
            }
            for q in found {
                if out.insert(q.clone()) {
                    work.push(q);
                }
            }
        }
        Ok(out)
    }

    /// `[Γ₁, Γ₂]`: all `(i,k) ∈ Δ` reachable as `(i,j)∘(j,k)` with one factor
    /// from each side, in either order.
    pub fn bracket(&self, a: &Relation, b: &Relation) -> Result<Relation, RelationError> {
        self.ensure_subset(a)?;
        self.ensure_subset(b)?;
        let mut out = self.empty_subset();
        for (left, right) in [(a, b), (b, a)] {
            for p in &left.pairs {
                for k in right.successors(&p.dst) {
                    if self.contains(&p.src, k) {
                        out.insert(pair(&p.src, k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `γ₁(Γ) = Γ`, `γ_{k+1}(Γ) = [γ_k(Γ), Γ]`, down to the first empty term.
    pub fn gamma_series(&self, sub: &Relation) -> Result<SubsetChain, RelationError> {
        if !self.is_closed(sub)? {
            return Err(RelationError::NotClosed);
        }
        let sub = self.restrict(sub.pairs.iter().cloned());
        let limit = sub.len() + 1;
        let mut terms = vec![sub.clone()];
        while !terms.last().expect("nonempty").is_empty() {
            if terms.len() > limit {
                return Err(RelationError::NotNilpotent(limit));
            }
            let next = self.bracket(terms.last().expect("nonempty"), &sub)?;
            terms.push(next);
        }
        Ok(SubsetChain::new(ChainDirection::Descending, terms))
    }

    /// Pairs `(i,j)` admitting no `(j,k)` with `(i,k)` present and no `(l,i)`
    /// with `(l,j)` present.
    pub fn isolated(&self) -> Relation {
        self.restrict(
            self.pairs
                .iter()
                .filter(|p| {
                    let (i, j) = (&p.src, &p.dst);
                    !self.successors(j).any(|k| self.contains(i, k))
                        && !self.predecessors(i).any(|l| self.contains(l, j))
                })
                .cloned(),
        )
    }

    /// `Δ ∖ Γ` for a normal subset `Γ`, over the same node set.
    pub fn difference(&self, sub: &Relation) -> Result<Relation, RelationError> {
        if !self.is_normal(sub)? {
            return Err(RelationError::NotNormal);
        }
        Ok(self.minus(sub))
    }

    /// Whether `Ω` has an element `(i,j)` with no `(j,k) ∈ Ω` such that
    /// `(i,k) ∈ Δ`.
    pub fn has_maximal(&self, omega: &Relation) -> Result<bool, RelationError> {
        self.ensure_subset(omega)?;
        if omega.is_empty() {
            return Err(RelationError::EmptySubset);
        }
        Ok(omega
            .pairs
            .iter()
            .any(|p| !omega.successors(&p.dst).any(|k| self.contains(&p.src, k))))
    }

    /// Whether `Ω` has an element `(i,j)` with no `(k,i) ∈ Ω` such that
    /// `(k,j) ∈ Δ`.
    pub fn has_minimal(&self, omega: &Relation) -> Result<bool, RelationError> {
        self.ensure_subset(omega)?;
        if omega.is_empty() {
            return Err(RelationError::EmptySubset);
        }
        Ok(omega
            .pairs
            .iter()
            .any(|p| !omega.predecessors(&p.src).any(|k| self.contains(k, &p.dst))))
    }
}

/// Displays a pair set as `{(a,b),(c,d)}` in lexicographic order.
pub struct PairSet<'a>(&'a BTreeSet<Pair>);

impl fmt::Display for PairSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, p) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// A failure of the four-point axiom at `(i, j, k, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A2Violation {
    pub quadruple: [Node; 4],
    pub present_side: Pair,
    pub absent_side: Pair,
}

impl A2Violation {
    /// Whether the quadruple still witnesses a violation in `rel`.
    pub fn reproduces_on(&self, rel: &Relation) -> bool {
        let [i, j, k, l] = &self.quadruple;
        rel.contains(i, j)
            && rel.contains(j, k)
            && rel.contains(k, l)
            && rel.contains(i, l)
            && rel.contains_pair(&self.present_side)
            && !rel.contains_pair(&self.absent_side)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Reflexive(Node),
    A2(A2Violation),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Reflexive(n) => write!(f, "A1 violation: reflexive pair ({n},{n})"),
            AxiomViolation::A2(v) => {
                let [i, j, k, l] = &v.quadruple;
                write!(
                    f,
                    "A2 violation at ({i},{j},{k},{l}): {} present, {} absent",
                    v.present_side, v.absent_side
                )
            }
        }
    }
}

/// Outcome of [`Relation::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomCheck {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

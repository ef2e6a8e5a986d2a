//! The ring `RΔ` and the group `G(Δ) = {1 + x : x ∈ RΔ}`.
//!
//! An element stores only the coefficient map of `x` with zero coefficients
//! pruned, so its representation is its normal form and equality is
//! structural. Basis products follow `e(i,j)·e(k,l) = e(i,l)` when `j = k`
//! and `(i,l) ∈ Δ`, and vanish otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Bound;
use std::sync::Arc;

use rand::Rng;

use crate::relation::{Node, Pair, Relation};
use crate::ring::{RingSpec, RingValue};
use crate::word::{GeneratorWord, WordToken};
use crate::Error;

/// Sparse coefficient map of an element of `RΔ`.
pub type Coefficients = BTreeMap<Pair, RingValue>;

/// The extended McLain group of a relation over a coefficient ring.
#[derive(Clone)]
pub struct McLainGroup {
    ring: RingSpec,
    relation: Arc<Relation>,
}

impl fmt::Debug for McLainGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({}) over {}", self.relation.pair_set(), self.ring)
    }
}

impl McLainGroup {
    /// Fails unless the relation satisfies the axioms.
    pub fn new(relation: Relation, ring: RingSpec) -> Result<Self, Error> {
        let check = relation.check_axioms();
        if let Some(v) = check.violations.first() {
            return Err(Error::InvalidRelation(v.to_string()));
        }
        Ok(McLainGroup {
            ring,
            relation: Arc::new(relation),
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    /// Whether both handles describe the same group.
    pub fn same_as(&self, other: &McLainGroup) -> bool {
        self.ring == other.ring
            && (Arc::ptr_eq(&self.relation, &other.relation) || self.relation == other.relation)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coeffs: Coefficients::new(),
        }
    }

    /// `x_{i,j}(a) = 1 + a·e(i,j)`.
    pub fn generator(
        &self,
        i: impl Into<Node>,
        j: impl Into<Node>,
        a: &RingValue,
    ) -> Result<GroupElement, Error> {
        self.generator_at(Pair::new(i, j), a)
    }

    pub fn generator_at(&self, p: Pair, a: &RingValue) -> Result<GroupElement, Error> {
        self.element([(p, a.clone())])
    }

    /// `1 + Σ c·e(p)`; repeated pairs are summed and zero terms dropped.
    pub fn element(
        &self,
        terms: impl IntoIterator<Item = (Pair, RingValue)>,
    ) -> Result<GroupElement, Error> {
        let mut coeffs = Coefficients::new();
        for (p, c) in terms {
            if !self.relation.contains_pair(&p) {
                return Err(Error::NotInRelation(p));
            }
            if c.spec() != self.ring {
                return Err(crate::ring::RingError::Mismatch(self.ring, c.spec()).into());
            }
            accumulate(&mut coeffs, p, c)?;
        }
        prune(&mut coeffs);
        Ok(GroupElement {
            group: self.clone(),
            coeffs,
        })
    }

    /// Reinterprets an element of another group with the same ring whose
    /// support lies in this relation. Used to move between `G(Γ)` for a
    /// closed `Γ` and `G(Δ)`, where the products agree.
    pub fn adopt(&self, g: &GroupElement) -> Result<GroupElement, Error> {
        self.element(g.coeffs.iter().map(|(p, c)| (p.clone(), c.clone())))
    }

    /// A random element: each pair of `Δ` receives a random coefficient with
    /// probability `density`.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        density: f64,
        bound: i64,
    ) -> GroupElement {
        let mut coeffs = Coefficients::new();
        for p in self.relation.pairs() {
            if rng.gen_bool(density) {
                coeffs.insert(p.clone(), self.ring.random(rng, bound));
            }
        }
        prune(&mut coeffs);
        GroupElement {
            group: self.clone(),
            coeffs,
        }
    }

    /// `Π x_p(a_p)` taken left to right.
    pub fn ordered_product<'a>(
        &self,
        factors: impl IntoIterator<Item = (&'a Pair, &'a RingValue)>,
    ) -> Result<GroupElement, Error> {
        let mut acc = self.identity();
        for (p, a) in factors {
            if a.is_zero() {
                continue;
            }
            acc = acc.multiply(&self.generator_at(p.clone(), a)?)?;
        }
        Ok(acc)
    }

    /// Evaluates a word homomorphically: concatenation is multiplication,
    /// `inv` is inversion and `comm(u,v) = u v u⁻¹ v⁻¹`.
    pub fn eval_word(&self, word: &GeneratorWord) -> Result<GroupElement, Error> {
        let mut acc = self.identity();
        for token in word.tokens() {
            let value = match token {
                WordToken::One => continue,
                WordToken::Gen { pair, coeff } => self.generator_at(pair.clone(), coeff)?,
                WordToken::Inv(w) => self.eval_word(w)?.inverse()?,
                WordToken::Comm(u, v) => self.eval_word(u)?.commutator(&self.eval_word(v)?)?,
            };
            acc = acc.multiply(&value)?;
        }
        Ok(acc)
    }
}

/// An element `1 + x` of `G(Δ)` in normal form.
#[derive(Clone)]
pub struct GroupElement {
    group: McLainGroup,
    coeffs: Coefficients,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.group.same_as(&other.group)
    }
}

impl Eq for GroupElement {}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints `1` or `1 + c1*e(i1,j1) + …` with pairs in lexicographic order.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1")?;
        for (p, c) in &self.coeffs {
            write!(f, " + {c}*e{p}")?;
        }
        Ok(())
    }
}

impl GroupElement {
    pub fn group(&self) -> &McLainGroup {
        &self.group
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    /// The coefficient at `p`, zero when `p` is outside the support.
    pub fn coefficient(&self, p: &Pair) -> RingValue {
        self.coeffs
            .get(p)
            .cloned()
            .unwrap_or_else(|| self.group.ring.zero())
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Ω(g − 1)` as a subset of the ambient relation.
    pub fn support(&self) -> Relation {
        self.group.relation.restrict(self.coeffs.keys().cloned())
    }

    fn check_same(&self, other: &GroupElement) -> Result<(), Error> {
        if !self.group.same_as(&other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// `(1 + x)(1 + y) = 1 + x + y + xy`.
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement, Error> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (p, c) in &other.coeffs {
            accumulate(&mut coeffs, p.clone(), c.clone())?;
        }
        for (p, c) in sparse_product(&self.group.relation, &self.coeffs, &other.coeffs)? {
            accumulate(&mut coeffs, p, c)?;
        }
        prune(&mut coeffs);
        Ok(GroupElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    /// `(1 + x)⁻¹ = 1 − x + x² − …`, which terminates because `x` is
    /// nilpotent. The number of terms is bounded by the node span of the
    /// support; overrunning that bound means the relation violates the axioms.
    pub fn inverse(&self) -> Result<GroupElement, Error> {
        let rel = &self.group.relation;
        let bound = self.support().span().len() + 1;
        let neg_x: Coefficients = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.clone(), c.neg()))
            .collect();
        let mut total = neg_x.clone();
        let mut power = neg_x.clone();
        let mut degree = 1;
        while !power.is_empty() {
            degree += 1;
            if degree > bound {
                return Err(Error::NilpotencyBound(bound));
            }
            power = sparse_product(rel, &power, &neg_x)?;
            for (p, c) in &power {
                accumulate(&mut total, p.clone(), c.clone())?;
            }
        }
        prune(&mut total);
        Ok(GroupElement {
            group: self.group.clone(),
            coeffs: total,
        })
    }

    /// `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement, Error> {
        self.multiply(other)?
            .multiply(&self.inverse()?.multiply(&other.inverse()?)?)
    }

    /// The least `m ≥ 1` with `(g − 1)^m = 0`.
    pub fn nilpotency_index(&self) -> Result<usize, Error> {
        let bound = self.support().span().len().max(1);
        let mut power = self.coeffs.clone();
        let mut m = 1;
        while !power.is_empty() {
            if m >= bound {
                return Err(Error::NilpotencyBound(bound));
            }
            power = sparse_product(&self.group.relation, &power, &self.coeffs)?;
            m += 1;
        }
        Ok(m)
    }
}

/// `xy` in `RΔ`: the coefficient of `e(i,l)` is the sum of `x(i,j)·y(j,l)`
/// over `j`, kept only when `(i,l) ∈ Δ`. Zero entries may remain.
pub(crate) fn sparse_product(
    rel: &Relation,
    x: &Coefficients,
    y: &Coefficients,
) -> Result<Coefficients, Error> {
    let mut out = Coefficients::new();
    if x.is_empty() || y.is_empty() {
        return Ok(out);
    }
    let floor = Node::new("");
    for (p, a) in x {
        let start = Pair {
            src: p.dst.clone(),
            dst: floor.clone(),
        };
        for (q, b) in y.range((Bound::Included(start), Bound::Unbounded)) {
            if q.src != p.dst {
                break;
            }
            if rel.contains(&p.src, &q.dst) {
                accumulate(
                    &mut out,
                    Pair {
                        src: p.src.clone(),
                        dst: q.dst.clone(),
                    },
                    a.mul(b)?,
                )?;
            }
        }
    }
    prune(&mut out);
    Ok(out)
}

fn accumulate(map: &mut Coefficients, p: Pair, c: RingValue) -> Result<(), Error> {
    match map.get_mut(&p) {
        Some(slot) => *slot = slot.add(&c)?,
        None => {
            map.insert(p, c);
        }
    }
    Ok(())
}

fn prune(map: &mut Coefficients) {
    map.retain(|_, c| !c.is_zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{chain, pair};

    fn z(v: i64) -> RingValue {
        RingSpec::Integers.from_i64(v)
    }

    fn chain_group(m: usize, ring: RingSpec) -> McLainGroup {
        McLainGroup::new(chain(m).unwrap(), ring).unwrap()
    }

    #[test]
    fn generators() {
        let g = chain_group(3, RingSpec::Integers);
        assert!(g.generator("1", "2", &z(0)).unwrap().is_identity());
        let x = g.generator("1", "2", &z(5)).unwrap();
        assert_eq!(x.to_string(), "1 + 5*e(1,2)");
        assert_eq!(
            g.generator("1", "1", &z(1)).unwrap_err(),
            Error::NotInRelation(pair("1", "1"))
        );
        let wrong = RingSpec::IntegersMod(3).one();
        assert!(matches!(g.generator("1", "2", &wrong), Err(Error::Ring(_))));
    }

    #[test]
    fn invalid_relation_rejected() {
        let bad = Relation::from_pairs([pair("1", "1")]);
        assert!(matches!(
            McLainGroup::new(bad, RingSpec::Integers),
            Err(Error::InvalidRelation(_))
        ));
    }

    #[test]
    fn multiply_examples() {
        let g = chain_group(3, RingSpec::Integers);
        let (a, b) = (z(2), z(7));
        let prod = g
            .generator("1", "2", &a)
            .unwrap()
            .multiply(&g.generator("2", "3", &b).unwrap())
            .unwrap();
        let want = g
            .element([
                (pair("1", "2"), a.clone()),
                (pair("2", "3"), b.clone()),
                (pair("1", "3"), z(14)),
            ])
            .unwrap();
        assert_eq!(prod, want);

        let open = McLainGroup::new(
            Relation::from_pairs([pair("1", "2"), pair("2", "3")]),
            RingSpec::Integers,
        )
        .unwrap();
        let prod = open
            .generator("1", "2", &a)
            .unwrap()
            .multiply(&open.generator("2", "3", &b).unwrap())
            .unwrap();
        assert_eq!(prod.to_string(), "1 + 2*e(1,2) + 7*e(2,3)");
        assert_eq!(prod.multiply(&open.identity()).unwrap(), prod);
    }

    #[test]
    fn inverse_examples() {
        let g = chain_group(3, RingSpec::Integers);
        let x = g.generator("1", "2", &z(4)).unwrap();
        assert_eq!(x.inverse().unwrap(), g.generator("1", "2", &z(-4)).unwrap());

        let h = g
            .element([
                (pair("1", "2"), z(1)),
                (pair("2", "3"), z(1)),
                (pair("1", "3"), z(1)),
            ])
            .unwrap();
        let inv = h.inverse().unwrap();
        assert_eq!(inv.to_string(), "1 + -1*e(1,2) + -1*e(2,3)");
        assert!(h.multiply(&inv).unwrap().is_identity());
        assert!(inv.multiply(&h).unwrap().is_identity());
        assert!(g.identity().inverse().unwrap().is_identity());
    }

    #[test]
    fn commutator_examples() {
        let g = chain_group(3, RingSpec::Integers);
        let c = g
            .generator("1", "2", &z(2))
            .unwrap()
            .commutator(&g.generator("2", "3", &z(3)).unwrap())
            .unwrap();
        assert_eq!(c, g.generator("1", "3", &z(6)).unwrap());

        let g4 = chain_group(4, RingSpec::Integers);
        let c = g4
            .generator("1", "2", &z(2))
            .unwrap()
            .commutator(&g4.generator("3", "4", &z(3)).unwrap())
            .unwrap();
        assert!(c.is_identity());
    }

    #[test]
    fn noncommutative_commutator() {
        let ring = RingSpec::Matrices2x2Mod(2);
        let g = chain_group(3, ring);
        let a = ring.parse_value("[0,1;0,0]").unwrap();
        let b = ring.parse_value("[0,0;1,0]").unwrap();
        let c = g
            .generator("1", "2", &a)
            .unwrap()
            .commutator(&g.generator("2", "3", &b).unwrap())
            .unwrap();
        let ab = ring.parse_value("[1,0;0,0]").unwrap();
        assert_eq!(c, g.generator("1", "3", &ab).unwrap());
        assert_ne!(c, g.generator("1", "3", &b.mul(&a).unwrap()).unwrap());
    }

    #[test]
    fn nilpotency_examples() {
        let g = chain_group(3, RingSpec::Integers);
        assert!(g.identity().support().is_empty());
        assert_eq!(g.identity().nilpotency_index().unwrap(), 1);
        assert_eq!(
            g.generator("1", "2", &z(3))
                .unwrap()
                .nilpotency_index()
                .unwrap(),
            2
        );
        let h = g
            .element([(pair("1", "2"), z(1)), (pair("2", "3"), z(1))])
            .unwrap();
        assert_eq!(h.nilpotency_index().unwrap(), 3);
    }

    #[test]
    fn group_mismatch() {
        let a = chain_group(3, RingSpec::Integers);
        let b = chain_group(4, RingSpec::Integers);
        assert_eq!(
            a.identity().multiply(&b.identity()).unwrap_err(),
            Error::GroupMismatch
        );
        // equal relations built separately are the same group
        let c = chain_group(3, RingSpec::Integers);
        assert!(a.identity().multiply(&c.identity()).is_ok());
    }
}

//! Writing elements as products of generators.
//!
//! Three factorizations are provided:
//!
//! * [`word_factorization`]: some word in the generators evaluating to `g`,
//!   obtained by peeling off the coefficients outside `[Γ,Γ]` and recursing.
//! * [`ordered_factorization`]: for any total order on a finite closed
//!   `Γ ⊇ Γ(g)`, the unique coefficients `a` with `g = Π x_p(a_p)` taken in
//!   increasing order.
//! * [`demonstrate_ngon_obstruction`]: an exhaustive check that on the
//!   `n`-gon relation, `1 + Σ e(i,i+1)` is not an ordered product of edge
//!   generators, even though it has a mixed factorization.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::element::{GroupElement, McLainGroup};
use crate::exec::{self, Execution};
use crate::relation::{ngon, pair, Pair, Relation};
use crate::ring::{RingSpec, RingValue};
use crate::word::{GeneratorWord, WordToken};
use crate::Error;

/// `Γ(g)`: the smallest closed subset whose group contains `g`.
pub fn minimal_closed_support(g: &GroupElement) -> Relation {
    g.group()
        .relation()
        .closure(&g.support())
        .expect("support lies in the ambient relation")
}

/// A word `w` with `eval_word(w) = g`.
///
/// With `Γ = Γ(g)`, every coefficient of `g` outside `[Γ,Γ]` is removed by
/// left-multiplying with `x_p(−r_p)`; what remains lies in `G([Γ,Γ])` and is
/// handled the same way. The emitted generators read left to right.
pub fn word_factorization(g: &GroupElement) -> Result<GeneratorWord, Error> {
    let group = g.group();
    let rel = group.relation();
    let mut word = GeneratorWord::new();
    let mut residual = g.clone();
    let mut gamma = minimal_closed_support(g);
    let limit = gamma.len() + 1;
    for _ in 0..=limit {
        if residual.is_identity() {
            return Ok(word);
        }
        let inner = rel.bracket(&gamma, &gamma)?;
        let peel: Vec<(Pair, RingValue)> = residual
            .coefficients()
            .iter()
            .filter(|(p, _)| !inner.contains_pair(p))
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        if peel.is_empty() {
            return Err(Error::Internal(format!(
                "support of {residual} lies inside [Γ,Γ]"
            )));
        }
        // g = x(r1)…x(rm)·h  ⇔  h = x(−rm)…x(−r1)·g
        let mut left = group.identity();
        for (p, r) in peel.iter().rev() {
            left = left.multiply(&group.generator_at(p.clone(), &r.neg())?)?;
        }
        residual = left.multiply(&residual)?;
        if !residual.support().is_subset_of(&inner) {
            return Err(Error::Internal(format!(
                "peeling left {residual} outside [Γ,Γ]"
            )));
        }
        for (p, r) in peel {
            word.push(WordToken::Gen { pair: p, coeff: r });
        }
        gamma = rel.closure(&residual.support())?;
    }
    Err(Error::Internal(
        "word factorization did not terminate".into(),
    ))
}

/// Coefficients of a product of generators in a fixed order. Zero
/// coefficients are kept so that the form is a total function on the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedForm {
    order: Vec<Pair>,
    coefficients: Vec<RingValue>,
}

impl OrderedForm {
    pub fn new(order: Vec<Pair>, coefficients: Vec<RingValue>) -> Self {
        assert_eq!(order.len(), coefficients.len());
        OrderedForm {
            order,
            coefficients,
        }
    }

    pub fn order(&self) -> &[Pair] {
        &self.order
    }

    pub fn coefficients(&self) -> &[RingValue] {
        &self.coefficients
    }

    pub fn coefficient(&self, p: &Pair) -> Option<&RingValue> {
        self.order
            .iter()
            .position(|q| q == p)
            .map(|k| &self.coefficients[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Pair, &RingValue)> + '_ {
        self.order.iter().zip(&self.coefficients)
    }

    /// `Π x_p(a_p)` in increasing order.
    pub fn product(&self, group: &McLainGroup) -> Result<GroupElement, Error> {
        group.ordered_product(self.iter())
    }
}

/// One `(i,j) ; coefficient` line per pair, in order.
impl fmt::Display for OrderedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in self.iter() {
            writeln!(f, "{p} ; {c}")?;
        }
        Ok(())
    }
}

/// Pairs of a closed `Γ` listed level by level along its `γ` series
/// (`γ₁∖γ₂` first), lexicographically within a level.
pub fn filtration_order(rel: &Relation, domain: &Relation) -> Result<Vec<Pair>, Error> {
    let series = rel.gamma_series(domain)?;
    Ok(series
        .terms()
        .windows(2)
        .flat_map(|w| w[0].minus(&w[1]).pairs().cloned().collect::<Vec<_>>())
        .collect())
}

/// The unique coefficients with `g = Π x_p(a_p)` in the order given.
///
/// `order` must list each pair of a closed `Γ ⊇ support(g)` exactly once.
/// The solver sweeps the levels of the `γ` series of `Γ`: at level `k` the
/// residual `product(a)⁻¹·g` lies in `G(γ_k)`, and adding its level-`k`
/// coefficients to `a` pushes it into `G(γ_{k+1})`, because level-`k`
/// generators are central modulo `γ_{k+1}`.
pub fn ordered_factorization(g: &GroupElement, order: &[Pair]) -> Result<OrderedForm, Error> {
    let group = g.group();
    let rel = group.relation();
    let domain = rel.restrict(order.iter().cloned());
    if domain.len() != order.len() {
        return Err(Error::BadOrder("a pair is listed more than once".into()));
    }
    if !rel.is_closed(&domain)? {
        return Err(Error::BadOrder(
            "the ordered pairs do not form a closed subset".into(),
        ));
    }
    if let Some(p) = g.coefficients().keys().find(|p| !domain.contains_pair(p)) {
        return Err(Error::BadOrder(format!(
            "support pair {p} is missing from the order"
        )));
    }

    let series = rel.gamma_series(&domain)?;
    let mut coeffs: BTreeMap<&Pair, RingValue> =
        order.iter().map(|p| (p, group.ring().zero())).collect();
    let product = |coeffs: &BTreeMap<&Pair, RingValue>| {
        group.ordered_product(order.iter().map(|p| (p, &coeffs[p])))
    };
    for level in series.terms().windows(2) {
        let residual = product(&coeffs)?.inverse()?.multiply(g)?;
        if !residual.support().is_subset_of(&level[0]) {
            return Err(Error::Internal(format!(
                "residual {residual} escaped its level"
            )));
        }
        for p in level[0].minus(&level[1]).pairs() {
            let slot = coeffs.get_mut(p).expect("level pairs are in the domain");
            *slot = slot.add(&residual.coefficient(p))?;
        }
    }
    let residual = product(&coeffs)?.inverse()?.multiply(g)?;
    if !residual.is_identity() {
        return Err(Error::Internal(format!(
            "nonzero final residual {residual}"
        )));
    }
    let coefficients = order.iter().map(|p| coeffs[p].clone()).collect();
    Ok(OrderedForm::new(order.to_vec(), coefficients))
}

/// Experimental: if every step finds a pair `(i,j)` of the current support
/// with no `(j,k)` in the support and `(i,k) ∈ Δ`, peeling it on the left
/// writes `g` as a product of its own raw coefficients. Returns `None` when
/// some support has no such pair.
pub fn greedy_maximal_factorization(
    g: &GroupElement,
) -> Result<Option<Vec<(Pair, RingValue)>>, Error> {
    let group = g.group();
    let rel = group.relation();
    let mut residual = g.clone();
    let mut out = Vec::new();
    while !residual.is_identity() {
        let support = residual.support();
        let Some(p) = support
            .pairs()
            .find(|p| !support.successors(&p.dst).any(|k| rel.contains(&p.src, k)))
            .cloned()
        else {
            return Ok(None);
        };
        let r = residual.coefficient(&p);
        residual = group
            .generator_at(p.clone(), &r.neg())?
            .multiply(&residual)?;
        out.push((p, r));
    }
    Ok(Some(out))
}

/// Outcome of [`demonstrate_ngon_obstruction`].
#[derive(Debug, Clone)]
pub struct NgonObstruction {
    pub n: usize,
    pub ring: RingSpec,
    /// `1 + Σ e(i,i+1)`.
    pub target: GroupElement,
    pub orderings_checked: usize,
    pub orderings_succeeding: usize,
    /// In every ordering, the edge coefficients of the product equal the
    /// edge generator coefficients, so matching the target forces `aᵢ = 1`.
    pub edge_coefficients_forced: bool,
    /// Every failing product with `aᵢ = 1` has a nonzero diagonal term.
    pub diagonal_in_every_failure: bool,
    pub mixed_word: GeneratorWord,
    pub mixed_word_verified: bool,
}

impl NgonObstruction {
    pub fn confirmed(&self) -> bool {
        self.orderings_succeeding == 0
            && self.edge_coefficients_forced
            && self.diagonal_in_every_failure
            && self.mixed_word_verified
    }
}

impl fmt::Display for NgonObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} orderings checked, {} succeed",
            self.orderings_checked, self.orderings_succeeding
        )?;
        writeln!(f, "ring: {}", self.ring)?;
        writeln!(f, "target: {}", self.target)?;
        writeln!(
            f,
            "edge coefficients forced: {}",
            self.edge_coefficients_forced
        )?;
        writeln!(
            f,
            "diagonal term in every failure: {}",
            self.diagonal_in_every_failure
        )?;
        writeln!(f, "mixed factorization: {}", self.mixed_word)?;
        writeln!(
            f,
            "mixed factorization verified: {}",
            self.mixed_word_verified
        )
    }
}

pub const NGON_DEMO_RANGE: std::ops::RangeInclusive<usize> = 4..=6;

/// Enumerates all `n!` orderings of the edge generators `x_{i,i+1}` of the
/// `n`-gon relation and checks that none multiplies to `1 + Σ e(i,i+1)`.
pub fn demonstrate_ngon_obstruction(
    n: usize,
    ring: RingSpec,
    exec: Execution,
) -> Result<NgonObstruction, Error> {
    if !NGON_DEMO_RANGE.contains(&n) {
        return Err(Error::BadArgument(format!(
            "n must be in {}..={}, got {n}",
            NGON_DEMO_RANGE.start(),
            NGON_DEMO_RANGE.end()
        )));
    }
    let group = McLainGroup::new(ngon(n)?, ring)?;
    let edges: Vec<Pair> = (0..n).map(|i| pair(i, (i + 1) % n)).collect();
    let diagonals: Vec<Pair> = (0..n).map(|i| pair(i, (i + 2) % n)).collect();
    let one = ring.one();
    let target = group.element(edges.iter().map(|p| (p.clone(), one.clone())))?;
    let probe: Vec<RingValue> = (0..n).map(|i| ring.from_i64(i as i64 + 2)).collect();

    let orderings: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let outcomes = exec::try_map(
        exec,
        &orderings,
        |perm| -> Result<(bool, bool, bool), Error> {
            let ones = group.ordered_product(perm.iter().map(|&i| (&edges[i], &one)))?;
            let probed = group.ordered_product(perm.iter().map(|&i| (&edges[i], &probe[i])))?;
            let forced = edges
                .iter()
                .zip(&probe)
                .all(|(p, a)| probed.coefficient(p) == *a);
            let succeeded = ones == target;
            let has_diagonal = diagonals.iter().any(|p| !ones.coefficient(p).is_zero());
            Ok((succeeded, forced, has_diagonal))
        },
    )?;

    let orderings_succeeding = outcomes.iter().filter(|o| o.0).count();
    let edge_coefficients_forced = outcomes.iter().all(|o| o.1);
    let diagonal_in_every_failure = outcomes.iter().all(|o| o.0 || o.2);
    let mixed_word = word_factorization(&target)?;
    let mixed_word_verified = group.eval_word(&mixed_word)? == target;

    Ok(NgonObstruction {
        n,
        ring,
        target,
        orderings_checked: orderings.len(),
        orderings_succeeding,
        edge_coefficients_forced,
        diagonal_in_every_failure,
        mixed_word,
        mixed_word_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::chain;

    fn z(v: i64) -> RingValue {
        RingSpec::Integers.from_i64(v)
    }

    fn c3() -> McLainGroup {
        McLainGroup::new(chain(3).unwrap(), RingSpec::Integers).unwrap()
    }

    #[test]
    fn minimal_support_examples() {
        let g = c3();
        assert!(minimal_closed_support(&g.identity()).is_empty());
        let x = g
            .generator("1", "2", &z(1))
            .unwrap()
            .multiply(&g.generator("2", "3", &z(1)).unwrap())
            .unwrap();
        assert_eq!(minimal_closed_support(&x).len(), 3);
        let x13 = g.generator("1", "3", &z(1)).unwrap();
        assert_eq!(
            minimal_closed_support(&x13)
                .pairs()
                .cloned()
                .collect::<Vec<_>>(),
            vec![pair("1", "3")]
        );
    }

    #[test]
    fn word_examples() {
        let g = c3();
        assert!(word_factorization(&g.identity()).unwrap().is_empty());
        let x = g
            .element([
                (pair("1", "2"), z(1)),
                (pair("2", "3"), z(1)),
                (pair("1", "3"), z(1)),
            ])
            .unwrap();
        let w = word_factorization(&x).unwrap();
        assert_eq!(w.to_string(), "x(1,2;1)*x(2,3;1)");
        assert_eq!(g.eval_word(&w).unwrap(), x);
    }

    #[test]
    fn ngon_word_needs_diagonals() {
        let group = McLainGroup::new(ngon(4).unwrap(), RingSpec::IntegersMod(2)).unwrap();
        let one = group.ring().one();
        let g = group
            .element((0..4).map(|i| (pair(i, (i + 1) % 4), one.clone())))
            .unwrap();
        let w = word_factorization(&g).unwrap();
        assert_eq!(group.eval_word(&w).unwrap(), g);
        let diagonals: Vec<Pair> = (0..4).map(|i| pair(i, (i + 2) % 4)).collect();
        let gens = w.as_generators().unwrap();
        assert!(gens
            .iter()
            .any(|(p, c)| diagonals.contains(p) && !c.is_zero()));
    }

    #[test]
    fn ordered_examples() {
        let g = c3();
        let x = g
            .element([(pair("1", "2"), z(1)), (pair("2", "3"), z(1))])
            .unwrap();
        let order = vec![pair("1", "2"), pair("2", "3"), pair("1", "3")];
        let form = ordered_factorization(&x, &order).unwrap();
        assert_eq!(form.coefficients(), &[z(1), z(1), z(-1)]);
        assert_eq!(form.product(&g).unwrap(), x);
        assert_eq!(form.to_string(), "(1,2) ; 1\n(2,3) ; 1\n(1,3) ; -1\n");

        let order = vec![pair("2", "3"), pair("1", "2"), pair("1", "3")];
        let form = ordered_factorization(&x, &order).unwrap();
        assert_eq!(form.coefficients(), &[z(1), z(1), z(0)]);

        let form = ordered_factorization(&g.identity(), &order).unwrap();
        assert!(form.coefficients().iter().all(RingValue::is_zero));
    }

    #[test]
    fn ordered_rejects_bad_orders() {
        let g = c3();
        let x = g
            .element([(pair("1", "2"), z(1)), (pair("2", "3"), z(1))])
            .unwrap();
        let dup = vec![pair("1", "2"), pair("1", "2")];
        assert!(matches!(
            ordered_factorization(&x, &dup),
            Err(Error::BadOrder(_))
        ));
        let open = vec![pair("1", "2"), pair("2", "3")];
        assert!(matches!(
            ordered_factorization(&x, &open),
            Err(Error::BadOrder(_))
        ));
        let short = vec![pair("1", "3")];
        assert!(matches!(
            ordered_factorization(&x, &short),
            Err(Error::BadOrder(_))
        ));
        let foreign = vec![pair("3", "1")];
        assert!(matches!(
            ordered_factorization(&x, &foreign),
            Err(Error::Relation(_))
        ));
    }

    #[test]
    fn greedy_on_chain_and_ngon() {
        let g = c3();
        let x = g
            .element([(pair("1", "2"), z(2)), (pair("2", "3"), z(3))])
            .unwrap();
        let factors = greedy_maximal_factorization(&x).unwrap().unwrap();
        let prod = g
            .ordered_product(factors.iter().map(|(p, c)| (p, c)))
            .unwrap();
        assert_eq!(prod, x);

        let d = McLainGroup::new(ngon(4).unwrap(), RingSpec::Integers).unwrap();
        let t = d
            .element((0..4).map(|i| (pair(i, (i + 1) % 4), z(1))))
            .unwrap();
        assert!(greedy_maximal_factorization(&t).unwrap().is_none());
    }

    #[test]
    fn ngon_demo_small() {
        let r = demonstrate_ngon_obstruction(4, RingSpec::IntegersMod(2), Execution::Sequential)
            .unwrap();
        assert_eq!(r.orderings_checked, 24);
        assert_eq!(r.orderings_succeeding, 0);
        assert!(r.confirmed());
        assert!(r
            .to_string()
            .starts_with("24 orderings checked, 0 succeed\n"));
        assert!(
            demonstrate_ngon_obstruction(3, RingSpec::Integers, Execution::Sequential).is_err()
        );
        assert!(
            demonstrate_ngon_obstruction(7, RingSpec::Integers, Execution::Sequential).is_err()
        );
    }
}

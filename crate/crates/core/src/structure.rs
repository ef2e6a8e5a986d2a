//! Central series, the center, and quotients by normal subsets.
//!
//! Series are computed on pair sets: the `k`-th term of the lower central
//! series of `G(Δ)` is `G(γ_k(Δ))`, and the center is `G(Γ₁)` where `Γ₁` is
//! the set of isolated pairs, so a chain of subsets of `Δ` describes the
//! corresponding chain of subgroups exactly.

use std::fmt;

use crate::element::{GroupElement, McLainGroup};
use crate::factorization::{filtration_order, ordered_factorization};
use crate::relation::Relation;
use crate::ring::RingSpec;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    Descending,
    Ascending,
}

/// A monotone sequence of subsets of `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetChain {
    direction: ChainDirection,
    terms: Vec<Relation>,
}

impl SubsetChain {
    pub fn new(direction: ChainDirection, terms: Vec<Relation>) -> Self {
        debug_assert!(terms.windows(2).all(|w| match direction {
            ChainDirection::Descending => w[1].is_subset_of(&w[0]),
            ChainDirection::Ascending => w[0].is_subset_of(&w[1]),
        }));
        SubsetChain { direction, terms }
    }

    pub fn direction(&self) -> ChainDirection {
        self.direction
    }

    pub fn terms(&self) -> &[Relation] {
        &self.terms
    }

    /// Number of proper steps, i.e. `terms.len() - 1`.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn last(&self) -> &Relation {
        self.terms.last().expect("chains are never empty")
    }
}

/// `γ_k ∖ γ_{k+1}` and its size; the factor `γ_k(G)/γ_{k+1}(G)` is a
/// direct sum of `rank` copies of the additive group of the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub level: usize,
    pub support: Relation,
    pub rank: usize,
    pub ring: RingSpec,
}

#[derive(Debug, Clone)]
pub struct LowerSeries {
    pub chain: SubsetChain,
    pub factors: Vec<FactorReport>,
}

impl LowerSeries {
    /// Nilpotency class: the number of nonempty terms.
    pub fn class(&self) -> usize {
        self.factors.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.rank).collect()
    }
}

impl fmt::Display for LowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.chain.terms();
        for (k, term) in terms.iter().enumerate() {
            let rank = terms
                .get(k + 1)
                .map_or(term.len(), |next| term.len() - next.len());
            writeln!(f, "gamma {}: {} rank {}", k + 1, term.pair_set(), rank)?;
        }
        writeln!(f, "class {}", self.class())
    }
}

/// Displays an ascending chain as `zeta k: {…}` lines.
pub struct UpperSeriesReport<'a>(pub &'a SubsetChain);

impl fmt::Display for UpperSeriesReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, term) in self.0.terms().iter().enumerate() {
            writeln!(f, "zeta {}: {}", k, term.pair_set())?;
        }
        Ok(())
    }
}

pub fn lower_central_series(group: &McLainGroup) -> Result<LowerSeries, Error> {
    let rel = group.relation();
    let chain = rel.gamma_series(rel)?;
    let factors = chain
        .terms()
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let support = w[0].minus(&w[1]);
            FactorReport {
                level: k + 1,
                rank: support.len(),
                support,
                ring: group.ring(),
            }
        })
        .collect();
    Ok(LowerSeries { chain, factors })
}

/// The pair set carrying the center.
pub fn center_support(group: &McLainGroup) -> Relation {
    group.relation().isolated()
}

/// `ζ₀ = ∅`, `ζ_{k+1} = ζ_k ∪ isolated(Δ ∖ ζ_k)`, stopping when nothing new is
/// added or `ζ_k = Δ`. Each term is checked to be normal in `Δ` before the
/// next quotient is formed.
pub fn upper_central_series(group: &McLainGroup) -> Result<SubsetChain, Error> {
    let rel = group.relation();
    let mut terms = vec![rel.empty_subset()];
    loop {
        let zeta = terms.last().expect("nonempty");
        if zeta.len() == rel.len() {
            break;
        }
        let quotient = rel.difference(zeta)?;
        let center = quotient.isolated();
        if center.is_empty() {
            break;
        }
        let next = zeta.union(&center);
        if !rel.is_normal(&next)? {
            return Err(Error::Internal(format!(
                "upper series term {} is not normal",
                next.pair_set()
            )));
        }
        terms.push(next);
    }
    Ok(SubsetChain::new(
        crate::structure::ChainDirection::Ascending,
        terms,
    ))
}

/// The projection `G(Δ) → G(Δ ∖ Γ)` for a normal subset `Γ`, which deletes
/// the coefficients on `Γ`. It is a homomorphism with kernel `G(Γ)`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: McLainGroup,
    kernel: Relation,
    target: McLainGroup,
}

impl QuotientMap {
    pub fn new(source: &McLainGroup, kernel: &Relation) -> Result<Self, Error> {
        let rel = source.relation();
        let rest = rel.difference(kernel)?;
        let target = McLainGroup::new(rest, source.ring())?;
        Ok(QuotientMap {
            source: source.clone(),
            kernel: rel.restrict(kernel.pairs().cloned()),
            target,
        })
    }

    pub fn source(&self) -> &McLainGroup {
        &self.source
    }

    pub fn target(&self) -> &McLainGroup {
        &self.target
    }

    pub fn kernel(&self) -> &Relation {
        &self.kernel
    }

    pub fn project(&self, g: &GroupElement) -> Result<GroupElement, Error> {
        self.check_source(g)?;
        self.target.element(
            g.coefficients()
                .iter()
                .filter(|(p, _)| !self.kernel.contains_pair(p))
                .map(|(p, c)| (p.clone(), c.clone())),
        )
    }

    pub fn in_kernel(&self, g: &GroupElement) -> bool {
        g.support().is_subset_of(&self.kernel)
    }

    /// The element of `{1 + x : x ∈ R(Δ ∖ Γ)} ⊆ G(Δ)` in the coset `g·G(Γ)`.
    pub fn coset_representative(&self, g: &GroupElement) -> Result<GroupElement, Error> {
        let image = self.project(g)?;
        let rep = self.source.adopt(&image)?;
        self.confirm_same_coset(&rep, g)?;
        Ok(rep)
    }

    /// Another transversal: factor the image in `G(Δ ∖ Γ)` along a
    /// filtration-compatible order and multiply the same factors in `G(Δ)`.
    /// Unlike [`QuotientMap::coset_representative`], the result may have
    /// support in `Γ`.
    pub fn factored_lift(&self, g: &GroupElement) -> Result<GroupElement, Error> {
        let image = self.project(g)?;
        let target_rel = self.target.relation();
        let domain = target_rel.closure(&image.support())?;
        let order = filtration_order(target_rel, &domain)?;
        let form = ordered_factorization(&image, &order)?;
        let rep = self.source.ordered_product(form.iter())?;
        self.confirm_same_coset(&rep, g)?;
        Ok(rep)
    }

    fn confirm_same_coset(&self, rep: &GroupElement, g: &GroupElement) -> Result<(), Error> {
        let diff = rep.inverse()?.multiply(g)?;
        if !self.in_kernel(&diff) {
            return Err(Error::Internal(format!("{rep} is not in the coset of {g}")));
        }
        Ok(())
    }

    fn check_source(&self, g: &GroupElement) -> Result<(), Error> {
        if !g.group().same_as(&self.source) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{chain, ngon, pair};

    fn group(rel: Relation) -> McLainGroup {
        McLainGroup::new(rel, RingSpec::Integers).unwrap()
    }

    fn z(v: i64) -> crate::RingValue {
        RingSpec::Integers.from_i64(v)
    }

    #[test]
    fn lower_series_examples() {
        let s = lower_central_series(&group(chain(4).unwrap())).unwrap();
        assert_eq!(s.ranks(), vec![3, 2, 1]);
        assert_eq!(s.class(), 3);
        let s = lower_central_series(&group(ngon(4).unwrap())).unwrap();
        assert_eq!(s.ranks(), vec![4, 4]);
        let s = lower_central_series(&group(Relation::from_pairs([pair("1", "2")]))).unwrap();
        assert_eq!(s.ranks(), vec![1]);
        assert_eq!(
            s.to_string(),
            "gamma 1: {(1,2)} rank 1\ngamma 2: {} rank 0\nclass 1\n"
        );
    }

    #[test]
    fn center_examples() {
        let c = center_support(&group(chain(3).unwrap()));
        assert_eq!(c.pairs().cloned().collect::<Vec<_>>(), vec![pair("1", "3")]);
        assert_eq!(center_support(&group(ngon(4).unwrap())).len(), 4);
        assert_eq!(
            center_support(&group(Relation::from_pairs([pair("1", "2")]))).len(),
            1
        );
    }

    #[test]
    fn upper_series_examples() {
        let s = upper_central_series(&group(chain(3).unwrap())).unwrap();
        assert_eq!(s.length(), 2);
        assert_eq!(
            s.terms()[1].pairs().cloned().collect::<Vec<_>>(),
            vec![pair("1", "3")]
        );
        assert_eq!(s.last().len(), 3);

        let s = upper_central_series(&group(ngon(4).unwrap())).unwrap();
        assert_eq!(
            s.terms().iter().map(Relation::len).collect::<Vec<_>>(),
            vec![0, 4, 8]
        );

        let s = upper_central_series(&group(Relation::default())).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(UpperSeriesReport(&s).to_string(), "zeta 0: {}\n");
    }

    #[test]
    fn quotient_examples() {
        let g3 = group(chain(3).unwrap());
        let gamma = g3.relation().restrict([pair("1", "3")]);
        let q = QuotientMap::new(&g3, &gamma).unwrap();
        let g = g3
            .element([(pair("1", "2"), z(5)), (pair("1", "3"), z(7))])
            .unwrap();
        assert_eq!(q.project(&g).unwrap().to_string(), "1 + 5*e(1,2)");
        let k = g3.generator("1", "3", &z(9)).unwrap();
        assert!(q.project(&k).unwrap().is_identity());
        assert!(q.coset_representative(&k).unwrap().is_identity());
        let x = g3.generator("1", "2", &z(4)).unwrap();
        assert_eq!(q.coset_representative(&x).unwrap(), x);

        let bad = g3.relation().restrict([pair("1", "2")]);
        assert!(matches!(
            QuotientMap::new(&g3, &bad),
            Err(Error::Relation(_))
        ));
    }

    #[test]
    fn ngon_quotient_agrees_with_cycle_group() {
        let d4 = group(ngon(4).unwrap());
        let diag = d4.relation().restrict((0..4).map(|i| pair(i, (i + 2) % 4)));
        let q = QuotientMap::new(&d4, &diag).unwrap();
        let g = d4
            .generator("0", "1", &z(1))
            .unwrap()
            .multiply(&d4.generator("1", "2", &z(1)).unwrap())
            .unwrap();
        assert_eq!(g.to_string(), "1 + 1*e(0,1) + 1*e(0,2) + 1*e(1,2)");

        let cycle = q.target();
        let in_cycle = cycle
            .generator("0", "1", &z(1))
            .unwrap()
            .multiply(&cycle.generator("1", "2", &z(1)).unwrap())
            .unwrap();
        assert_eq!(q.project(&g).unwrap(), in_cycle);
        assert_eq!(in_cycle.to_string(), "1 + 1*e(0,1) + 1*e(1,2)");

        let rep = q.coset_representative(&g).unwrap();
        assert_eq!(rep.to_string(), "1 + 1*e(0,1) + 1*e(1,2)");
        let lift = q.factored_lift(&g).unwrap();
        assert_eq!(lift, g);
    }
}

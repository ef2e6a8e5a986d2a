//! Exhaustive checks of the defining relations and of the center, run
//! against the arithmetic in [`crate::element`].
//!
//! For generators `x_p(a) = 1 + a·e(p)`:
//!
//! * `[x_{i,j}(a), x_{j,k}(b)] = x_{i,k}(ab)` if `(i,k) ∈ Δ`, else `1`;
//! * `[x_{i,j}(a), x_{k,l}(b)] = 1` if `j ≠ k` and `i ≠ l`;
//! * `x_{i,j}(a)·x_{i,j}(b) = x_{i,j}(a+b)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::McLainGroup;
use crate::exec::{self, Execution};
use crate::relation::{pair, Pair};
use crate::ring::RingValue;
use crate::Error;

/// Counts of checked instances and a description of each failure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckSummary {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: CheckSummary) -> CheckSummary {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

fn sample_rng(seed: u64, sample: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (sample as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Checks all three defining relations for every ordered pair of pairs of
/// `Δ`, once per sample with fresh random coefficients `a`, `b`.
pub fn presentation_relations(
    group: &McLainGroup,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<CheckSummary, Error> {
    let pairs: Vec<Pair> = group.relation().pairs().cloned().collect();
    let indices: Vec<usize> = (0..samples).collect();
    let parts = exec::try_map(exec, &indices, |&s| {
        let mut rng = sample_rng(seed, s);
        let a = group.ring().random(&mut rng, 50);
        let b = group.ring().random(&mut rng, 50);
        relations_for(group, &pairs, &a, &b)
    })?;
    Ok(parts
        .into_iter()
        .fold(CheckSummary::default(), CheckSummary::merge))
}

fn relations_for(
    group: &McLainGroup,
    pairs: &[Pair],
    a: &RingValue,
    b: &RingValue,
) -> Result<CheckSummary, Error> {
    let rel = group.relation();
    let mut out = CheckSummary::default();
    for p in pairs {
        let xa = group.generator_at(p.clone(), a)?;
        for q in pairs {
            let xb = group.generator_at(q.clone(), b)?;
            let expected = if p.dst == q.src {
                if rel.contains(&p.src, &q.dst) {
                    group.generator_at(pair(&p.src, &q.dst), &a.mul(b)?)?
                } else {
                    group.identity()
                }
            } else if p.src != q.dst {
                group.identity()
            } else {
                continue;
            };
            out.checked += 1;
            let got = xa.commutator(&xb)?;
            if got != expected {
                out.failures.push(format!(
                    "[x{p}({a}), x{q}({b})] = {got}, expected {expected}"
                ));
            }
        }
        out.checked += 1;
        let sum = xa.multiply(&group.generator_at(p.clone(), b)?)?;
        let expected = group.generator_at(p.clone(), &a.add(b)?)?;
        if sum != expected {
            out.failures
                .push(format!("x{p}({a})·x{p}({b}) = {sum}, expected {expected}"));
        }
    }
    Ok(out)
}

/// Every generator on an isolated pair commutes with every generator, and
/// every non-isolated `(i,j)` has a witness: `(j,k)` with `(i,k) ∈ Δ`, or
/// `(l,i)` with `(l,j) ∈ Δ`, whose generator does not commute with
/// `x_{i,j}(1)`.
pub fn center_witnesses(group: &McLainGroup, seed: u64) -> Result<CheckSummary, Error> {
    let rel = group.relation();
    let ring = group.ring();
    let isolated = rel.isolated();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckSummary::default();
    for p in rel.pairs() {
        if isolated.contains_pair(p) {
            for q in rel.pairs() {
                let a = ring.random(&mut rng, 50);
                let b = ring.random(&mut rng, 50);
                let c = group
                    .generator_at(p.clone(), &a)?
                    .commutator(&group.generator_at(q.clone(), &b)?)?;
                out.checked += 1;
                if !c.is_identity() {
                    out.failures
                        .push(format!("central x{p}({a}) fails to commute with x{q}({b})"));
                }
            }
            continue;
        }
        let (i, j) = (&p.src, &p.dst);
        let witness = rel
            .successors(j)
            .find(|k| rel.contains(i, k))
            .map(|k| pair(j, k))
            .or_else(|| {
                rel.predecessors(i)
                    .find(|l| rel.contains(l, j))
                    .map(|l| pair(l, i))
            });
        out.checked += 1;
        let Some(w) = witness else {
            out.failures
                .push(format!("no witness for non-isolated {p}"));
            continue;
        };
        let one = ring.one();
        let c = group
            .generator_at(p.clone(), &one)?
            .commutator(&group.generator_at(w.clone(), &one)?)?;
        if c.is_identity() {
            out.failures
                .push(format!("witness {w} commutes with x{p}(1)"));
        }
    }
    Ok(out)
}

/// Commutators of generators from the same level `γ_k ∖ γ_{k+1}` lie in
/// `G(γ_{k+1})`, with `samples` random coefficient draws per pair of pairs.
pub fn abelian_factors(
    group: &McLainGroup,
    samples: usize,
    seed: u64,
) -> Result<CheckSummary, Error> {
    let rel = group.relation();
    let series = rel.gamma_series(rel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckSummary::default();
    for w in series.terms().windows(2) {
        let level = w[0].minus(&w[1]);
        for p in level.pairs() {
            for q in level.pairs() {
                for _ in 0..samples {
                    let a = group.ring().random(&mut rng, 50);
                    let b = group.ring().random(&mut rng, 50);
                    let c = group
                        .generator_at(p.clone(), &a)?
                        .commutator(&group.generator_at(q.clone(), &b)?)?;
                    out.checked += 1;
                    if !c.support().is_subset_of(&w[1]) {
                        out.failures
                            .push(format!("[x{p}({a}), x{q}({b})] = {c} leaves the next term"));
                    }
                }
            }
        }
    }
    Ok(out)
}

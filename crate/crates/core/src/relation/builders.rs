use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{pair, Node, Pair, Relation, RelationError};

/// The strict total order `{(i,j) : 1 ≤ i < j ≤ m}` on `{1, …, m}`.
pub fn chain(m: usize) -> Result<Relation, RelationError> {
    if m < 1 {
        return Err(RelationError::BadArgument("chain needs m >= 1".into()));
    }
    let nodes = (1..=m).map(Node::from);
    let pairs = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| pair(i, j)));
    Ok(Relation::new(nodes, pairs))
}

/// The oriented `n`-gon on `Z/n` with its two-step diagonals:
/// `{(i,i+1)} ∪ {(i,i+2)}`.
pub fn ngon(n: usize) -> Result<Relation, RelationError> {
    if n < 4 {
        return Err(RelationError::BadArgument(format!(
            "ngon needs n >= 4, got {n}"
        )));
    }
    let pairs = (0..n).flat_map(|i| [pair(i, (i + 1) % n), pair(i, (i + 2) % n)]);
    Ok(Relation::new((0..n).map(Node::from), pairs))
}

/// Rejection-samples digraphs on `node_count` nodes (each off-diagonal pair
/// present with probability `density`) until one satisfies the axioms.
/// Returns the relation and the number of rejected samples.
pub fn random_relation(
    seed: u64,
    node_count: usize,
    density: f64,
    max_attempts: usize,
) -> Result<(Relation, usize), RelationError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(RelationError::BadArgument(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..max_attempts {
        let mut pairs = Vec::new();
        for i in 0..node_count {
            for j in 0..node_count {
                if i != j && rng.gen_bool(density) {
                    pairs.push(pair(i, j));
                }
            }
        }
        let rel = Relation::new((0..node_count).map(Node::from), pairs);
        if rel.check_axioms().is_valid() {
            return Ok((rel, attempt));
        }
    }
    Err(RelationError::AttemptsExhausted(max_attempts))
}

/// A random strict partial order with a random normal subset deleted.
///
/// The order is the transitive closure of a random DAG on a shuffled node
/// list; the deleted part is the normal closure of a few random pairs. The
/// result always satisfies the axioms and is usually not transitive.
#[allow(clippy::needless_range_loop)]
pub fn random_perturbed_order(seed: u64, node_count: usize, density: f64) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..node_count).collect();
    order.shuffle(&mut rng);

    let mut reach = vec![vec![false; node_count]; node_count];
    for a in 0..node_count {
        for b in a + 1..node_count {
            if rng.gen_bool(density) {
                reach[a][b] = true;
            }
        }
    }
    // transitive closure along the topological order
    for mid in 0..node_count {
        for a in 0..mid {
            if reach[a][mid] {
                for b in mid + 1..node_count {
                    if reach[mid][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    let pairs = (0..node_count).flat_map(|a| {
        let order = &order;
        let reach = &reach;
        (a + 1..node_count)
            .filter(move |&b| reach[a][b])
            .map(move |b| pair(order[a], order[b]))
    });
    let poset = Relation::new((0..node_count).map(Node::from), pairs.collect::<Vec<_>>());

    let removed = random_normal_subset(&poset, &mut rng, 0.5);
    let out = poset.minus(&removed);
    debug_assert!(out.check_axioms().is_valid());
    out
}

/// The normal closure of a random sample of pairs, each included with
/// probability `rate / |Δ|` (at least one pair when `Δ` is nonempty and
/// `rate > 0`).
pub fn random_normal_subset<R: Rng + ?Sized>(rel: &Relation, rng: &mut R, rate: f64) -> Relation {
    let all: Vec<&Pair> = rel.pairs().collect();
    if all.is_empty() || rate <= 0.0 {
        return rel.empty_subset();
    }
    let p = (rate / all.len() as f64).min(1.0);
    let mut seeds: Vec<Pair> = all
        .iter()
        .filter(|_| rng.gen_bool(p))
        .map(|&q| q.clone())
        .collect();
    if seeds.is_empty() {
        seeds.push(all[rng.gen_range(0..all.len())].clone());
    }
    rel.normal_closure(&rel.restrict(seeds))
        .expect("seeds are drawn from the relation")
}

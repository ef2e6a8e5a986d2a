//! Scenario corpus and independent oracles shared by the integration tests.
#![allow(dead_code)]

use mclain_core::{
    chain, ngon, pair, random_perturbed_order, random_relation, GroupElement, McLainGroup, Pair,
    QuotientMap, Relation, RingSpec, RingValue,
};

pub const RINGS: [RingSpec; 3] = [
    RingSpec::Integers,
    RingSpec::IntegersMod(6),
    RingSpec::Matrices2x2Mod(3),
];

/// Named valid relations: builders plus seeded random ones.
pub fn corpus() -> Vec<(String, Relation)> {
    let mut out: Vec<(String, Relation)> = Vec::new();
    for m in 2..=5 {
        out.push((format!("chain({m})"), chain(m).unwrap()));
    }
    for n in 4..=6 {
        out.push((format!("ngon({n})"), ngon(n).unwrap()));
    }
    out.push((
        "open path".into(),
        Relation::from_pairs([pair("1", "2"), pair("2", "3")]),
    ));
    out.push(("single".into(), Relation::from_pairs([pair("1", "2")])));
    out.push((
        "two-cycle".into(),
        Relation::from_pairs([pair("1", "2"), pair("2", "1")]),
    ));
    out.push((
        "chain(4) minus gamma3".into(),
        chain(4)
            .unwrap()
            .minus(&Relation::from_pairs([pair("1", "4")])),
    ));
    for seed in 0..12 {
        let (rel, _) = random_relation(seed, 5, 0.3, 100_000).unwrap();
        if !rel.is_empty() {
            out.push((format!("random_relation({seed})"), rel));
        }
    }
    for seed in 0..12 {
        let rel = random_perturbed_order(seed, 6, 0.45);
        if !rel.is_empty() {
            out.push((format!("perturbed_order({seed})"), rel));
        }
    }
    for (name, rel) in &out {
        assert!(
            rel.check_axioms().is_valid(),
            "{name} is not a valid relation"
        );
    }
    out
}

pub fn corpus_max_pairs(limit: usize) -> Vec<(String, Relation)> {
    corpus()
        .into_iter()
        .filter(|(_, r)| r.len() <= limit)
        .collect()
}

/// Dense `m×m` unitriangular matrices over `Z/p` on the nodes `1..=m` of
/// `chain(m)`, with naive arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dense {
    pub p: u64,
    pub rows: Vec<Vec<u64>>,
}

#[allow(clippy::needless_range_loop)]
impl Dense {
    pub fn identity(m: usize, p: u64) -> Self {
        let mut rows = vec![vec![0; m]; m];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        Dense { p, rows }
    }

    pub fn from_element(g: &GroupElement, m: usize, p: u64) -> Self {
        let mut d = Dense::identity(m, p);
        for (q, c) in g.coefficients() {
            let i: usize = q.src.as_str().parse().unwrap();
            let j: usize = q.dst.as_str().parse().unwrap();
            d.rows[i - 1][j - 1] = c.to_i64().unwrap() as u64 % p;
        }
        d
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let m = self.rows.len();
        let mut rows = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = 0u64;
                for k in 0..m {
                    acc = (acc + self.rows[i][k] * other.rows[k][j]) % self.p;
                }
                rows[i][j] = acc;
            }
        }
        Dense { p: self.p, rows }
    }

    /// Inverse of a unitriangular matrix by back substitution: solves
    /// `self · X = I` column by column from the bottom row up.
    pub fn inverse(&self) -> Dense {
        let m = self.rows.len();
        let p = self.p;
        let mut inv = vec![vec![0u64; m]; m];
        for col in 0..m {
            for row in (0..m).rev() {
                let mut v = if row == col { 1 } else { 0 };
                for k in row + 1..m {
                    v = (v + p * p - self.rows[row][k] * inv[k][col] % p) % p;
                }
                inv[row][col] = v;
            }
        }
        Dense { p, rows: inv }
    }

    pub fn commutator(&self, other: &Dense) -> Dense {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }
}

/// Ordered coefficients computed by repeated quotients: peel off a central
/// pair `p` (isolated in the current relation), solve in `G(Γ ∖ {p})`, and
/// recover the `p` coefficient from the leftover, which lies in `X_p`.
pub fn recursive_ordered(g: &GroupElement, order: &[Pair]) -> Vec<RingValue> {
    let ring = g.group().ring();
    let group = McLainGroup::new(Relation::from_pairs(order.iter().cloned()), ring).unwrap();
    let g = group.adopt(g).unwrap();
    solve(&group, &g, order)
}

fn solve(group: &McLainGroup, g: &GroupElement, order: &[Pair]) -> Vec<RingValue> {
    if order.is_empty() {
        assert!(g.is_identity());
        return Vec::new();
    }
    let rel = group.relation();
    let central = rel
        .isolated()
        .pairs()
        .next()
        .cloned()
        .expect("nonempty valid relation has isolated pairs");
    let q = QuotientMap::new(group, &rel.restrict([central.clone()])).unwrap();
    let sub_order: Vec<Pair> = order.iter().filter(|p| **p != central).cloned().collect();
    let sub = solve(q.target(), &q.project(g).unwrap(), &sub_order);
    let h = group.ordered_product(sub_order.iter().zip(&sub)).unwrap();
    let rest = h.inverse().unwrap().multiply(g).unwrap();
    assert!(rest.support().pairs().all(|p| *p == central));
    let t = rest.coefficient(&central);
    let mut sub = sub.into_iter();
    order
        .iter()
        .map(|p| {
            if *p == central {
                t.clone()
            } else {
                sub.next().unwrap()
            }
        })
        .collect()
}

/// Enumerates node sequences `i1, …, in` with `3 <= n <= max_len`,
/// `(i1, ik) ∈ Δ` for all `k > 1` and `(ik, ik+1) ∈ Δ`, and checks that all
/// `(ik, ij)`, `k < j`, are in `Δ` and the nodes are distinct. Returns the
/// number of sequences checked and the first counterexample.
pub fn check_distinct_sequences(rel: &Relation, max_len: usize) -> (usize, Option<Vec<String>>) {
    let mut count = 0;
    let mut bad = None;
    let mut stack: Vec<Vec<&mclain_core::Node>> =
        rel.pairs().map(|p| vec![&p.src, &p.dst]).collect();
    while let Some(seq) = stack.pop() {
        if seq.len() >= 3 {
            count += 1;
            let ok = (0..seq.len())
                .all(|k| (k + 1..seq.len()).all(|j| rel.contains(seq[k], seq[j])))
                && (0..seq.len()).all(|k| (k + 1..seq.len()).all(|j| seq[k] != seq[j]));
            if !ok && bad.is_none() {
                bad = Some(seq.iter().map(|n| n.to_string()).collect());
            }
        }
        if seq.len() < max_len {
            let first = seq[0];
            let last = *seq.last().unwrap();
            for next in rel.successors(last) {
                if rel.contains(first, next) {
                    let mut s = seq.clone();
                    s.push(next);
                    stack.push(s);
                }
            }
        }
    }
    (count, bad)
}

//! Matroid-level invariants of a point set: critical number, girth and odd
//! circuits, flats of restrictions, the critical-number-2 classification,
//! and the rich-case hypothesis checker.

use std::collections::HashMap;
use std::time::Instant;

use serde_json::json;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf2::{
    dot, enumerate_subspaces, guard_subspace_count, rref_rows, Mask, RrefGen, Subspace,
};
use crate::io::render_point;
use crate::point_set::PointSet;
use crate::report::{Report, Verdict};
use crate::spectrum::{triangle_count, TriangleMethod};

/// Outcome of an ascending disjoint-flat search capped at some level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiBound {
    Exact(usize),
    AtLeast(usize),
}

/// Searches level `c` of the critical-number ladder: a dual subspace W of
/// dimension c whose orthogonal flat of codimension c misses X, i.e. every
/// point of X has a nonzero syndrome against W's basis. Returns the
/// canonically first such W.
pub fn disjoint_dual_at_level(
    x: &PointSet,
    level: usize,
    budget: &Budget,
) -> Result<Option<Subspace>> {
    let n = x.dim();
    debug_assert!(level <= n);
    if level == 0 {
        // codimension 0: the full space is disjoint from X iff X is empty
        return Ok(if x.is_empty() {
            Some(Subspace::zero(n))
        } else {
            None
        });
    }
    guard_subspace_count(
        n,
        level,
        budget.max_subspaces,
        &format!("critical_number level {level} (gaussian_binomial({n},{level}))"),
    )?;
    let points = x.points();
    let mut gen = RrefGen::new(n, level);
    while gen.advance() {
        let rows = gen.rows();
        if points
            .iter()
            .all(|&p| rows.iter().any(|&w| dot(p, w)))
        {
            return Ok(Some(Subspace::from_rref_unchecked(n, rows.to_vec())));
        }
    }
    Ok(None)
}

/// Ascending search for the critical number, stopping at `cap`.
pub fn critical_number_bounded(x: &PointSet, cap: usize, budget: &Budget) -> Result<ChiBound> {
    let cap = cap.min(x.dim());
    for c in 0..=cap {
        if disjoint_dual_at_level(x, c, budget)?.is_some() {
            return Ok(ChiBound::Exact(c));
        }
    }
    Ok(ChiBound::AtLeast(cap + 1))
}

/// The critical number: the least c such that some codimension-c subspace
/// of the ambient space is disjoint from X. Always at most dim(X).
pub fn critical_number(x: &PointSet, budget: &Budget) -> Result<usize> {
    match critical_number_bounded(x, x.dim(), budget)? {
        ChiBound::Exact(c) => Ok(c),
        // level n always accepts: the zero flat misses every nonzero point
        ChiBound::AtLeast(_) => unreachable!("search is exhaustive up to dim"),
    }
}

/// Whether chi(X) >= c, checking only levels below c.
pub fn chi_at_least(x: &PointSet, c: usize, budget: &Budget) -> Result<bool> {
    if c == 0 {
        return Ok(true);
    }
    Ok(matches!(
        critical_number_bounded(x, c - 1, budget)?,
        ChiBound::AtLeast(_)
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CircuitParity {
    Any,
    Odd,
}

/// Size of the smallest nonempty zero-sum subset of `points` under the
/// parity filter, or None if no such subset exists. The smallest zero-sum
/// subset of a given parity class is automatically a circuit (any proper
/// decomposition would yield a smaller one of the right parity).
fn min_zero_sum(points: &[Mask], parity: CircuitParity, budget: &Budget) -> Result<Option<usize>> {
    let m = points.len();
    if rref_rows(points.iter().copied()).len() == m {
        return Ok(None); // independent: no circuits at all
    }
    if m <= budget.exhaustive_circuit_cap {
        Ok(exhaustive_min_zero_sum(points, parity))
    } else if m <= budget.mitm_circuit_cap {
        Ok(mitm_min_zero_sum(points, parity))
    } else {
        Err(Error::CostCeilingExceeded {
            guard: "circuit search (|X| over meet-in-the-middle cap)".to_string(),
            needed: m.to_string(),
            ceiling: budget.mitm_circuit_cap as u64,
        })
    }
}

fn exhaustive_min_zero_sum(points: &[Mask], parity: CircuitParity) -> Option<usize> {
    fn exists(points: &[Mask], start: usize, remaining: usize, acc: Mask) -> bool {
        if remaining == 0 {
            return acc == 0;
        }
        if points.len() - start < remaining {
            return false;
        }
        for i in start..=points.len() - remaining {
            if exists(points, i + 1, remaining - 1, acc ^ points[i]) {
                return true;
            }
        }
        false
    }
    let m = points.len();
    for k in 3..=m {
        if parity == CircuitParity::Odd && k % 2 == 0 {
            continue;
        }
        if exists(points, 0, k, 0) {
            return Some(k);
        }
    }
    None
}

/// Meet-in-the-middle: all subset XORs of each half, matched by value.
fn mitm_min_zero_sum(points: &[Mask], parity: CircuitParity) -> Option<usize> {
    let (a, b) = points.split_at(points.len() / 2);
    let subset_xors = |half: &[Mask]| -> Vec<Mask> {
        let mut xs = vec![0 as Mask; 1 << half.len()];
        for s in 1..xs.len() {
            xs[s] = xs[s & (s - 1)] ^ half[s.trailing_zeros() as usize];
        }
        xs
    };
    let xb = subset_xors(b);
    // min cardinality per XOR value over nonempty subsets of b, split by parity
    let mut best_b: HashMap<Mask, [u32; 2]> = HashMap::new();
    for (s, &x) in xb.iter().enumerate().skip(1) {
        let card = (s as u32).count_ones();
        let entry = best_b.entry(x).or_insert([u32::MAX; 2]);
        let slot = (card & 1) as usize;
        if card < entry[slot] {
            entry[slot] = card;
        }
    }
    let xa = subset_xors(a);
    let accept = |total: u32| match parity {
        CircuitParity::Any => true,
        CircuitParity::Odd => total % 2 == 1,
    };
    let mut best: Option<u32> = None;
    let mut update = |candidate: u32, best: &mut Option<u32>| {
        if best.map_or(true, |b| candidate < b) {
            *best = Some(candidate);
        }
    };
    for (s, &x) in xa.iter().enumerate() {
        let ca = (s as u32).count_ones();
        if x == 0 && s != 0 && accept(ca) {
            update(ca, &mut best);
        }
        if let Some(e) = best_b.get(&x) {
            for &cb in e {
                if cb != u32::MAX && accept(ca + cb) {
                    update(ca + cb, &mut best);
                }
            }
        }
    }
    best.map(|v| v as usize)
}

/// Girth: the size of the smallest circuit of M(X) (the smallest nonempty
/// zero-sum subset), or None when X is independent. Equals the minimum
/// distance of the binary code whose parity-check columns are the points.
pub fn girth(x: &PointSet, budget: &Budget) -> Result<Option<usize>> {
    min_zero_sum(x.points(), CircuitParity::Any, budget)
}

/// Size of the smallest odd circuit, or None if every circuit is even.
pub fn min_odd_circuit(x: &PointSet, budget: &Budget) -> Result<Option<usize>> {
    min_zero_sum(x.points(), CircuitParity::Odd, budget)
}

/// True iff M(X) has no U_{2,3}-restriction, i.e. triangle_count(X) = 0.
pub fn is_triangle_free(x: &PointSet) -> bool {
    // pairwise scan beats the transform when the table would dwarf |X|^2
    let method = if (x.len() as u64).saturating_pow(2) <= (x.dim() as u64 + 1) << x.dim() {
        TriangleMethod::BruteForce
    } else {
        TriangleMethod::Spectral
    };
    triangle_count(x, method) == 0
}

/// A k-codimensional subspace of M(X): the points lying in a
/// codimension-k flat of the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatRestriction {
    pub flat: Subspace,
    pub members: PointSet,
}

/// Yields F ∩ X for every codimension-k subspace F of the ambient space,
/// in canonical flat order.
pub fn codim_flats<'a>(
    x: &'a PointSet,
    k: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = FlatRestriction> + 'a> {
    let n = x.dim();
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "codimension {k} exceeds ambient dimension {n}"
        )));
    }
    let flats = enumerate_subspaces(n, n - k, budget)?;
    Ok(flats.map(move |flat| {
        let members = x.restrict_to(&flat).expect("same ambient");
        FlatRestriction { flat, members }
    }))
}

/// True iff the subset (of points of X) is linearly independent.
pub fn is_independent(x: &PointSet, subset: &[Mask]) -> Result<bool> {
    let mut sorted: Vec<Mask> = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || !sorted.iter().all(|&p| x.contains(p)) {
        return Err(Error::SubsetNotContained);
    }
    Ok(rref_rows(sorted.iter().copied()).len() == sorted.len())
}

/// Solves `sum(D) = t` for the unique D inside an independent set, by
/// elimination with subset bookkeeping.
struct SubsetSolver {
    by_pivot: [(Mask, u32); 32],
}

impl SubsetSolver {
    /// `members` must be independent.
    fn new(members: &[Mask]) -> SubsetSolver {
        let mut by_pivot = [(0 as Mask, 0u32); 32];
        for (j, &p) in members.iter().enumerate() {
            let mut v = p;
            let mut combo = 1u32 << j;
            loop {
                debug_assert!(v != 0, "members must be independent");
                let piv = v.trailing_zeros() as usize;
                if by_pivot[piv].0 == 0 {
                    by_pivot[piv] = (v, combo);
                    break;
                }
                v ^= by_pivot[piv].0;
                combo ^= by_pivot[piv].1;
            }
        }
        SubsetSolver { by_pivot }
    }

    /// Cardinality of the unique subset summing to `t`, if one exists.
    fn solve_card(&self, t: Mask) -> Option<u32> {
        let mut v = t;
        let mut combo = 0u32;
        while v != 0 {
            let piv = v.trailing_zeros() as usize;
            let (vec, cmb) = self.by_pivot[piv];
            if vec == 0 {
                return None;
            }
            v ^= vec;
            combo ^= cmb;
        }
        Some(combo.count_ones())
    }
}

/// Every odd circuit of M(X) has at least four elements outside S.
///
/// Equivalent check: no odd zero-sum subset has <= 3 elements outside S.
/// Because S is independent, a zero-sum set Z with T = Z \ S determines
/// Z ∩ S uniquely as the subset of S summing to sum(T), so it suffices to
/// scan the (<= 3)-subsets T of X \ S.
fn odd_circuits_avoid(x: &PointSet, s_members: &[Mask]) -> bool {
    let solver = SubsetSolver::new(s_members);
    let outside: Vec<Mask> = x
        .iter()
        .filter(|p| s_members.binary_search(p).is_err())
        .collect();
    let m = outside.len();
    let mut check = |t_size: u32, t_xor: Mask| -> bool {
        match solver.solve_card(t_xor) {
            Some(d_card) => (t_size + d_card) % 2 == 0,
            None => true,
        }
    };
    for i in 0..m {
        if !check(1, outside[i]) {
            return false;
        }
        for j in i + 1..m {
            if !check(2, outside[i] ^ outside[j]) {
                return false;
            }
            for k in j + 1..m {
                if !check(3, outside[i] ^ outside[j] ^ outside[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// The three classes partitioning critical-number-2 matroids, with the
/// witnessing hyperplane flat where one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Crit2Class {
    /// Some hyperplane-flat restriction S is independent and every odd
    /// circuit has at least four elements outside S.
    N0 { witness: Subspace },
    /// Some hyperplane-flat restriction is independent, but none satisfies
    /// the odd-circuit condition.
    NQuarter { witness: Subspace },
    /// No hyperplane-flat restriction is independent.
    NHalf,
}

impl Crit2Class {
    pub fn name(&self) -> &'static str {
        match self {
            Crit2Class::N0 { .. } => "N0",
            Crit2Class::NQuarter { .. } => "N1/4",
            Crit2Class::NHalf => "N1/2",
        }
    }
}

/// Classifies a critical-number-2 point set into N0 / N1/4 / N1/2.
/// Witnesses are the canonically first qualifying flats.
pub fn classify_crit2(x: &PointSet, budget: &Budget) -> Result<Crit2Class> {
    let chi = critical_number(x, budget)?;
    if chi != 2 {
        return Err(Error::NotCriticalTwo { chi });
    }
    let n = x.dim();
    let mut first_independent: Option<Subspace> = None;
    for flat in enumerate_subspaces(n, n - 1, budget)? {
        let members: Vec<Mask> = x.iter().filter(|&p| flat.contains(p)).collect();
        if rref_rows(members.iter().copied()).len() != members.len() {
            continue;
        }
        if odd_circuits_avoid(x, &members) {
            return Ok(Crit2Class::N0 { witness: flat });
        }
        if first_independent.is_none() {
            first_independent = Some(flat);
        }
    }
    Ok(match first_independent {
        Some(witness) => Crit2Class::NQuarter { witness },
        None => Crit2Class::NHalf,
    })
}

/// Visits every independent subset of `points` with exactly `size`
/// elements, in lexicographic position order. The visitor returns false to
/// stop early. `examined` counts extension steps against the budget.
fn visit_independent_subsets(
    points: &[Mask],
    size: usize,
    budget: &Budget,
    f: &mut impl FnMut(&[Mask]) -> Result<bool>,
) -> Result<bool> {
    fn rec(
        points: &[Mask],
        start: usize,
        chosen: &mut Vec<Mask>,
        size: usize,
        examined: &mut u64,
        budget: &Budget,
        f: &mut impl FnMut(&[Mask]) -> Result<bool>,
    ) -> Result<bool> {
        if chosen.len() == size {
            return f(chosen);
        }
        let needed = size - chosen.len();
        if points.len() - start < needed {
            return Ok(true);
        }
        for i in start..=points.len() - needed {
            *examined += 1;
            if *examined > budget.max_independent_sets {
                return Err(Error::CostCeilingExceeded {
                    guard: "independent-set sweep".to_string(),
                    needed: format!("more than {}", budget.max_independent_sets),
                    ceiling: budget.max_independent_sets,
                });
            }
            chosen.push(points[i]);
            if rref_rows(chosen.iter().copied()).len() == chosen.len() {
                if !rec(points, i + 1, chosen, size, examined, budget, f)? {
                    chosen.pop();
                    return Ok(false);
                }
            }
            chosen.pop();
        }
        Ok(true)
    }
    let mut examined = 0u64;
    rec(points, 0, &mut Vec::new(), size, &mut examined, budget, f)
}

/// Checks the rich-case hypothesis: with c = chi(X) and r = r(M(X)),
/// every independent subset I of cardinality r - c + 1 satisfies
/// chi(X \ I) = c. Reports the first counterexample as witness.
pub fn richcase_check(x: &PointSet, budget: &Budget) -> Result<Report> {
    let started = Instant::now();
    let chi = critical_number(x, budget)?;
    let r = x.rank();
    let mut checked = 0u64;
    let mut counterexample: Option<(Vec<Mask>, usize)> = None;
    // c = 0 only for the empty set, where target = r + 1 = 1 has no subsets
    let target = r + 1 - chi;
    visit_independent_subsets(x.points(), target, budget, &mut |subset| {
        checked += 1;
        let chi_without = critical_number(&x.without(subset), budget)?;
        if chi_without != chi {
            counterexample = Some((subset.to_vec(), chi_without));
            return Ok(false);
        }
        Ok(true)
    })?;
    let pass = counterexample.is_none();
    Ok(Report {
        check: "richcase".into(),
        params: json!({
            "dim": x.dim(),
            "points": x.len(),
            "chi": chi,
            "rank": r,
            "subset_size": target,
        }),
        seed: None,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witness: counterexample.map(|(subset, chi_without)| {
            json!({
                "independent_set": subset
                    .iter()
                    .map(|&p| render_point(p, x.dim()))
                    .collect::<Vec<_>>(),
                "chi_without": chi_without,
            })
        }),
        details: json!({ "independent_sets_checked": checked }),
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

/// The simple cycle matroid of a graph: point e_u + e_v per edge, over
/// dimension nvertices. Parallel edges merge; loops are rejected.
pub fn cycle_matroid(nvertices: usize, edges: &[(usize, usize)]) -> Result<PointSet> {
    let mut points = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u == v {
            return Err(Error::LoopEdge { vertex: u });
        }
        if u >= nvertices || v >= nvertices {
            return Err(Error::InvalidParameter(format!(
                "edge ({u},{v}) exceeds vertex count {nvertices}"
            )));
        }
        points.push((1 << u) | (1 << v));
    }
    PointSet::new(nvertices, points)
}

//! Walsh-Hadamard character sums over GF(2)^n, all in exact integers:
//! uniformity defect, triangle counting, and zero-sum-triple counting.
//!
//! For a subset X of GF(2)^n the spectrum table holds
//! F_X(u) = sum_{x in X} (-1)^{<x,u>}. For nonzero u this equals
//! |H_u ∩ X| - |X \ H_u| where H_u is the hyperplane with normal u, so the
//! uniformity defect max_{u≠0} |F_X(u)| / 2^n is exactly the worst
//! hyperplane discrepancy scaled by |V|.

use std::time::Instant;

use num::{Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gf2::{check_dim, check_vector, low_mask, Mask};
use crate::point_set::PointSet;
use crate::rat::{pow2, rat_int, rat_to_string, Rational};
use crate::report::{Report, Verdict};

/// The character-sum table of a subset of GF(2)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    dim: usize,
    table: Vec<i32>,
}

/// In-place Walsh-Hadamard butterfly; O(n 2^n), exact.
fn wht_in_place(table: &mut [i32]) {
    let n = table.len();
    let mut h = 1;
    while h < n {
        let mut i = 0;
        while i < n {
            for j in i..i + h {
                let a = table[j];
                let b = table[j + h];
                table[j] = a + b;
                table[j + h] = a - b;
            }
            i += h * 2;
        }
        h *= 2;
    }
}

impl Spectrum {
    /// Spectrum of an arbitrary subset of GF(2)^dim; the subset may contain
    /// 0 (coset slices do). Duplicate members are merged.
    pub fn of_subset(dim: usize, members: impl IntoIterator<Item = Mask>) -> Result<Spectrum> {
        check_dim(dim)?;
        let mut table = vec![0i32; 1usize << dim];
        for m in members {
            check_vector(m, dim)?;
            table[m as usize] = 1;
        }
        wht_in_place(&mut table);
        Ok(Spectrum { dim, table })
    }

    pub fn of_point_set(x: &PointSet) -> Spectrum {
        Spectrum::of_subset(x.dim(), x.iter()).expect("point set is validated")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// F_X(u).
    pub fn value(&self, u: Mask) -> i32 {
        self.table[u as usize]
    }

    pub fn table(&self) -> &[i32] {
        &self.table
    }

    /// |X| (the value at u = 0).
    pub fn set_size(&self) -> usize {
        self.table[0] as usize
    }

    /// max_{u != 0} |F_X(u)| as an integer (0 when dim = 0).
    pub fn max_nontrivial(&self) -> i64 {
        self.table[1..]
            .iter()
            .map(|&v| (v as i64).abs())
            .max()
            .unwrap_or(0)
    }

    /// Uniformity defect: max_{u != 0} |F_X(u)| / 2^dim. X is eps-uniform
    /// iff the defect is at most eps.
    pub fn uniformity_defect(&self) -> Rational {
        rat_int(self.max_nontrivial()) / pow2(self.dim)
    }
}

/// Uniformity defect of a point set, exact in [0, 1].
pub fn uniformity_defect(x: &PointSet) -> Rational {
    Spectrum::of_point_set(x).uniformity_defect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleMethod {
    /// (1/2^n) sum_u F_X(u)^3, divided by 6.
    Spectral,
    /// Pairwise scan with membership lookups; |X|^2 log |X| cost.
    BruteForce,
}

/// Number of triangles of M(X): unordered 3-subsets {a,b,c} of X with
/// a+b+c = 0. Since 0 is never a point, ordered zero-sum triples over X
/// have pairwise distinct coordinates, so the ordered count is exactly six
/// times the triangle count.
pub fn triangle_count(x: &PointSet, method: TriangleMethod) -> u64 {
    match method {
        TriangleMethod::Spectral => {
            let sp = Spectrum::of_point_set(x);
            let sum: i128 = sp.table().iter().map(|&v| (v as i128).pow(3)).sum();
            let ordered = sum >> x.dim();
            debug_assert_eq!(ordered << x.dim(), sum, "character sum must be divisible");
            debug_assert!(ordered >= 0 && ordered % 6 == 0);
            (ordered / 6) as u64
        }
        TriangleMethod::BruteForce => {
            let pts = x.points();
            let mut count = 0u64;
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    let c = a ^ b;
                    if c > b && x.contains(c) {
                        count += 1;
                    }
                }
            }
            count
        }
    }
}

/// Exact count of ordered triples (a1,a2,a3) in A1 x A2 x A3 with
/// a1 + a2 + a3 = 0, via (1/2^n) sum_u F_{A1} F_{A2} F_{A3}.
pub fn zero_sum_triples(a1: &PointSet, a2: &PointSet, a3: &PointSet) -> Result<u64> {
    let n = common_dim(a1, a2, a3)?;
    let s1 = Spectrum::of_point_set(a1);
    let s2 = Spectrum::of_point_set(a2);
    let s3 = Spectrum::of_point_set(a3);
    let mut sum: i128 = 0;
    for u in 0..(1usize << n) {
        sum += s1.table()[u] as i128 * s2.table()[u] as i128 * s3.table()[u] as i128;
    }
    let count = sum >> n;
    debug_assert_eq!(count << n, sum);
    debug_assert!(count >= 0);
    Ok(count as u64)
}

/// The same count by double loop over A1 x A2 with a membership test in A3.
pub fn zero_sum_triples_brute(a1: &PointSet, a2: &PointSet, a3: &PointSet) -> Result<u64> {
    common_dim(a1, a2, a3)?;
    let mut count = 0u64;
    for a in a1.iter() {
        for b in a2.iter() {
            if a3.contains(a ^ b) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn common_dim(a1: &PointSet, a2: &PointSet, a3: &PointSet) -> Result<usize> {
    if a1.dim() != a2.dim() {
        return Err(Error::DimensionMismatch {
            left: a1.dim(),
            right: a2.dim(),
        });
    }
    if a1.dim() != a3.dim() {
        return Err(Error::DimensionMismatch {
            left: a1.dim(),
            right: a3.dim(),
        });
    }
    Ok(a1.dim())
}

/// Number of unordered pairs {x1, x2} of distinct members of X with
/// x1 + x2 = v. Zero for v = 0 by the distinctness convention.
pub fn pair_completions(x: &PointSet, v: Mask) -> Result<u64> {
    check_vector(v, x.dim())?;
    let mut count = 0u64;
    for a in x.iter() {
        let b = a ^ v;
        if b > a && x.contains(b) {
            count += 1;
        }
    }
    Ok(count)
}

/// Checks the zero-sum counting bound: when A1 and A2 are eps-uniform,
/// the ordered zero-sum triple count is at least (a1*a2*a3 - eps) 2^{2n}.
/// Hypothesis failures are reported, not thrown.
pub fn check_sumlemma(
    a1: &PointSet,
    a2: &PointSet,
    a3: &PointSet,
    eps: &Rational,
) -> Result<Report> {
    let started = Instant::now();
    let n = common_dim(a1, a2, a3)?;
    if !(eps > &rat_int(0) && eps < &crate::rat::rat(1, 2)) {
        return Err(Error::InvalidParameter(format!(
            "eps must satisfy 0 < eps < 1/2, got {}",
            rat_to_string(eps)
        )));
    }
    let alphas: Vec<Rational> = [a1, a2, a3]
        .iter()
        .map(|a| rat_int(a.len() as i64) / pow2(n))
        .collect();
    let d1 = uniformity_defect(a1);
    let d2 = uniformity_defect(a2);
    let params = json!({
        "n": n,
        "eps": rat_to_string(eps),
        "sizes": [a1.len(), a2.len(), a3.len()],
    });
    let mut details = json!({
        "alphas": alphas.iter().map(rat_to_string).collect::<Vec<_>>(),
        "defect_a1": rat_to_string(&d1),
        "defect_a2": rat_to_string(&d2),
    });

    if &d1 > eps || &d2 > eps {
        let which = if &d1 > eps { "A1" } else { "A2" };
        return Ok(Report {
            check: "sumlemma".into(),
            params,
            seed: None,
            verdict: Verdict::HypothesisNotMet,
            witness: Some(json!({
                "set": which,
                "defect": rat_to_string(if &d1 > eps { &d1 } else { &d2 }),
            })),
            details,
            wall_ms: started.elapsed().as_millis() as u64,
        });
    }

    let count = zero_sum_triples(a1, a2, a3)?;
    let bound = (alphas.iter().product::<Rational>() - eps) * pow2(2 * n);
    let pass = rat_int(count as i64) >= bound;
    details["count"] = json!(count);
    details["bound"] = json!(rat_to_string(&bound));
    Ok(Report {
        check: "sumlemma".into(),
        params,
        seed: None,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        witness: if pass {
            None
        } else {
            Some(json!({
                "count": count,
                "bound": rat_to_string(&bound),
            }))
        },
        details,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

/// Check that a subset's defect is at most eps (shared hypothesis test).
pub fn is_uniform(x: &PointSet, eps: &Rational) -> bool {
    &uniformity_defect(x) <= eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn full_set(n: usize) -> PointSet {
        PointSet::full(n).unwrap()
    }

    fn affine_slice(n: usize) -> PointSet {
        PointSet::new(n, (0..(1u32 << n)).filter(|m| m & 1 == 1)).unwrap()
    }

    #[test]
    fn spectrum_examples() {
        // X = {0} as a subset: table identically 1
        let s = Spectrum::of_subset(3, vec![0]).unwrap();
        assert!(s.table().iter().all(|&v| v == 1));

        // X = full space, n = 2: (4, 0, 0, 0)
        let s = Spectrum::of_subset(2, 0..4u32).unwrap();
        assert_eq!(s.table(), &[4, 0, 0, 0]);

        // X = {x : x1 = 1}, n = 3: F(0) = 4, F(e1) = -4, rest 0
        let s = Spectrum::of_point_set(&affine_slice(3));
        assert_eq!(s.value(0), 4);
        assert_eq!(s.value(0b001), -4);
        for u in [0b010, 0b011, 0b100, 0b101, 0b110, 0b111] {
            assert_eq!(s.value(u), 0, "u = {u:03b}");
        }
    }

    #[test]
    fn defect_examples() {
        // V \ {0}: each nonzero u gives |F| = 1
        assert_eq!(uniformity_defect(&full_set(4)), rat(1, 16));
        // affine slice: defect 1/2
        assert_eq!(uniformity_defect(&affine_slice(5)), rat(1, 2));
        // empty set: defect 0
        assert_eq!(uniformity_defect(&PointSet::empty(4).unwrap()), rat(0, 1));
    }

    #[test]
    fn triangle_examples() {
        // Fano plane: 7 triangles (the 7 lines), both methods
        let fano = full_set(3);
        assert_eq!(triangle_count(&fano, TriangleMethod::Spectral), 7);
        assert_eq!(triangle_count(&fano, TriangleMethod::BruteForce), 7);

        // affine slice: sums of two members leave the slice
        assert_eq!(triangle_count(&affine_slice(4), TriangleMethod::Spectral), 0);

        // a basis is independent
        let basis = PointSet::new(5, (0..5).map(|i| 1u32 << i)).unwrap();
        assert_eq!(triangle_count(&basis, TriangleMethod::Spectral), 0);
        assert_eq!(triangle_count(&basis, TriangleMethod::BruteForce), 0);
    }

    #[test]
    fn zero_sum_triple_examples() {
        // A1 = A2 = A3 = V \ {0}, n = 3: (2^3 - 1)(2^3 - 2) = 42
        let a = full_set(3);
        assert_eq!(zero_sum_triples(&a, &a, &a).unwrap(), 42);
        assert_eq!(zero_sum_triples_brute(&a, &a, &a).unwrap(), 42);

        // A1 = {v}, A2 = {w}, A3 = {v + w}
        let a1 = PointSet::new(4, vec![0b0011]).unwrap();
        let a2 = PointSet::new(4, vec![0b0101]).unwrap();
        let a3 = PointSet::new(4, vec![0b0110]).unwrap();
        assert_eq!(zero_sum_triples(&a1, &a2, &a3).unwrap(), 1);

        // empty factor: 0
        let e = PointSet::empty(4).unwrap();
        let f = full_set(4);
        assert_eq!(zero_sum_triples(&f, &e, &f).unwrap(), 0);
    }

    #[test]
    fn zero_sum_dimension_mismatch() {
        let a = full_set(3);
        let b = full_set(4);
        assert!(matches!(
            zero_sum_triples(&a, &a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pair_completion_examples() {
        let x = full_set(3);
        // 2^{n-1} pairs partition V; removing the {0, v} pair leaves 3
        for v in 1..8u32 {
            assert_eq!(pair_completions(&x, v).unwrap(), 3, "v = {v}");
        }
        assert_eq!(pair_completions(&x, 0).unwrap(), 0);

        let two = PointSet::new(4, vec![0b0011, 0b0101]).unwrap();
        assert_eq!(pair_completions(&two, 0b0110).unwrap(), 1);
    }

    #[test]
    fn sumlemma_full_space_n4() {
        // count 210 = (2^4 - 1)(2^4 - 2), defect 1/16 <= 0.3
        let a = full_set(4);
        let report = check_sumlemma(&a, &a, &a, &rat(3, 10)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.details["count"], 210);
    }

    #[test]
    fn sumlemma_empty_set_passes() {
        let e = PointSet::empty(4).unwrap();
        let report = check_sumlemma(&e, &e, &e, &rat(1, 10)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn sumlemma_hypothesis_not_met() {
        let x = affine_slice(4); // defect 1/2 > 1/4
        let f = full_set(4);
        let report = check_sumlemma(&x, &f, &f, &rat(1, 4)).unwrap();
        assert_eq!(report.verdict, Verdict::HypothesisNotMet);
        assert_eq!(report.witness.as_ref().unwrap()["set"], "A1");
    }

    #[test]
    fn sumlemma_rejects_bad_eps() {
        let f = full_set(3);
        assert!(matches!(
            check_sumlemma(&f, &f, &f, &rat(1, 2)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            check_sumlemma(&f, &f, &f, &rat(0, 1)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn hyperplane_identity_oracle() {
        // F_X(u) = |H_u ∩ X| - |X \ H_u| for every nonzero u, by direct
        // iteration
        let x = PointSet::new(5, vec![1, 2, 4, 7, 11, 13, 21, 30, 31]).unwrap();
        let sp = Spectrum::of_point_set(&x);
        for u in 1..(1u32 << 5) {
            let inside = x.iter().filter(|&p| !crate::gf2::dot(p, u)).count() as i32;
            let outside = x.len() as i32 - inside;
            assert_eq!(sp.value(u), inside - outside, "u = {u}");
        }
    }

    proptest! {
        #[test]
        fn parseval(dim in 0usize..=10, seed: u64) {
            let mut state = seed;
            let mut members = Vec::new();
            for m in 0..(1u32 << dim) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 63 == 1 {
                    members.push(m);
                }
            }
            let k = members.len() as i64;
            let sp = Spectrum::of_subset(dim, members).unwrap();
            let sum: i64 = sp.table().iter().map(|&v| (v as i64) * (v as i64)).sum();
            prop_assert_eq!(sum, (1i64 << dim) * k);
        }

        #[test]
        fn translation_invariance(seed: u64, v in 0u32..(1 << 8)) {
            let dim = 8usize;
            let mut state = seed;
            let mut members = Vec::new();
            for m in 0..(1u32 << dim) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 63 == 1 {
                    members.push(m);
                }
            }
            let sp = Spectrum::of_subset(dim, members.iter().copied()).unwrap();
            let translated = Spectrum::of_subset(dim, members.iter().map(|&m| m ^ v)).unwrap();
            prop_assert_eq!(sp.uniformity_defect(), translated.uniformity_defect());
        }

        #[test]
        fn fast_and_brute_triangles_agree(seed: u64) {
            let dim = 9usize;
            let mut state = seed;
            let mut members = Vec::new();
            for m in 1..(1u32 << dim) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 62 == 3 {
                    members.push(m);
                }
            }
            let x = PointSet::new(dim, members).unwrap();
            prop_assert_eq!(
                triangle_count(&x, TriangleMethod::Spectral),
                triangle_count(&x, TriangleMethod::BruteForce)
            );
        }

        #[test]
        fn spectral_and_brute_triple_counts_agree(seed: u64) {
            let dim = 7usize;
            let mut state = seed;
            let mut sets = Vec::new();
            for _ in 0..3 {
                let mut members = Vec::new();
                for m in 1..(1u32 << dim) {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        members.push(m);
                    }
                }
                sets.push(PointSet::new(dim, members).unwrap());
            }
            prop_assert_eq!(
                zero_sum_triples(&sets[0], &sets[1], &sets[2]).unwrap(),
                zero_sum_triples_brute(&sets[0], &sets[1], &sets[2]).unwrap()
            );
        }
    }
}

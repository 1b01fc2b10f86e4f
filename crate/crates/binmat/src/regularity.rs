//! Coset-slice analysis and the energy-increment search for a regular
//! subspace.
//!
//! For a subspace H and v in V, the slice H_v(X) = {h in H : h + v in X}
//! is constant up to translation across a coset, so badness is decided per
//! coset and the bad mass counts (bad cosets) * |H| values of v. A
//! subspace is eps-regular when the bad mass is at most eps * |V|.
//!
//! The search starts at H = V and repeatedly intersects H with the kernel
//! of the worst slice's worst character. The index energy (mean squared
//! coset density) never decreases under refinement, which is what drives
//! the argument behind the regularity lemma; the trace records it per step.

use crate::error::{Error, Result};
use crate::gf2::{Mask, Subspace};
use crate::point_set::PointSet;
use crate::rat::{pow2, rat, rat_int, rat_to_string, Rational};
use crate::spectrum::Spectrum;
use std::collections::HashMap;

/// One coset of H: its canonical representative, the slice pulled back
/// into GF(2)^{dim H} via pivot coordinates, and the slice's statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetRecord {
    pub rep: Mask,
    pub slice: Vec<Mask>,
    pub density: Rational,
    pub defect: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosetProfile {
    pub subspace: Subspace,
    pub cosets: Vec<CosetRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityCertificate {
    pub subspace: Subspace,
    pub eps: Rational,
    pub bad_reps: Vec<Mask>,
    /// Number of bad values v in V: (bad cosets) * |H|.
    pub bad_mass: u64,
    pub regular: bool,
}

/// One refinement: the bad coset chosen, the violating character lifted to
/// the ambient space, and the energy after refining by it.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementStep {
    pub rep: Mask,
    pub character: Mask,
    pub energy: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularSearch {
    pub subspace: Subspace,
    pub certificate: RegularityCertificate,
    pub initial_energy: Rational,
    pub steps: Vec<RefinementStep>,
}

fn check_common(x: &PointSet, h: &Subspace) -> Result<()> {
    if x.dim() != h.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: h.ambient_dim(),
        });
    }
    Ok(())
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !(eps > &rat_int(0) && eps < &rat(1, 2)) {
        return Err(Error::InvalidParameter(format!(
            "eps must satisfy 0 < eps < 1/2, got {}",
            rat_to_string(eps)
        )));
    }
    Ok(())
}

/// Re-coordinatizes a member of H into GF(2)^{dim H} by gathering its
/// pivot-position bits. In RREF the pivot bits are exactly the basis
/// coefficients.
fn compress(pivots: &[usize], w: Mask) -> Mask {
    let mut out = 0;
    for (i, &p) in pivots.iter().enumerate() {
        if w & (1 << p) != 0 {
            out |= 1 << i;
        }
    }
    out
}

/// Lifts a character of GF(2)^{dim H} to the ambient space by scattering
/// its bits onto H's pivot positions; pairing against members of H then
/// agrees with the compressed pairing.
fn lift_character(pivots: &[usize], u: Mask) -> Mask {
    let mut out = 0;
    for (i, &p) in pivots.iter().enumerate() {
        if u & (1 << i) != 0 {
            out |= 1 << p;
        }
    }
    out
}

/// The slice H_v(X) = {h in H : h + v in X}, re-coordinatized into
/// GF(2)^{dim H} and sorted. May contain 0.
pub fn coset_slice(x: &PointSet, h: &Subspace, v: Mask) -> Result<Vec<Mask>> {
    check_common(x, h)?;
    crate::gf2::check_vector(v, x.dim())?;
    let pivots: Vec<usize> = h.pivots().collect();
    let mut slice: Vec<Mask> = x
        .iter()
        .filter_map(|p| {
            let w = p ^ v;
            h.contains(w).then(|| compress(&pivots, w))
        })
        .collect();
    slice.sort_unstable();
    slice
        .windows(2)
        .for_each(|w| debug_assert!(w[0] != w[1], "slice members are distinct"));
    Ok(slice)
}

/// Slices, densities and defects for every coset of H, keyed by the
/// canonical representatives in ascending order.
pub fn coset_profile(x: &PointSet, h: &Subspace) -> Result<CosetProfile> {
    check_common(x, h)?;
    let pivots: Vec<usize> = h.pivots().collect();
    let d = h.dim();
    // bucket X by coset in one pass
    let mut buckets: HashMap<Mask, Vec<Mask>> = HashMap::new();
    for p in x.iter() {
        let rep = h.reduce(p);
        buckets.entry(rep).or_default().push(compress(&pivots, p ^ rep));
    }
    let cosets = h
        .coset_reps()
        .map(|rep| {
            let mut slice = buckets.remove(&rep).unwrap_or_default();
            slice.sort_unstable();
            let spectrum = Spectrum::of_subset(d, slice.iter().copied())
                .expect("slice fits in dim(H)");
            CosetRecord {
                rep,
                density: rat_int(slice.len() as i64) / pow2(d),
                defect: spectrum.uniformity_defect(),
                slice,
            }
        })
        .collect();
    Ok(CosetProfile {
        subspace: h.clone(),
        cosets,
    })
}

/// Mean squared coset density: sum over cosets of density^2, divided by
/// the number of cosets. Non-decreasing under refinement of H.
pub fn energy(profile: &CosetProfile) -> Rational {
    let k = profile.subspace.codim();
    let sum: Rational = profile
        .cosets
        .iter()
        .map(|c| c.density.clone() * c.density.clone())
        .sum();
    sum / pow2(k)
}

fn certificate_from(profile: &CosetProfile, eps: &Rational) -> RegularityCertificate {
    let h = &profile.subspace;
    let bad_reps: Vec<Mask> = profile
        .cosets
        .iter()
        .filter(|c| &c.defect > eps)
        .map(|c| c.rep)
        .collect();
    let bad_mass = (bad_reps.len() as u64) << h.dim();
    let regular = rat_int(bad_mass as i64) <= eps.clone() * pow2(h.ambient_dim());
    RegularityCertificate {
        subspace: h.clone(),
        eps: eps.clone(),
        bad_reps,
        bad_mass,
        regular,
    }
}

/// Decides eps-regularity of H with respect to X, with the bad cosets as
/// evidence.
pub fn is_regular(x: &PointSet, h: &Subspace, eps: &Rational) -> Result<RegularityCertificate> {
    check_eps(eps)?;
    let profile = coset_profile(x, h)?;
    Ok(certificate_from(&profile, eps))
}

/// Energy-increment refinement: starting from H = V, repeatedly refine by
/// the worst character of the worst bad slice until H is eps-regular or
/// the codimension budget runs out. Deterministic: ties resolve to the
/// smallest representative and the smallest character.
pub fn find_regular_subspace(
    x: &PointSet,
    eps: &Rational,
    max_codim: usize,
) -> Result<RegularSearch> {
    check_eps(eps)?;
    let mut h = Subspace::full(x.dim());
    let mut profile = coset_profile(x, &h)?;
    let initial_energy = energy(&profile);
    let mut steps: Vec<RefinementStep> = Vec::new();
    loop {
        let certificate = certificate_from(&profile, eps);
        if certificate.regular {
            return Ok(RegularSearch {
                subspace: h,
                certificate,
                initial_energy,
                steps,
            });
        }
        if h.codim() >= max_codim {
            return Err(Error::MaxCodimExceeded {
                eps: rat_to_string(eps),
                max_codim,
                steps,
            });
        }
        // worst bad coset; ties fall to the earlier (smaller) representative
        let (rep, character) = {
            let worst = profile
                .cosets
                .iter()
                .filter(|c| &c.defect > eps)
                .max_by(|a, b| a.defect.cmp(&b.defect).then(b.rep.cmp(&a.rep)))
                .expect("an irregular subspace has a bad coset");
            // character achieving the defect; ties to the smallest u
            let spectrum = Spectrum::of_subset(h.dim(), worst.slice.iter().copied())
                .expect("slice fits in dim(H)");
            let target = spectrum.max_nontrivial();
            let u = (1..1u32 << h.dim())
                .find(|&u| (spectrum.value(u) as i64).abs() == target)
                .expect("a positive defect has a witnessing character");
            let pivots: Vec<usize> = h.pivots().collect();
            (worst.rep, lift_character(&pivots, u))
        };
        h = h.intersect_hyperplane(character);
        profile = coset_profile(x, &h)?;
        steps.push(RefinementStep {
            rep,
            character,
            energy: energy(&profile),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn affine(n: usize) -> PointSet {
        PointSet::new(n, (0..(1u32 << n)).filter(|m| m & 1 == 1)).unwrap()
    }

    fn hyperplane_x1(n: usize) -> Subspace {
        Subspace::from_spanning(n, (1..n).map(|i| 1u32 << i)).unwrap()
    }

    #[test]
    fn slice_examples() {
        let x = PointSet::new(3, vec![1, 3, 6]).unwrap();
        // H = V, v = 0: the slice is X itself
        let full = Subspace::full(3);
        assert_eq!(coset_slice(&x, &full, 0).unwrap(), vec![1, 3, 6]);

        // X the affine slice, H = {x1 = 0}: shifting by v with v1 = 1
        // pulls in all of H, shifting by 0 gives the empty slice
        let x = affine(3);
        let h = hyperplane_x1(3);
        assert_eq!(coset_slice(&x, &h, 0b001).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(coset_slice(&x, &h, 0).unwrap(), Vec::<Mask>::new());
    }

    #[test]
    fn slice_partition_and_translation() {
        let x = PointSet::new(4, vec![1, 2, 3, 5, 8, 9, 12, 15]).unwrap();
        for h in crate::gf2::enumerate_subspaces(4, 2, &crate::budget::Budget::default()).unwrap()
        {
            let profile = coset_profile(&x, &h).unwrap();
            let total: usize = profile.cosets.iter().map(|c| c.slice.len()).sum();
            assert_eq!(total, x.len());
            // slices at two members of the same coset are translates
            for rec in &profile.cosets {
                for w in h.elements() {
                    let v2 = rec.rep ^ w;
                    let slice2 = coset_slice(&x, &h, v2).unwrap();
                    assert_eq!(slice2.len(), rec.slice.len());
                    let pivots: Vec<usize> = h.pivots().collect();
                    let shift = compress(&pivots, w);
                    let mut translated: Vec<Mask> =
                        rec.slice.iter().map(|&s| s ^ shift).collect();
                    translated.sort_unstable();
                    assert_eq!(translated, slice2);
                }
            }
        }
    }

    #[test]
    fn regular_examples() {
        // a uniform X with H = V: single slice, defect = defect of X
        let x = PointSet::full(4).unwrap(); // defect 1/16
        let cert = is_regular(&x, &Subspace::full(4), &rat(1, 4)).unwrap();
        assert!(cert.regular);
        assert!(cert.bad_reps.is_empty());

        // affine slice against {x1 = 0}: both slices are empty or all of H
        let x = affine(4);
        let cert = is_regular(&x, &hyperplane_x1(4), &rat(1, 10)).unwrap();
        assert!(cert.regular);
        assert_eq!(cert.bad_mass, 0);

        // affine slice against V at eps = 0.4: defect 1/2 > 2/5
        let cert = is_regular(&x, &Subspace::full(4), &rat(2, 5)).unwrap();
        assert!(!cert.regular);
        assert_eq!(cert.bad_reps, vec![0]);
        assert_eq!(cert.bad_mass, 16);
    }

    #[test]
    fn eps_range_is_enforced() {
        let x = affine(3);
        assert!(matches!(
            is_regular(&x, &Subspace::full(3), &rat(1, 2)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            find_regular_subspace(&x, &rat(3, 5), 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn find_on_uniform_set_stays_at_v() {
        let x = PointSet::full(5).unwrap();
        let found = find_regular_subspace(&x, &rat(1, 4), 5).unwrap();
        assert_eq!(found.subspace.codim(), 0);
        assert!(found.steps.is_empty());
    }

    #[test]
    fn find_on_affine_slice_refines_once() {
        let x = affine(5);
        let found = find_regular_subspace(&x, &rat(2, 5), 5).unwrap();
        assert_eq!(found.subspace.codim(), 1);
        assert_eq!(found.subspace, hyperplane_x1(5));
        assert_eq!(found.steps.len(), 1);
        assert_eq!(found.steps[0].rep, 0);
        assert_eq!(found.steps[0].character, 0b00001);
        // the found pair re-validates bit-exactly
        let again = is_regular(&x, &found.subspace, &rat(2, 5)).unwrap();
        assert_eq!(again, found.certificate);
    }

    #[test]
    fn energy_is_monotone_and_codim_steps_by_one() {
        // a structured set that forces several refinements at small eps
        let x = PointSet::new(
            6,
            (1..64u32).filter(|m| (m & 0b11).count_ones() % 2 == 1 || m % 7 == 0),
        )
        .unwrap();
        let eps = rat(1, 20);
        match find_regular_subspace(&x, &eps, 6) {
            Ok(found) => {
                let mut last = found.initial_energy.clone();
                for (i, step) in found.steps.iter().enumerate() {
                    assert!(step.energy >= last, "energy dropped at step {i}");
                    last = step.energy.clone();
                }
                assert_eq!(found.subspace.codim(), found.steps.len());
                let again = is_regular(&x, &found.subspace, &eps).unwrap();
                assert_eq!(again.regular, true);
            }
            Err(Error::MaxCodimExceeded { steps, .. }) => {
                let mut last: Option<Rational> = None;
                for step in &steps {
                    if let Some(prev) = &last {
                        assert!(&step.energy >= prev);
                    }
                    last = Some(step.energy.clone());
                }
                panic!("expected termination at n = 6 (codim 6 is always regular)");
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn max_codim_budget_surfaces_trace() {
        let x = affine(4);
        match find_regular_subspace(&x, &rat(2, 5), 0) {
            Err(Error::MaxCodimExceeded { steps, max_codim, .. }) => {
                assert_eq!(max_codim, 0);
                assert!(steps.is_empty());
            }
            other => panic!("expected MaxCodimExceeded, got {other:?}"),
        }
    }
}

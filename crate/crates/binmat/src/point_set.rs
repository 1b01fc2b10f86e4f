//! Point sets: duplicate-free sets of nonzero vectors in GF(2)^n, the
//! representation of a simple binary matroid M(X).

use crate::error::{Error, Result};
use crate::gf2::{check_dim, check_vector, low_mask, rref_rows, Mask, Subspace};
use crate::rat::{pow2, rat_int, Rational};

/// A simple binary matroid given by its ground set of points. Canonical
/// form: points sorted ascending by mask value, no duplicates, no zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<Mask>,
}

impl PointSet {
    /// Builds a point set, sorting and merging duplicates. Rejects the zero
    /// vector and any vector with bits outside the ambient dimension.
    pub fn new(dim: usize, points: impl IntoIterator<Item = Mask>) -> Result<PointSet> {
        check_dim(dim)?;
        let mut pts: Vec<Mask> = points.into_iter().collect();
        for &p in &pts {
            if p == 0 {
                return Err(Error::ZeroInSet);
            }
            check_vector(p, dim)?;
        }
        pts.sort_unstable();
        pts.dedup();
        Ok(PointSet { dim, points: pts })
    }

    pub fn empty(dim: usize) -> Result<PointSet> {
        PointSet::new(dim, std::iter::empty())
    }

    /// All nonzero vectors of GF(2)^dim, i.e. PG(dim-1, 2).
    pub fn full(dim: usize) -> Result<PointSet> {
        check_dim(dim)?;
        Ok(PointSet {
            dim,
            points: (1..=low_mask(dim)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Mask] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.points.iter().copied()
    }

    pub fn contains(&self, v: Mask) -> bool {
        self.points.binary_search(&v).is_ok()
    }

    /// Rank of the point set as a matroid, r(M(X)).
    pub fn rank(&self) -> usize {
        rref_rows(self.iter()).len()
    }

    /// Span of the points as a canonical subspace.
    pub fn span(&self) -> Subspace {
        Subspace::from_rref_unchecked(self.dim, rref_rows(self.iter()))
    }

    /// Density |X| / 2^r(M(X)), exact.
    pub fn density(&self) -> Rational {
        if self.points.is_empty() {
            return rat_int(0);
        }
        rat_int(self.points.len() as i64) / pow2(self.rank())
    }

    /// The points lying in the given flat (subspace of the ambient space).
    pub fn restrict_to(&self, flat: &Subspace) -> Result<PointSet> {
        if flat.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: flat.ambient_dim(),
            });
        }
        Ok(PointSet {
            dim: self.dim,
            points: self.iter().filter(|&p| flat.contains(p)).collect(),
        })
    }

    /// The point set minus the given points (which need not all be members).
    pub fn without(&self, removed: &[Mask]) -> PointSet {
        let mut gone: Vec<Mask> = removed.to_vec();
        gone.sort_unstable();
        PointSet {
            dim: self.dim,
            points: self
                .iter()
                .filter(|p| gone.binary_search(p).is_err())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn construction_canonicalizes() {
        let a = PointSet::new(3, vec![0b110, 0b001, 0b110]).unwrap();
        assert_eq!(a.points(), &[0b001, 0b110]);
        assert!(a.contains(0b110));
        assert!(!a.contains(0b010));
    }

    #[test]
    fn rejects_zero_and_out_of_range() {
        assert!(matches!(
            PointSet::new(3, vec![0]),
            Err(Error::ZeroInSet)
        ));
        assert!(matches!(
            PointSet::new(3, vec![0b1000]),
            Err(Error::BitOutOfRange { .. })
        ));
        assert!(matches!(
            PointSet::new(40, vec![1]),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn density_examples() {
        assert_eq!(PointSet::full(3).unwrap().density(), rat(7, 8));
        assert_eq!(PointSet::empty(5).unwrap().density(), rat(0, 1));
        // affine slice x1 = 1 in dim 4: 8 points of rank 4
        let slice = PointSet::new(4, (0..16u32).filter(|m| m & 1 == 1)).unwrap();
        assert_eq!(slice.density(), rat(1, 2));
    }

    #[test]
    fn rank_and_span() {
        let x = PointSet::new(4, vec![0b0001, 0b0010, 0b0011]).unwrap();
        assert_eq!(x.rank(), 2);
        let span = x.span();
        assert_eq!(span.dim(), 2);
        assert!(span.contains(0b0011));
        assert!(!span.contains(0b0100));
    }

    #[test]
    fn restrict_and_without() {
        let x = PointSet::full(3).unwrap();
        let hyp = Subspace::from_spanning(3, vec![0b010, 0b100]).unwrap();
        let inside = x.restrict_to(&hyp).unwrap();
        assert_eq!(inside.points(), &[0b010, 0b100, 0b110]);
        let rest = x.without(inside.points());
        assert_eq!(rest.len(), 4);
        assert!(rest.iter().all(|p| p & 1 == 1));
    }
}

//! Bit-packed GF(2) linear algebra: vectors as masks, row-major matrices,
//! canonical subspaces, and deterministic subspace enumeration.
//!
//! Coordinate convention: coordinate `i` (1-based; the leftmost character of
//! the text format, the paper's "first entry") lives at bit `i-1`. The pivot
//! of a vector is therefore its lowest set bit, and a reduced row echelon
//! basis has strictly increasing `trailing_zeros` across its rows.

use num::bigint::BigUint;
use num::One;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// An element of GF(2)^n packed into the low n bits of a `u32`.
pub type Mask = u32;

/// Maximum ambient dimension. Spectrum tables of length 2^n dominate memory.
pub const MAX_DIM: usize = 28;

/// Mask with the low `dim` bits set.
#[inline]
pub fn low_mask(dim: usize) -> Mask {
    debug_assert!(dim <= 32);
    if dim >= 32 {
        !0
    } else {
        (1u32 << dim) - 1
    }
}

/// Inner product over GF(2): parity of the AND.
#[inline]
pub fn dot(a: Mask, b: Mask) -> bool {
    (a & b).count_ones() & 1 == 1
}

/// Hamming weight.
#[inline]
pub fn weight(a: Mask) -> u32 {
    a.count_ones()
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    Ok(())
}

pub(crate) fn check_vector(mask: Mask, dim: usize) -> Result<()> {
    if mask & !low_mask(dim) != 0 {
        return Err(Error::BitOutOfRange { mask, dim });
    }
    Ok(())
}

/// Reduced row echelon form of a list of masks; returns the basis rows in
/// increasing pivot order (zero rows dropped). Each row's pivot bit is
/// cleared from every other row.
pub(crate) fn rref_rows(rows: impl IntoIterator<Item = Mask>) -> Vec<Mask> {
    let mut by_pivot = [0 as Mask; 32];
    for row in rows {
        let mut v = row;
        while v != 0 {
            let p = v.trailing_zeros() as usize;
            if by_pivot[p] == 0 {
                by_pivot[p] = v;
                break;
            }
            v ^= by_pivot[p];
        }
    }
    // Back-substitution: clear each pivot bit from rows with smaller pivots.
    for p in 0..32 {
        if by_pivot[p] == 0 {
            continue;
        }
        for q in 0..p {
            if by_pivot[q] & (1 << p) != 0 {
                by_pivot[q] ^= by_pivot[p];
            }
        }
    }
    by_pivot.into_iter().filter(|&m| m != 0).collect()
}

/// A row-major matrix over GF(2). Rows are masks of width `ncols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ncols: usize,
    rows: Vec<Mask>,
}

impl Matrix {
    pub fn new(ncols: usize, rows: Vec<Mask>) -> Result<Matrix> {
        check_dim(ncols)?;
        for &r in &rows {
            check_vector(r, ncols)?;
        }
        Ok(Matrix { ncols, rows })
    }

    pub fn zero(nrows: usize, ncols: usize) -> Result<Matrix> {
        Matrix::new(ncols, vec![0; nrows])
    }

    pub fn identity(n: usize) -> Result<Matrix> {
        Matrix::new(n, (0..n).map(|i| 1 << i).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        rref_rows(self.rows.iter().copied()).len()
    }

    /// The unique reduced row echelon form, with zero rows dropped.
    pub fn rref(&self) -> Matrix {
        Matrix {
            ncols: self.ncols,
            rows: rref_rows(self.rows.iter().copied()),
        }
    }

    /// Syndrome of `x`: bit `i` of the result is `<row_i, x>`.
    pub fn mul_vec(&self, x: Mask) -> Mask {
        debug_assert!(self.rows.len() <= 32);
        let mut out = 0;
        for (i, &row) in self.rows.iter().enumerate() {
            if dot(row, x) {
                out |= 1 << i;
            }
        }
        out
    }

    /// The kernel {x : M x = 0} as a canonical subspace of GF(2)^ncols.
    pub fn null_space(&self) -> Subspace {
        let rr = rref_rows(self.rows.iter().copied());
        let pivots: Vec<usize> = rr.iter().map(|r| r.trailing_zeros() as usize).collect();
        let mut pivot_mask: Mask = 0;
        for &p in &pivots {
            pivot_mask |= 1 << p;
        }
        let mut basis = Vec::with_capacity(self.ncols - rr.len());
        for f in 0..self.ncols {
            if pivot_mask & (1 << f) != 0 {
                continue;
            }
            let mut v: Mask = 1 << f;
            for (i, &row) in rr.iter().enumerate() {
                if row & (1 << f) != 0 {
                    v |= 1 << pivots[i];
                }
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.ncols, basis).expect("kernel basis in range")
    }
}

/// A subspace of GF(2)^n in canonical form: the basis is the unique RREF
/// with strictly increasing pivot positions and no zero rows. Two values
/// are equal iff they are the same subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Mask>,
}

impl Subspace {
    /// Span of the given vectors, canonicalized.
    pub fn from_spanning(ambient: usize, vectors: impl IntoIterator<Item = Mask>) -> Result<Subspace> {
        check_dim(ambient)?;
        let vectors: Vec<Mask> = vectors.into_iter().collect();
        for &v in &vectors {
            check_vector(v, ambient)?;
        }
        Ok(Subspace {
            ambient,
            basis: rref_rows(vectors),
        })
    }

    /// The zero subspace {0}.
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// The full space GF(2)^ambient.
    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| 1 << i).collect(),
        }
    }

    pub(crate) fn from_rref_unchecked(ambient: usize, basis: Vec<Mask>) -> Subspace {
        debug_assert!(basis.windows(2).all(|w| w[0].trailing_zeros() < w[1].trailing_zeros()));
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn basis(&self) -> &[Mask] {
        &self.basis
    }

    /// Pivot positions (0-based bit indices), strictly increasing.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|r| r.trailing_zeros() as usize)
    }

    pub fn pivot_mask(&self) -> Mask {
        self.basis.iter().fold(0, |acc, r| acc | (r & r.wrapping_neg()))
    }

    /// Canonical coset representative of `v`: reduce until no pivot bit is set.
    pub fn reduce(&self, v: Mask) -> Mask {
        let mut v = v;
        for &row in &self.basis {
            let pivot_bit = row & row.wrapping_neg();
            if v & pivot_bit != 0 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: Mask) -> bool {
        self.reduce(v) == 0
    }

    /// The subspace W = {w : <w, h> = 0 for all h in self}. Over GF(2) this
    /// is an involution with dim(W) = codim(self), but W need not be a
    /// complement of self (self-orthogonal vectors exist).
    pub fn orthogonal_complement(&self) -> Subspace {
        Matrix {
            ncols: self.ambient,
            rows: self.basis.clone(),
        }
        .null_space()
    }

    /// Intersection with the hyperplane {v : <v, normal> = 0}.
    pub fn intersect_hyperplane(&self, normal: Mask) -> Subspace {
        let mut rows = self.basis.clone();
        if let Some(k) = rows.iter().position(|&b| dot(b, normal)) {
            let bk = rows[k];
            for (i, b) in rows.iter_mut().enumerate() {
                if i != k && dot(*b, normal) {
                    *b ^= bk;
                }
            }
            rows.remove(k);
        }
        Subspace {
            ambient: self.ambient,
            basis: rref_rows(rows),
        }
    }

    /// One representative per coset of this subspace, in ascending mask
    /// order: the 2^codim vectors supported on the non-pivot coordinates.
    /// The representative of the subspace itself is 0.
    pub fn coset_reps(&self) -> impl Iterator<Item = Mask> {
        Submasks::of(low_mask(self.ambient) & !self.pivot_mask())
    }

    /// All 2^dim elements, in Gray-code order (deterministic; starts at 0).
    pub fn elements(&self) -> impl Iterator<Item = Mask> + '_ {
        let dim = self.dim();
        let mut current: Mask = 0;
        (0u64..(1u64 << dim)).map(move |i| {
            if i > 0 {
                let flip = (i ^ (i >> 1)) ^ ((i - 1) ^ ((i - 1) >> 1));
                current ^= self.basis[flip.trailing_zeros() as usize];
            }
            current
        })
    }
}

/// Ascending iterator over the submasks of a mask (starts at 0).
pub(crate) struct Submasks {
    mask: Mask,
    cur: Mask,
    done: bool,
}

impl Submasks {
    pub(crate) fn of(mask: Mask) -> Submasks {
        Submasks {
            mask,
            cur: 0,
            done: false,
        }
    }
}

impl Iterator for Submasks {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let out = self.cur;
        self.cur = self.cur.wrapping_sub(self.mask) & self.mask;
        if self.cur == 0 {
            self.done = true;
        }
        Some(out)
    }
}

/// The Gaussian binomial: the number of k-dimensional subspaces of GF(2)^n.
/// Exact unbounded arithmetic.
pub fn gaussian_binomial(n: usize, k: usize) -> BigUint {
    assert!(k <= n, "gaussian_binomial requires k <= n");
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= (BigUint::one() << (n - i)) - BigUint::one();
        den *= (BigUint::one() << (k - i)) - BigUint::one();
    }
    num / den
}

/// Checks `gaussian_binomial(n, d) <= ceiling`, returning the exact count
/// when it fits.
pub(crate) fn guard_subspace_count(n: usize, d: usize, ceiling: u64, guard: &str) -> Result<u64> {
    let count = gaussian_binomial(n, d);
    if count > BigUint::from(ceiling) {
        return Err(Error::CostCeilingExceeded {
            guard: guard.to_string(),
            needed: count.to_string(),
            ceiling,
        });
    }
    Ok(u64::try_from(&count).expect("count fits by guard"))
}

/// Streaming generator of all d-dimensional subspaces of GF(2)^n in
/// canonical order: pivot sets in lexicographic order, then free bits with
/// the last basis row varying fastest, each row's free bits ascending.
///
/// This is the single enumeration engine; the public iterator and the hot
/// search paths both drive it.
pub(crate) struct RrefGen {
    n: usize,
    d: usize,
    pivots: Vec<usize>,
    free: Vec<Mask>,
    subs: Vec<Mask>,
    rows: Vec<Mask>,
    started: bool,
    done: bool,
}

impl RrefGen {
    pub(crate) fn new(n: usize, d: usize) -> RrefGen {
        debug_assert!(d <= n && n <= MAX_DIM);
        RrefGen {
            n,
            d,
            pivots: (0..d).collect(),
            free: vec![0; d],
            subs: vec![0; d],
            rows: vec![0; d],
            started: false,
            done: d > n,
        }
    }

    fn refresh_free_masks(&mut self) {
        let mut pivot_mask: Mask = 0;
        for &p in &self.pivots {
            pivot_mask |= 1 << p;
        }
        let full = low_mask(self.n);
        for i in 0..self.d {
            let above = full & !low_mask(self.pivots[i] + 1);
            self.free[i] = above & !pivot_mask;
            self.subs[i] = 0;
        }
    }

    fn compose_rows(&mut self) {
        for i in 0..self.d {
            self.rows[i] = (1 << self.pivots[i]) | self.subs[i];
        }
    }

    /// Lexicographic successor of the pivot combination; false when exhausted.
    fn next_pivots(&mut self) -> bool {
        if self.d == 0 {
            return false;
        }
        let mut i = self.d;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.pivots[i] < self.n - self.d + i {
                self.pivots[i] += 1;
                for j in i + 1..self.d {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
    }

    /// Advances to the next basis; returns false when the stream ends.
    /// After `true`, `rows()` holds a valid canonical RREF basis.
    pub(crate) fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            self.refresh_free_masks();
            self.compose_rows();
            return true;
        }
        // Bump free bits, last row fastest.
        for i in (0..self.d).rev() {
            self.subs[i] = self.subs[i].wrapping_sub(self.free[i]) & self.free[i];
            if self.subs[i] != 0 {
                self.compose_rows();
                return true;
            }
            // wrapped; carry to the previous row
        }
        if self.next_pivots() {
            self.refresh_free_masks();
            self.compose_rows();
            return true;
        }
        self.done = true;
        false
    }

    pub(crate) fn rows(&self) -> &[Mask] {
        &self.rows
    }
}

/// Iterator over all d-dimensional subspaces of GF(2)^n in canonical order.
pub struct SubspaceIter {
    gen: RrefGen,
    ambient: usize,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.gen.advance() {
            Some(Subspace::from_rref_unchecked(
                self.ambient,
                self.gen.rows().to_vec(),
            ))
        } else {
            None
        }
    }
}

/// Yields each d-dimensional subspace of GF(2)^n exactly once, in canonical
/// order, after checking the Gaussian-binomial cost guard.
pub fn enumerate_subspaces(n: usize, d: usize, budget: &Budget) -> Result<SubspaceIter> {
    check_dim(n)?;
    if d > n {
        return Err(Error::InvalidParameter(format!(
            "subspace dimension {d} exceeds ambient dimension {n}"
        )));
    }
    guard_subspace_count(
        n,
        d,
        budget.max_subspaces,
        &format!("enumerate_subspaces({n},{d})"),
    )?;
    Ok(SubspaceIter {
        gen: RrefGen::new(n, d),
        ambient: n,
    })
}

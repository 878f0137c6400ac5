use rand::Rng;

use super::{BitVector, F2Error};

/// Incrementally built basis kept in reduced row-echelon form.
///
/// Every stored row has a distinct pivot (its lowest set coordinate) and all
/// other rows are zero at that pivot, so reducing a vector takes one pass.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination against the stored rows; zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.dim, "reducing a vector of the wrong length");
        let mut r = v.clone();
        for (pivot, row) in &self.rows {
            if r.get(*pivot) {
                r ^= row;
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns `false` (and changes nothing) when `v`
    /// was already dependent.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.first_one() else {
            return false;
        };
        for (_, row) in &mut self.rows {
            if row.get(pivot) {
                *row ^= &r;
            }
        }
        self.rows.push((pivot, r));
        true
    }

    /// Rows sorted by pivot.
    pub fn into_rows(mut self) -> Vec<BitVector> {
        self.rows.sort_by_key(|(p, _)| *p);
        self.rows.into_iter().map(|(_, r)| r).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &BitVector)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }
}

/// `offset + Span(basis)` inside GF(2)^ambient.
///
/// Always stored canonically: the basis is in reduced row-echelon form
/// sorted by pivot, and the offset is zero on every pivot coordinate. Two
/// subspaces are equal iff their fields are bitwise equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineSubspace {
    offset: BitVector,
    basis: Vec<BitVector>,
}

impl AffineSubspace {
    /// Builds the subspace spanned by `directions` through `offset`.
    /// Dependent directions are dropped.
    pub fn new(offset: BitVector, directions: &[BitVector]) -> Result<Self, F2Error> {
        let dim = offset.len();
        let mut echelon = EchelonBasis::new(dim);
        for d in directions {
            if d.len() != dim {
                return Err(F2Error::DimensionMismatch {
                    expected: dim,
                    found: d.len(),
                });
            }
            echelon.insert(d);
        }
        Ok(Self::from_echelon(&offset, echelon))
    }

    pub fn point(offset: BitVector) -> Self {
        Self {
            offset,
            basis: Vec::new(),
        }
    }

    fn from_echelon(offset: &BitVector, echelon: EchelonBasis) -> Self {
        let offset = echelon.reduce(offset);
        Self {
            offset,
            basis: echelon.into_rows(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn offset(&self) -> &BitVector {
        &self.offset
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn contains(&self, p: &BitVector) -> bool {
        if p.len() != self.ambient_dim() {
            return false;
        }
        let mut r = p ^ &self.offset;
        for b in &self.basis {
            let pivot = b.first_one().expect("basis vectors are nonzero");
            if r.get(pivot) {
                r ^= b;
            }
        }
        r.is_zero()
    }

    /// Point with coordinates `coeffs` (bit `i` selects basis vector `i`).
    pub fn point_at(&self, coeffs: u64) -> BitVector {
        let mut p = self.offset.clone();
        for (i, b) in self.basis.iter().enumerate() {
            if (coeffs >> i) & 1 == 1 {
                p ^= b;
            }
        }
        p
    }

    /// Every point; only sensible for small dimensions.
    pub fn points(&self) -> impl Iterator<Item = BitVector> + '_ {
        assert!(self.dim() < 64, "too many points to enumerate");
        (0..1u64 << self.dim()).map(move |c| self.point_at(c))
    }

    pub fn intersect(&self, other: &Self) -> Result<Option<Self>, F2Error> {
        intersect_affine(self, other)
    }
}

/// Exact intersection of two affine subspaces, `None` when it is empty.
///
/// Runs a Zassenhaus-style elimination on rows `(b | b)` for the first
/// basis and `(b | 0)` for the second; rows whose left half vanishes span
/// the common directions and the right half of the reduced offset
/// difference yields a common point.
pub fn intersect_affine(
    a: &AffineSubspace,
    b: &AffineSubspace,
) -> Result<Option<AffineSubspace>, F2Error> {
    let d = a.ambient_dim();
    if b.ambient_dim() != d {
        return Err(F2Error::DimensionMismatch {
            expected: d,
            found: b.ambient_dim(),
        });
    }
    let zero = BitVector::zeros(d);
    let mut echelon = EchelonBasis::new(2 * d);
    for v in a.basis() {
        echelon.insert(&v.concat(v));
    }
    for v in b.basis() {
        echelon.insert(&v.concat(&zero));
    }
    let target = (a.offset() ^ b.offset()).concat(&zero);
    let residual = echelon.reduce(&target);
    if !residual.slice(0, d).is_zero() {
        return Ok(None);
    }
    let point = a.offset() ^ &residual.slice(d, 2 * d);
    let common: Vec<BitVector> = echelon
        .rows()
        .filter(|(pivot, _)| *pivot >= d)
        .map(|(_, row)| row.slice(d, 2 * d))
        .collect();
    AffineSubspace::new(point, &common).map(Some)
}

/// Result of [`complete_to_basis`].
#[derive(Clone, Debug)]
pub struct BasisCompletion {
    /// `n` independent vectors, the inputs first.
    pub vectors: Vec<BitVector>,
    /// Uniform random vectors drawn (accepted or rejected).
    pub draws: usize,
}

/// Extends independent nonzero `vectors` to a basis of GF(2)^n by drawing
/// uniform random vectors and rejecting dependent ones.
///
/// There is no retry cap; each draw succeeds with probability at least 1/2.
pub fn complete_to_basis<R: Rng + ?Sized>(
    vectors: &[BitVector],
    n: usize,
    rng: &mut R,
) -> Result<BasisCompletion, F2Error> {
    let mut echelon = EchelonBasis::new(n);
    for v in vectors {
        if v.len() != n {
            return Err(F2Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if !echelon.insert(v) {
            return Err(F2Error::DependentVectors);
        }
    }
    let mut out = vectors.to_vec();
    let mut draws = 0;
    while out.len() < n {
        let candidate = BitVector::random(n, rng);
        draws += 1;
        if echelon.insert(&candidate) {
            out.push(candidate);
        }
    }
    Ok(BasisCompletion {
        vectors: out,
        draws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn intersection_with_itself_is_identity() {
        let a = AffineSubspace::new(v("101"), &[v("110"), v("011")]).unwrap();
        assert_eq!(intersect_affine(&a, &a).unwrap(), Some(a));
    }

    #[test]
    fn two_lines_through_origin_meet_at_origin() {
        let a = AffineSubspace::new(v("00"), &[v("10")]).unwrap();
        let b = AffineSubspace::new(v("00"), &[v("01")]).unwrap();
        let i = intersect_affine(&a, &b).unwrap().unwrap();
        assert_eq!(i, AffineSubspace::point(v("00")));
    }

    #[test]
    fn shifted_lines_meet_at_all_ones() {
        let a = AffineSubspace::new(v("10"), &[v("01")]).unwrap();
        let b = AffineSubspace::new(v("01"), &[v("10")]).unwrap();
        let i = intersect_affine(&a, &b).unwrap().unwrap();
        assert_eq!(i.dim(), 0);
        assert_eq!(i.offset(), &v("11"));
    }

    #[test]
    fn parallel_lines_do_not_meet() {
        let a = AffineSubspace::new(v("00"), &[v("10")]).unwrap();
        let b = AffineSubspace::new(v("01"), &[v("10")]).unwrap();
        assert_eq!(intersect_affine(&a, &b).unwrap(), None);
    }

    #[test]
    fn mismatched_ambient_dimensions_error() {
        let a = AffineSubspace::point(v("00"));
        let b = AffineSubspace::point(v("000"));
        assert!(intersect_affine(&a, &b).is_err());
    }

    #[test]
    fn canonical_form_makes_equal_spaces_equal() {
        let a = AffineSubspace::new(v("100"), &[v("110"), v("011")]).unwrap();
        let b = AffineSubspace::new(v("001"), &[v("101"), v("110")]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn completion_of_e1_in_dimension_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = complete_to_basis(&[v("10")], 2, &mut rng).unwrap();
            assert_eq!(c.vectors[0], v("10"));
            assert!(c.vectors[1] == v("01") || c.vectors[1] == v("11"));
        }
    }

    #[test]
    fn completion_rejects_bad_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            complete_to_basis(&[v("000")], 3, &mut rng).unwrap_err(),
            F2Error::DependentVectors
        );
        assert_eq!(
            complete_to_basis(&[v("110"), v("110")], 3, &mut rng).unwrap_err(),
            F2Error::DependentVectors
        );
    }

    #[test]
    fn empty_completion_is_a_full_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = complete_to_basis(&[], 3, &mut rng).unwrap();
        let m = super::super::BitMatrix::from_rows(3, c.vectors).unwrap();
        assert_eq!(m.rank(), 3);
    }
}

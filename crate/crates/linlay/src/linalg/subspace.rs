//! Subspaces of GF(q)^d, stored as basis matrices in reduced column echelon
//! form so that equal subspaces compare equal byte for byte.

use super::field::FieldSpec;
use super::mat::{kernel_basis, rref, solve, Mat};

/// A subspace of GF(q)^d. `basis` is d x dim(S) with linearly independent
/// columns, kept in reduced column echelon form. The zero space is a d x 0
/// matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Mat,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of GF({})^{})", self.dim(), self.field().order(), self.ambient_dim())?;
        if self.dim() > 0 {
            write!(f, " {:?}", self.basis)?;
        }
        Ok(())
    }
}

/// Reduced column echelon form of the column space of `m`, dependent columns
/// dropped. This is the canonical basis used everywhere.
fn column_echelon(m: &Mat) -> Mat {
    let (r, _, rank) = rref(&m.transpose());
    let all_cols: Vec<usize> = (0..r.cols()).collect();
    let kept: Vec<usize> = (0..rank).collect();
    r.submatrix(&kept, &all_cols).transpose()
}

impl Subspace {
    /// The zero subspace of GF(q)^d.
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace { basis: Mat::zero(field, ambient_dim, 0) }
    }

    /// The whole space GF(q)^d.
    pub fn full(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace { basis: Mat::identity(field, ambient_dim) }
    }

    /// Span of the columns of `m`, canonicalized.
    pub fn from_spanning(m: &Mat) -> Subspace {
        Subspace { basis: column_echelon(m) }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Whether `x` (length = ambient_dim) is a linear combination of the
    /// basis columns.
    pub fn contains_vector(&self, x: &[u8]) -> bool {
        assert_eq!(x.len(), self.ambient_dim(), "vector length mismatch");
        if x.iter().all(|&t| t == 0) {
            return true;
        }
        let f = self.field();
        let b = Mat::from_rows(f, &x.iter().map(|&t| vec![t]).collect::<Vec<_>>());
        solve(&self.basis, &b).is_some()
    }

    /// Whether self is contained in `other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient dimension mismatch");
        if self.is_zero() {
            return true;
        }
        solve(other.basis(), self.basis()).is_some()
    }

    /// The sum {a + b : a in self, b in other}.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient dimension mismatch");
        Subspace::from_spanning(&self.basis.hcat(&other.basis))
    }

    /// The intersection, computed via the kernel of [basis1 | -basis2].
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient dimension mismatch");
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, self.ambient_dim());
        }
        let d1 = self.dim();
        let mut neg = other.basis.clone();
        for r in 0..neg.rows() {
            for c in 0..neg.cols() {
                neg[(r, c)] = f.neg(neg[(r, c)]);
            }
        }
        let k = kernel_basis(&self.basis.hcat(&neg));
        if k.cols() == 0 {
            return Subspace::zero(f, self.ambient_dim());
        }
        let rows_x: Vec<usize> = (0..d1).collect();
        let cols_all: Vec<usize> = (0..k.cols()).collect();
        let mx = k.submatrix(&rows_x, &cols_all);
        Subspace::from_spanning(&self.basis.mul(&mx))
    }

    /// Coordinates of self relative to the basis of `ambient_sub`, which must
    /// contain self. The result lives in GF(q)^{dim(ambient_sub)}.
    pub fn coordinates_in(&self, ambient_sub: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), ambient_sub.ambient_dim(), "ambient dimension mismatch");
        if self.is_zero() {
            return Subspace::zero(self.field(), ambient_sub.dim());
        }
        let coords = solve(ambient_sub.basis(), self.basis())
            .expect("coordinates_in: subspace is not contained in the given space");
        Subspace::from_spanning(&coords)
    }

    /// Image of self under the linear map `t` (t maps ambient coordinates of
    /// self to a new ambient space).
    pub fn map_through(&self, t: &Mat) -> Subspace {
        assert_eq!(t.cols(), self.ambient_dim(), "transition dimension mismatch");
        Subspace::from_spanning(&t.mul(&self.basis))
    }
}

/// All subspaces of GF(q)^d, enumerated by spanning sets and deduplicated.
/// Intended for tiny d (the trajectory test oracles); cost grows like q^(d^2).
pub fn all_subspaces(field: FieldSpec, d: usize) -> Vec<Subspace> {
    let q = field.order() as usize;
    let nvec = q.pow(d as u32);
    let vecs: Vec<Vec<u8>> = (0..nvec)
        .map(|code| {
            let mut v = vec![0u8; d];
            let mut x = code;
            for e in v.iter_mut() {
                *e = (x % q) as u8;
                x /= q;
            }
            v
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    // spans of all subsets, built up one generator at a time
    let mut frontier = vec![Subspace::zero(field, d)];
    seen.insert(frontier[0].clone());
    out.push(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for v in &vecs {
            if s.contains_vector(v) {
                continue;
            }
            let m = Mat::from_rows(field, &v.iter().map(|&t| vec![t]).collect::<Vec<_>>());
            let bigger = s.sum(&Subspace::from_spanning(&m));
            if seen.insert(bigger.clone()) {
                out.push(bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    out.sort();
    out
}

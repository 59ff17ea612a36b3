//! Vectors and square matrices over the differential ring, with the three
//! bilinear forms `<v,w> = vᵀw`, `{v,w} = vwᵀ + wvᵀ` and `[v,w] = vwᵀ - wvᵀ`.

use super::poly::DiffPoly;
use super::RingError;
use std::ops::{Add, Index, Neg, Sub};

/// A length-`k` column of ring elements. Rows are represented by the same
/// type; orientation is tracked by the operation, not the data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VecDiffPoly {
    entries: Vec<DiffPoly>,
}

impl VecDiffPoly {
    pub fn new(entries: Vec<DiffPoly>) -> Self {
        VecDiffPoly { entries }
    }

    pub fn zero(k: usize) -> Self {
        VecDiffPoly {
            entries: vec![DiffPoly::zero(); k],
        }
    }

    /// The canonical vector `u = (u_1, ..., u_k)`.
    pub fn generators(k: usize) -> Self {
        VecDiffPoly {
            entries: (1..=k as u8).map(DiffPoly::u).collect(),
        }
    }

    /// Standard basis vector (1-based index).
    pub fn basis(k: usize, j: usize) -> Self {
        let mut v = Self::zero(k);
        v.entries[j - 1] = DiffPoly::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(DiffPoly::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DiffPoly> {
        self.entries.iter()
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> VecDiffPoly {
        VecDiffPoly {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&DiffPoly) -> Result<DiffPoly, RingError>,
    ) -> Result<VecDiffPoly, RingError> {
        Ok(VecDiffPoly {
            entries: self
                .entries
                .iter()
                .map(f)
                .collect::<Result<Vec<_>, _>>()?,
        })
    }

    pub fn total_derivative(&self) -> VecDiffPoly {
        self.map(DiffPoly::total_derivative)
    }

    pub fn times_i(&self) -> VecDiffPoly {
        self.map(DiffPoly::times_i)
    }

    pub fn scale(&self, c: &DiffPoly) -> VecDiffPoly {
        self.map(|p| p * c)
    }
}

impl Index<usize> for VecDiffPoly {
    type Output = DiffPoly;
    fn index(&self, i: usize) -> &DiffPoly {
        &self.entries[i]
    }
}

impl Add<&VecDiffPoly> for VecDiffPoly {
    type Output = VecDiffPoly;
    fn add(self, rhs: &VecDiffPoly) -> VecDiffPoly {
        assert_eq!(self.len(), rhs.len());
        VecDiffPoly {
            entries: self
                .entries
                .into_iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&VecDiffPoly> for VecDiffPoly {
    type Output = VecDiffPoly;
    fn sub(self, rhs: &VecDiffPoly) -> VecDiffPoly {
        assert_eq!(self.len(), rhs.len());
        VecDiffPoly {
            entries: self
                .entries
                .into_iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for VecDiffPoly {
    type Output = VecDiffPoly;
    fn neg(self) -> VecDiffPoly {
        VecDiffPoly {
            entries: self.entries.into_iter().map(|p| -p).collect(),
        }
    }
}

/// A `k×k` matrix of ring elements, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatDiffPoly {
    k: usize,
    entries: Vec<DiffPoly>,
}

impl MatDiffPoly {
    pub fn zero(k: usize) -> Self {
        MatDiffPoly {
            k,
            entries: vec![DiffPoly::zero(); k * k],
        }
    }

    pub fn identity_scaled(k: usize, c: DiffPoly) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = c.clone();
        }
        m
    }

    pub fn from_fn(k: usize, f: impl Fn(usize, usize) -> DiffPoly) -> Self {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(f(i, j));
            }
        }
        MatDiffPoly { k, entries }
    }

    pub fn diagonal(diag: Vec<DiffPoly>) -> Self {
        let k = diag.len();
        let mut m = Self::zero(k);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * k + i] = d;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn at(&self, i: usize, j: usize) -> &DiffPoly {
        &self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: DiffPoly) {
        self.entries[i * self.k + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(DiffPoly::is_zero)
    }

    pub fn transpose(&self) -> MatDiffPoly {
        Self::from_fn(self.k, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> DiffPoly {
        let mut t = DiffPoly::zero();
        for i in 0..self.k {
            t += self.at(i, i);
        }
        t
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> MatDiffPoly {
        MatDiffPoly {
            k: self.k,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(usize, usize, &DiffPoly) -> Result<DiffPoly, RingError>,
    ) -> Result<MatDiffPoly, RingError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.k {
            for j in 0..self.k {
                entries.push(f(i, j, self.at(i, j))?);
            }
        }
        Ok(MatDiffPoly {
            k: self.k,
            entries,
        })
    }

    pub fn total_derivative(&self) -> MatDiffPoly {
        self.map(DiffPoly::total_derivative)
    }

    pub fn times_i(&self) -> MatDiffPoly {
        self.map(DiffPoly::times_i)
    }

    pub fn matmul(&self, rhs: &MatDiffPoly) -> MatDiffPoly {
        assert_eq!(self.k, rhs.k);
        Self::from_fn(self.k, |i, j| {
            let mut s = DiffPoly::zero();
            for l in 0..self.k {
                s += &(self.at(i, l) * rhs.at(l, j));
            }
            s
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &VecDiffPoly) -> VecDiffPoly {
        assert_eq!(self.k, v.len());
        VecDiffPoly::new(
            (0..self.k)
                .map(|i| {
                    let mut s = DiffPoly::zero();
                    for l in 0..self.k {
                        s += &(self.at(i, l) * &v[l]);
                    }
                    s
                })
                .collect(),
        )
    }
}

impl Add<&MatDiffPoly> for MatDiffPoly {
    type Output = MatDiffPoly;
    fn add(self, rhs: &MatDiffPoly) -> MatDiffPoly {
        assert_eq!(self.k, rhs.k);
        MatDiffPoly {
            k: self.k,
            entries: self
                .entries
                .into_iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&MatDiffPoly> for MatDiffPoly {
    type Output = MatDiffPoly;
    fn sub(self, rhs: &MatDiffPoly) -> MatDiffPoly {
        assert_eq!(self.k, rhs.k);
        MatDiffPoly {
            k: self.k,
            entries: self
                .entries
                .into_iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for MatDiffPoly {
    type Output = MatDiffPoly;
    fn neg(self) -> MatDiffPoly {
        MatDiffPoly {
            k: self.k,
            entries: self.entries.into_iter().map(|p| -p).collect(),
        }
    }
}

fn check_dims(v: &VecDiffPoly, w: &VecDiffPoly) -> Result<(), RingError> {
    if v.len() != w.len() {
        return Err(RingError::DimensionMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    Ok(())
}

/// `<v, w> = vᵀ w`, without conjugation.
pub fn inner(v: &VecDiffPoly, w: &VecDiffPoly) -> Result<DiffPoly, RingError> {
    check_dims(v, w)?;
    let mut s = DiffPoly::zero();
    for (a, b) in v.iter().zip(w.iter()) {
        s += &(a * b);
    }
    Ok(s)
}

/// Outer product `v wᵀ` (column times row).
pub fn outer(v: &VecDiffPoly, w: &VecDiffPoly) -> MatDiffPoly {
    assert_eq!(v.len(), w.len());
    MatDiffPoly::from_fn(v.len(), |i, j| &v[i] * &w[j])
}

/// `{v, w} = vwᵀ + wvᵀ`, symmetric.
pub fn sym_bracket(v: &VecDiffPoly, w: &VecDiffPoly) -> Result<MatDiffPoly, RingError> {
    check_dims(v, w)?;
    Ok(MatDiffPoly::from_fn(v.len(), |i, j| {
        &v[i] * &w[j] + &(&w[i] * &v[j])
    }))
}

/// `[v, w] = vwᵀ - wvᵀ`, antisymmetric with zero diagonal.
pub fn antisym_bracket(v: &VecDiffPoly, w: &VecDiffPoly) -> Result<MatDiffPoly, RingError> {
    check_dims(v, w)?;
    Ok(MatDiffPoly::from_fn(v.len(), |i, j| {
        &v[i] * &w[j] - &(&w[i] * &v[j])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_of_generators() {
        let u = VecDiffPoly::generators(2);
        let got = inner(&u, &u).unwrap();
        let expected = DiffPoly::u(1) * DiffPoly::u(1) + &(DiffPoly::u(2) * DiffPoly::u(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn inner_with_zero_and_basis() {
        let u = VecDiffPoly::generators(3);
        assert!(inner(&u, &VecDiffPoly::zero(3)).unwrap().is_zero());
        let e1 = VecDiffPoly::basis(3, 1);
        assert_eq!(inner(&e1, &u).unwrap(), DiffPoly::u(1));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let u = VecDiffPoly::generators(2);
        let w = VecDiffPoly::generators(3);
        assert!(matches!(
            inner(&u, &w),
            Err(RingError::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn sym_bracket_of_u_with_itself() {
        let u = VecDiffPoly::generators(2);
        let s = sym_bracket(&u, &u).unwrap();
        assert_eq!(
            *s.at(0, 1),
            DiffPoly::int(2) * DiffPoly::u(1) * DiffPoly::u(2)
        );
        assert_eq!(s, s.transpose());
    }

    #[test]
    fn antisym_bracket_of_u_with_itself_vanishes() {
        let u = VecDiffPoly::generators(3);
        assert!(antisym_bracket(&u, &u).unwrap().is_zero());
    }

    #[test]
    fn antisym_bracket_of_basis_vectors() {
        let e1 = VecDiffPoly::basis(2, 1);
        let e2 = VecDiffPoly::basis(2, 2);
        let a = antisym_bracket(&e1, &e2).unwrap();
        assert_eq!(*a.at(0, 1), DiffPoly::one());
        assert_eq!(*a.at(1, 0), DiffPoly::int(-1));
        assert!(a.at(0, 0).is_zero() && a.at(1, 1).is_zero());
        assert_eq!(a.transpose(), -a.clone());
    }
}

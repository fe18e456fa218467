//! Dense exact linear algebra over [`CycScalar`].

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<CycScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![CycScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimMismatch { expected: c, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Mat { rows: r, cols: c, entries })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<CycScalar>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimMismatch { expected: r, got: col.len() });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise complex conjugation.
    pub fn conj(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(CycScalar::conj).collect(),
        }
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::DimMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycScalar]) -> Result<Vec<CycScalar>> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimMismatch { expected: self.rows * self.cols, got: rhs.rows * rhs.cols });
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &CycScalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycScalar::is_zero)
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimMismatch { expected: self.rows, got: self.cols });
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Smallest `k ≥ 1` with `self^k = I`, searching up to `bound`.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self).ok()?;
        }
        None
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self).pivots.len()
    }

    /// Basis of `ker(self)`: reduced echelon form, one vector per free column in
    /// increasing order, with a 1 in that free position.
    pub fn null_space(&self) -> Vec<Vec<CycScalar>> {
        Echelon::new(self).kernel()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycScalar::one());
        }
        let ech = Echelon::new(&aug);
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, ech.m.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Unique `x` with `self · x = b`, when it exists and is unique.
    pub fn solve(&self, b: &[CycScalar]) -> Result<Vec<CycScalar>> {
        if b.len() != self.rows {
            return Err(Error::DimMismatch { expected: self.rows, got: b.len() });
        }
        let n = self.cols;
        let mut aug = Mat::zeros(self.rows, n + 1);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let ech = Echelon::new(&aug);
        if ech.pivots.contains(&n) {
            return Err(Error::InconsistentSystem("right-hand side outside column space".into()));
        }
        if ech.pivots.len() < n {
            return Err(Error::SingularMatrix);
        }
        Ok((0..n).map(|i| ech.m.get(i, n).clone()).collect())
    }
}

pub fn dot(a: &[CycScalar], b: &[CycScalar]) -> CycScalar {
    let mut acc = CycScalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Reduced row echelon form computed by fraction-free (Bareiss) forward
/// elimination followed by pivot normalisation and back substitution.
struct Echelon {
    m: Mat,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(src: &Mat) -> Self {
        // Zero rows carry no information and dominate the overdetermined
        // invariance systems; drop them up front.
        let kept: Vec<usize> = (0..src.rows)
            .filter(|&i| src.row(i).iter().any(|v| !v.is_zero()))
            .collect();
        let cols = src.cols;
        let mut rows: Vec<Vec<CycScalar>> = kept.iter().map(|&i| src.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut prev = CycScalar::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let prev_inv = prev.inv().expect("Bareiss divisor is a previous nonzero pivot");
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = pivot_row[c].clone();
            for row in tail.iter_mut() {
                let lead = std::mem::replace(&mut row[c], CycScalar::zero());
                for j in c + 1..cols {
                    let keep = if row[j].is_zero() { CycScalar::zero() } else { &pivot * &row[j] };
                    let elim = if lead.is_zero() || pivot_row[j].is_zero() {
                        CycScalar::zero()
                    } else {
                        &lead * &pivot_row[j]
                    };
                    let v = &keep - &elim;
                    row[j] = if v.is_zero() { v } else { &v * &prev_inv };
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        // Normalise pivots to 1 and clear above them.
        for (ri, &pc) in pivots.iter().enumerate().rev() {
            let inv = rows[ri][pc].inv().expect("pivot is nonzero");
            for v in rows[ri].iter_mut().skip(pc) {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let (above, rest) = rows.split_at_mut(ri);
            let prow = &rest[0];
            for row in above.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..cols {
                    if !prow[j].is_zero() {
                        row[j] = &row[j] - &(&f * &prow[j]);
                    }
                }
            }
        }
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Echelon { m, pivots }
    }

    fn kernel(&self) -> Vec<Vec<CycScalar>> {
        let cols = self.m.cols;
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !self.pivots.contains(c)) {
            let mut v = vec![CycScalar::zero(); cols];
            v[free] = CycScalar::one();
            for (ri, &pc) in self.pivots.iter().enumerate() {
                v[pc] = -self.m.get(ri, free);
            }
            basis.push(v);
        }
        basis
    }
}

/// Cubic array `entries[i][j][k]` of side `d`, with a cached sparse index by
/// first coordinate.
#[derive(Clone, Debug)]
pub struct Tensor3 {
    d: usize,
    entries: Vec<CycScalar>,
    sparse: OnceLock<Vec<Vec<(usize, usize, CycScalar)>>>,
}

impl PartialEq for Tensor3 {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.entries == other.entries
    }
}

impl Tensor3 {
    pub fn zeros(d: usize) -> Self {
        Tensor3 { d, entries: vec![CycScalar::zero(); d * d * d], sparse: OnceLock::new() }
    }

    pub fn from_nested(nested: Vec<Vec<Vec<CycScalar>>>) -> Result<Self> {
        let d = nested.len();
        let mut t = Tensor3::zeros(d);
        for (i, plane) in nested.into_iter().enumerate() {
            if plane.len() != d {
                return Err(Error::DimMismatch { expected: d, got: plane.len() });
            }
            for (j, line) in plane.into_iter().enumerate() {
                if line.len() != d {
                    return Err(Error::DimMismatch { expected: d, got: line.len() });
                }
                for (k, v) in line.into_iter().enumerate() {
                    t.entries[(i * d + j) * d + k] = v;
                }
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &CycScalar {
        &self.entries[(i * self.d + j) * self.d + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: CycScalar) {
        self.sparse.take();
        self.entries[(i * self.d + j) * self.d + k] = v;
    }

    /// Nonzero entries `(j, k, value)` with first index `i`.
    pub fn slice(&self, i: usize) -> &[(usize, usize, CycScalar)] {
        let idx = self.sparse.get_or_init(|| {
            (0..self.d)
                .map(|a| {
                    let mut out = Vec::new();
                    for b in 0..self.d {
                        for c in 0..self.d {
                            let v = self.get(a, b, c);
                            if !v.is_zero() {
                                out.push((b, c, v.clone()));
                            }
                        }
                    }
                    out
                })
                .collect()
        });
        &idx[i]
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<CycScalar>>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| (0..self.d).map(|k| self.get(i, j, k).clone()).collect()).collect())
            .collect()
    }

    /// Permutes index roles: `out[i₀][i₁][i₂] = self[i_{perm[0]}][i_{perm[1]}][i_{perm[2]}]`.
    pub fn permute(&self, perm: [usize; 3]) -> Tensor3 {
        let d = self.d;
        let mut out = Tensor3::zeros(d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let idx = [a, b, c];
                    let src = [idx[perm[0]], idx[perm[1]], idx[perm[2]]];
                    out.entries[(a * d + b) * d + c] = self.get(src[0], src[1], src[2]).clone();
                }
            }
        }
        out
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn map_entries(&self, f: impl Fn(&CycScalar) -> CycScalar) -> Tensor3 {
        Tensor3 { d: self.d, entries: self.entries.iter().map(f).collect(), sparse: OnceLock::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_mat(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| CycScalar::from_int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Mat::identity(2).null_space().is_empty());
    }

    #[test]
    fn simple_kernel() {
        let k = int_mat(&[&[1, -1]]).null_space();
        assert_eq!(k, vec![vec![CycScalar::one(), CycScalar::one()]]);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Mat::identity(3).inverse().unwrap(), Mat::identity(3));
        let swap = int_mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.inverse().unwrap(), swap);
        assert!(matches!(int_mat(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn cyclotomic_inverse() {
        let w = CycScalar::zeta(3, 1);
        let m = Mat::from_rows(vec![
            vec![CycScalar::one(), w.clone()],
            vec![w.clone(), CycScalar::from_int(2)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn solve_and_order() {
        let m = int_mat(&[&[2, 1], &[1, 1]]);
        let x = m.solve(&[CycScalar::from_int(3), CycScalar::from_int(2)]).unwrap();
        assert_eq!(x, vec![CycScalar::one(), CycScalar::one()]);
        let rot = int_mat(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.multiplicative_order(10), Some(4));
        assert_eq!(int_mat(&[&[1, 1], &[0, 1]]).multiplicative_order(10), None);
    }

    #[test]
    fn tensor_permute() {
        let mut t = Tensor3::zeros(2);
        t.set(0, 1, 1, CycScalar::from_int(5));
        // out[a][b][c] = t[b][c][a]
        let p = t.permute([1, 2, 0]);
        assert_eq!(p.get(1, 0, 1), &CycScalar::from_int(5));
        assert_eq!(t.slice(0).len(), 1);
    }

    fn arb_kernel_case() -> impl Strategy<Value = (Mat, usize)> {
        // rows × cols with `cols - r` planted dependent columns.
        (1usize..5, 3usize..6, prop::collection::vec(-3i64..4, 64)).prop_map(|(rows, cols, seed)| {
            let mut m = Mat::zeros(rows, cols);
            let mut it = seed.into_iter().cycle();
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, CycScalar::from_int(it.next().unwrap()));
                }
            }
            // Make the last column a combination of the first two.
            for i in 0..rows {
                let v = m.get(i, 0) + &m.get(i, 1).scale_by(2);
                m.set(i, cols - 1, v);
            }
            (m, cols)
        })
    }

    trait ScaleBy {
        fn scale_by(&self, k: i64) -> CycScalar;
    }
    impl ScaleBy for CycScalar {
        fn scale_by(&self, k: i64) -> CycScalar {
            self * &CycScalar::from_int(k)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn kernel_is_exact((m, cols) in arb_kernel_case()) {
            let ker = m.null_space();
            prop_assert_eq!(m.rank() + ker.len(), cols);
            prop_assert!(!ker.is_empty());
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(CycScalar::is_zero));
            }
        }

        #[test]
        fn inverse_is_two_sided(vals in prop::collection::vec(-4i64..5, 9)) {
            let m = Mat::from_rows(vals.chunks(3).map(|r| r.iter().map(|&v| CycScalar::from_int(v)).collect()).collect()).unwrap();
            if let Ok(inv) = m.inverse() {
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            } else {
                prop_assert!(m.rank() < 3);
            }
        }
    }
}

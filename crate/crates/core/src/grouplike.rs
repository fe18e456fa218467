//! Group-like elements via characters of the dual algebra.
//!
//! Group-likes of `A` are exactly the characters of `Â`, which vanish on the
//! commutator ideal `I ⊆ Â`. The quotient `Â/I` is a commutative Hopf algebra
//! in characteristic zero, hence semisimple, so the annihilator `I^⊥ ⊆ A` is
//! spanned by the group-likes. On `I^⊥` the right actions `h ↦ h⊲f_i` are
//! simultaneously diagonal; a random combination separates the characters.
//! Eigenvectors are computed in floating point and then matched to exact
//! cyclotomic coordinates and re-verified exactly.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{Elem, HopfData};
use crate::linalg::Mat;
use crate::scalar::CycScalar;

const DENOMINATOR_BOUND: i64 = 1_000_000;
const MATCH_TOLERANCE: f64 = 1e-9;
const SEED: u64 = 0x5eed_6c1e;

/// The group-like elements of `h`, sorted with `1` first and otherwise in
/// descending coordinate order.
pub fn find_group_likes(h: &HopfData) -> Result<Vec<Elem>> {
    let n = h.dim;
    let annihilator = commutator_annihilator(h);
    let m = annihilator.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let w = Mat::from_columns(&annihilator)?;
    let w_pivots = pivot_rows(&w);

    // Restrict x ↦ x⊲f_i to I^⊥ in the coordinates of `w`.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut combo = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..n {
        let c: f64 = rng.random_range(-1.0..1.0);
        for (col, v) in annihilator.iter().enumerate() {
            let image = right_act_dual_basis(h, v, i);
            let coords = coordinates_in(&w, &w_pivots, &image)?;
            for (row, x) in coords.iter().enumerate() {
                combo[(row, col)] += x.to_complex() * c;
            }
        }
    }

    let eig = combo
        .clone()
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::NumericalFailure("Schur form did not converge".into()))?;
    let wf = DMatrix::<Complex64>::from_fn(n, m, |r, c| w.get(r, c).to_complex());
    let counit: Vec<Complex64> = h.counit.0.iter().map(CycScalar::to_complex).collect();

    let mut found: Vec<Elem> = Vec::with_capacity(m);
    for lambda in eig.iter() {
        let shifted = &combo - DMatrix::<Complex64>::identity(m, m) * *lambda;
        let y = smallest_singular_vector(shifted)?;
        let hv = &wf * y;
        let eps: Complex64 = hv.iter().zip(&counit).map(|(a, b)| a * b).sum();
        if eps.norm() < 1e-12 {
            return Err(Error::ExactificationFailed("eigenvector has vanishing counit".into()));
        }
        let coords = hv
            .iter()
            .map(|z| exactify(*z / eps, h.field_order))
            .collect::<Result<Vec<_>>>()?;
        let cand = Elem(coords);
        if !h.is_group_like(&cand) {
            return Err(Error::ExactificationFailed(format!("candidate {cand:?} is not group-like")));
        }
        if !found.contains(&cand) {
            found.push(cand);
        }
    }
    if found.len() != m {
        return Err(Error::ExactificationFailed(format!("found {} of {m} group-likes", found.len())));
    }
    let one = h.one();
    found.sort_by(|a, b| (*b == one).cmp(&(*a == one)).then_with(|| cmp_elems(b, a)));
    Ok(found)
}

fn cmp_elems(a: &Elem, b: &Elem) -> std::cmp::Ordering {
    a.0.iter()
        .zip(&b.0)
        .map(|(x, y)| x.cmp_coords(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// `v ⊲ f_i`: `(v⊲f_i)_j = Σ_k comult[k][i][j] v_k`.
fn right_act_dual_basis(h: &HopfData, v: &[CycScalar], i: usize) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); h.dim];
    for (k, vk) in v.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        for (a, j, c) in h.comult.slice(k) {
            if *a == i {
                out[*j] = &out[*j] + &(c * vk);
            }
        }
    }
    out
}

/// Product in `Â`: `(f·g)_k = Σ_{i,j} comult[k][i][j] f_i g_j`.
fn dual_mul(h: &HopfData, f: &[CycScalar], g: &[CycScalar]) -> Vec<CycScalar> {
    (0..h.dim)
        .map(|k| {
            let mut acc = CycScalar::zero();
            for (i, j, c) in h.comult.slice(k) {
                if !f[*i].is_zero() && !g[*j].is_zero() {
                    acc = &acc + &(c * &(&f[*i] * &g[*j]));
                }
            }
            acc
        })
        .collect()
}

/// Exact basis of `I^⊥` where `I` is the two-sided ideal of `Â` generated by
/// commutators of dual basis elements.
fn commutator_annihilator(h: &HopfData) -> Vec<Vec<CycScalar>> {
    let n = h.dim;
    let basis = |i: usize| {
        let mut v = vec![CycScalar::zero(); n];
        v[i] = CycScalar::one();
        v
    };
    let mut span = Echelon::default();
    let mut frontier = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (basis(i), basis(j));
            let c: Vec<CycScalar> =
                dual_mul(h, &bi, &bj).iter().zip(dual_mul(h, &bj, &bi)).map(|(x, y)| x - &y).collect();
            if let Some(v) = span.insert(c) {
                frontier.push(v);
            }
        }
    }
    while let Some(v) = frontier.pop() {
        for i in 0..n {
            let bi = basis(i);
            for w in [dual_mul(h, &bi, &v), dual_mul(h, &v, &bi)] {
                if let Some(w) = span.insert(w) {
                    frontier.push(w);
                }
            }
        }
    }
    if span.rows.is_empty() {
        return (0..n).map(basis).collect();
    }
    Mat::from_rows(span.rows.into_iter().map(|(_, r)| r).collect()).expect("rectangular").null_space()
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Default)]
struct Echelon {
    /// `(pivot, row)` with `row[pivot] = 1` and zeros at every other pivot.
    rows: Vec<(usize, Vec<CycScalar>)>,
}

impl Echelon {
    /// Adds `v` if it is independent, returning its reduced form.
    fn insert(&mut self, mut v: Vec<CycScalar>) -> Option<Vec<CycScalar>> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        let pivot = v.iter().position(|x| !x.is_zero())?;
        let inv = v[pivot].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let c = r[pivot].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        self.rows.push((pivot, v.clone()));
        Some(v)
    }
}

/// Rows at which the columns of `w` are independent, chosen greedily.
fn pivot_rows(w: &Mat) -> Vec<usize> {
    let mut rows = Vec::new();
    let mut picked = Echelon::default();
    for r in 0..w.rows() {
        if picked.insert(w.row(r).to_vec()).is_some() {
            rows.push(r);
        }
        if rows.len() == w.cols() {
            break;
        }
    }
    rows
}

fn coordinates_in(w: &Mat, pivots: &[usize], v: &[CycScalar]) -> Result<Vec<CycScalar>> {
    let sub = Mat::from_rows(pivots.iter().map(|&r| w.row(r).to_vec()).collect())?;
    let rhs: Vec<CycScalar> = pivots.iter().map(|&r| v[r].clone()).collect();
    let x = sub.solve(&rhs)?;
    if w.mul_vec(&x)? != v {
        return Err(Error::InconsistentSystem("vector left the invariant subspace".into()));
    }
    Ok(x)
}

fn smallest_singular_vector(m: DMatrix<Complex64>) -> Result<nalgebra::DVector<Complex64>> {
    let svd = m.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::NumericalFailure("SVD did not return V".into()))?;
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::NumericalFailure("empty SVD".into()))?;
    Ok(v_t.row(idx).adjoint())
}

/// Best rational approximation with bounded denominator (continued fractions).
pub(crate) fn rational_approx(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a.checked_mul(p1)?.checked_add(p0)?, a.checked_mul(q1)?.checked_add(q0)?);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac.abs() < 1e-15 || ((p1 as f64) / (q1 as f64) - x).abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (q1 != 0).then(|| BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

/// Matches `z` to `r·ζ_M^j` with rational `r`, trying `M = N` first and then
/// small multiples; falls back to `a + b·ζ_M` for quadratic fields.
pub(crate) fn exactify(z: Complex64, field_order: u32) -> Result<CycScalar> {
    if z.norm() < MATCH_TOLERANCE {
        return Ok(CycScalar::zero());
    }
    let mut orders: Vec<u32> = vec![field_order.max(1)];
    for m in 2..=24u32 {
        let l = field_order.max(1).lcm(&m);
        if !orders.contains(&l) {
            orders.push(l);
        }
    }
    let tau = std::f64::consts::TAU;
    for &order in &orders {
        let turns = z.arg() / tau * order as f64;
        let j = turns.round();
        if (turns - j).abs() > 1e-7 {
            continue;
        }
        let jj = j.rem_euclid(order as f64) as u64;
        let root = Complex64::from_polar(1.0, tau * jj as f64 / order as f64);
        let r = (z / root).re;
        if let Some(q) = rational_approx(r, DENOMINATOR_BOUND) {
            let exact = &CycScalar::from_rational(q) * &CycScalar::zeta(order, jj);
            if (exact.to_complex() - z).norm() < MATCH_TOLERANCE {
                return Ok(exact.simplify());
            }
        }
    }
    for &order in &orders {
        if crate::scalar::totient(order) != 2 {
            continue;
        }
        // z = a + b·ζ with ζ = exp(2πi/M): b = Im z / Im ζ, a = Re z − b·Re ζ.
        let zeta = Complex64::from_polar(1.0, tau / order as f64);
        let b = z.im / zeta.im;
        let a = z.re - b * zeta.re;
        if let (Some(qa), Some(qb)) = (rational_approx(a, DENOMINATOR_BOUND), rational_approx(b, DENOMINATOR_BOUND)) {
            let exact = &CycScalar::from_rational(qa) + &(&CycScalar::from_rational(qb) * &CycScalar::zeta(order, 1));
            if (exact.to_complex() - z).norm() < MATCH_TOLERANCE {
                return Ok(exact.simplify());
            }
        }
    }
    Err(Error::ExactificationFailed(format!("no cyclotomic match for {z}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, Group};

    #[test]
    fn rational_approximation() {
        assert_eq!(rational_approx(0.5, 100), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(rational_approx(-1.0 / 3.0, 100), Some(BigRational::new((-1).into(), 3.into())));
        assert_eq!(rational_approx(2.0, 100), Some(BigRational::from_integer(2.into())));
    }

    #[test]
    fn exactify_roots() {
        let z = CycScalar::zeta(3, 2);
        assert_eq!(exactify(z.to_complex(), 1).unwrap(), z);
        let w = &CycScalar::from_ratio(-3, 7) * &CycScalar::zeta(8, 3);
        assert_eq!(exactify(w.to_complex(), 1).unwrap(), w);
        assert_eq!(exactify(Complex64::new(1e-13, 0.0), 1).unwrap(), CycScalar::zero());
        assert!(exactify(Complex64::new(f64::NAN, 0.0), 1).is_err());
    }

    #[test]
    fn cyclic_group_algebra() {
        let h = zoo::group_algebra(&Group::cyclic(2));
        assert_eq!(find_group_likes(&h).unwrap(), vec![h.basis(0), h.basis(1)]);
    }

    #[test]
    fn sweedler_has_two() {
        let h = zoo::sweedler();
        assert_eq!(find_group_likes(&h).unwrap(), vec![h.basis(0), h.basis(1)]);
    }

    #[test]
    fn function_algebra_characters() {
        let h = zoo::function_algebra(&Group::cyclic(2));
        let gl = find_group_likes(&h).unwrap();
        assert_eq!(gl, vec![Elem::from_ints(&[1, 1]), Elem::from_ints(&[1, -1])]);
        let z3 = zoo::function_algebra(&Group::cyclic(3));
        let gl = find_group_likes(&z3).unwrap();
        assert_eq!(gl.len(), 3);
        assert!(gl.iter().any(|g| g.0[1] == CycScalar::zeta(3, 1)));
    }

    #[test]
    fn unit_comes_first_even_when_not_lexicographically_largest() {
        let h = zoo::function_algebra(&Group::cyclic(6));
        let gl = find_group_likes(&h).unwrap();
        assert_eq!(gl.len(), 6);
        assert_eq!(gl[0], h.one());
    }

    #[test]
    fn nonabelian_groups() {
        let s3 = Group::symmetric3();
        assert_eq!(find_group_likes(&zoo::group_algebra(&s3)).unwrap().len(), 6);
        // trivial and sign characters
        assert_eq!(find_group_likes(&zoo::function_algebra(&s3)).unwrap().len(), 2);
    }
}

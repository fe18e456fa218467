//! Integrals, the modular element, modular automorphisms and the scaling
//! constant, with the structural identities relating them.

use crate::error::{Error, Result};
use crate::hopf::{Elem, Functional, HopfData};
use crate::linalg::Mat;
use crate::report::{Check, Report};
use crate::scalar::CycScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    pub phi: Functional,
    pub psi: Functional,
    pub delta: Elem,
    pub delta_inv: Elem,
    pub sigma: Mat,
    pub sigma_prime: Mat,
    pub nu: CycScalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `φ(ab) = φ(bσ(a))` for the left integral.
    Left,
    /// `ψ(ab) = ψ(bσ′(a))` for the right integral.
    Right,
}

/// Basis of solutions of `(ι⊗φ)Δ(a) = φ(a)1`.
pub fn left_invariance_kernel(h: &HopfData) -> Vec<Vec<CycScalar>> {
    let n = h.dim;
    // Row (a, j): Σ_k comult[a][j][k] φ_k − unit_j φ_a = 0.
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        let mut block = vec![vec![CycScalar::zero(); n]; n];
        for (j, k, c) in h.comult.slice(a) {
            block[*j][*k] = &block[*j][*k] + c;
        }
        for (j, row) in block.iter_mut().enumerate() {
            let u = &h.unit.0[j];
            if !u.is_zero() {
                row[a] = &row[a] - u;
            }
        }
        rows.extend(block);
    }
    Mat::from_rows(rows).expect("square blocks").null_space()
}

/// The left integral, normalised so its first nonzero coordinate is 1.
pub fn compute_left_integral(h: &HopfData) -> Result<Functional> {
    let ker = left_invariance_kernel(h);
    match ker.len() {
        0 => Err(Error::NoIntegral),
        1 => {
            let v = Functional(ker.into_iter().next().expect("one vector"));
            let lead = v.first_nonzero().ok_or(Error::NoIntegral)?;
            let inv = v.0[lead].inv()?;
            Ok(v.scale(&inv))
        }
        k => Err(Error::NonUniqueIntegral(k)),
    }
}

/// `ψ_k = Σ_l φ_l S[l][k]`.
pub fn compose_with(f: &Functional, m: &Mat) -> Functional {
    let n = f.dim();
    Functional(
        (0..n)
            .map(|k| {
                let mut acc = CycScalar::zero();
                for (l, fl) in f.0.iter().enumerate() {
                    let s = m.get(l, k);
                    if !fl.is_zero() && !s.is_zero() {
                        acc = &acc + &(fl * s);
                    }
                }
                acc
            })
            .collect(),
    )
}

/// `(ψ⊗ι)Δ(e_a)` as an element.
pub fn left_slice(h: &HopfData, f: &Functional, a: usize) -> Elem {
    let mut out = Elem::zero(h.dim);
    for (i, j, c) in h.comult.slice(a) {
        if !f.0[*i].is_zero() {
            out.0[*j] = &out.0[*j] + &(c * &f.0[*i]);
        }
    }
    out
}

/// `(ι⊗φ)Δ(e_a)` as an element.
pub fn right_slice(h: &HopfData, f: &Functional, a: usize) -> Elem {
    let mut out = Elem::zero(h.dim);
    for (i, j, c) in h.comult.slice(a) {
        if !f.0[*j].is_zero() {
            out.0[*i] = &out.0[*i] + &(c * &f.0[*j]);
        }
    }
    out
}

pub fn is_left_invariant(h: &HopfData, phi: &Functional) -> bool {
    let one = h.one();
    (0..h.dim).all(|a| right_slice(h, phi, a) == one.scale(&phi.0[a]))
}

pub fn is_right_invariant(h: &HopfData, psi: &Functional) -> bool {
    let one = h.one();
    (0..h.dim).all(|a| left_slice(h, psi, a) == one.scale(&psi.0[a]))
}

/// `ψ = φ∘S`, checked to be right invariant.
pub fn compute_right_integral(h: &HopfData, phi: &Functional) -> Result<Functional> {
    let psi = compose_with(phi, &h.antipode);
    let one = h.one();
    for a in 0..h.dim {
        if left_slice(h, &psi, a) != one.scale(&psi.0[a]) {
            return Err(Error::RightInvarianceFailed(a));
        }
    }
    Ok(psi)
}

/// `δ` from `(φ⊗ι)Δ(a) = φ(a)δ`, cross-checked against `φ(S(a)) = φ(aδ)`.
pub fn compute_modular_element(h: &HopfData, phi: &Functional) -> Result<Elem> {
    let a = phi.first_nonzero().ok_or(Error::NoIntegral)?;
    let delta = left_slice(h, phi, a).scale(&phi.0[a].inv()?);
    for b in 0..h.dim {
        if left_slice(h, phi, b) != delta.scale(&phi.0[b]) {
            return Err(Error::InconsistentSystem(format!("(φ⊗ι)Δ(e_{b}) is not φ(e_{b})δ")));
        }
    }
    if !h.is_group_like(&delta) {
        return Err(Error::NotGroupLike(format!("{delta:?}")));
    }
    for b in 0..h.dim {
        let lhs = phi.eval(&h.antipode(&h.basis(b)));
        let rhs = phi.eval(&h.mul_unchecked(&h.basis(b), &delta));
        if lhs != rhs {
            return Err(Error::InconsistentSystem(format!("φ(S(e_{b})) ≠ φ(e_{b}δ)")));
        }
    }
    Ok(delta)
}

/// `G_ij = ω(e_i e_j)`.
pub fn gram(h: &HopfData, omega: &Functional) -> Mat {
    let n = h.dim;
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for (j, k, c) in h.mult.slice(i) {
            if !omega.0[*k].is_zero() {
                let v = g.get(i, *j) + &(c * &omega.0[*k]);
                g.set(i, *j, v);
            }
        }
    }
    g
}

/// The automorphism with `ω(ab) = ω(bσ(a))`; `Gσ = Gᵀ`.
pub fn compute_modular_automorphism(h: &HopfData, omega: &Functional, side: Side) -> Result<Mat> {
    let g = gram(h, omega);
    let g_inv = g.inverse().map_err(|_| Error::NotFaithful)?;
    let sigma = g_inv.mul(&g.transpose())?;
    let name = match side {
        Side::Left => "σ",
        Side::Right => "σ′",
    };
    if h.apply(&sigma, &h.one()) != h.one() {
        return Err(Error::NotAutomorphism(format!("{name}(1) ≠ 1")));
    }
    let images: Vec<Elem> = (0..h.dim).map(|i| h.apply(&sigma, &h.basis(i))).collect();
    for i in 0..h.dim {
        for j in 0..h.dim {
            let lhs = h.apply(&sigma, &h.mul_basis(i, j));
            let rhs = h.mul_unchecked(&images[i], &images[j]);
            if lhs != rhs {
                return Err(Error::NotAutomorphism(format!("{name} not multiplicative at ({i},{j})")));
            }
        }
    }
    Ok(sigma)
}

/// `ν` with `φ∘S² = νφ`.
pub fn compute_scaling_constant(h: &HopfData, phi: &Functional) -> Result<CycScalar> {
    let phi_s2 = compose_with(phi, &h.antipode_squared());
    let a = phi.first_nonzero().ok_or(Error::NoIntegral)?;
    let nu = phi_s2.0[a].try_div(&phi.0[a])?;
    if phi_s2 != phi.scale(&nu) {
        return Err(Error::NotProportional);
    }
    Ok(nu)
}

pub fn compute_modular_data(h: &HopfData) -> Result<ModularData> {
    let phi = compute_left_integral(h)?;
    let psi = compute_right_integral(h, &phi)?;
    let delta = compute_modular_element(h, &phi)?;
    let delta_inv = h.antipode(&delta);
    if h.mul_unchecked(&delta, &delta_inv) != h.one() {
        return Err(Error::NotGroupLike("δ·S(δ) ≠ 1".into()));
    }
    let sigma = compute_modular_automorphism(h, &phi, Side::Left)?;
    let sigma_prime = compute_modular_automorphism(h, &psi, Side::Right)?;
    let nu = compute_scaling_constant(h, &phi)?;
    Ok(ModularData { phi, psi, delta, delta_inv, sigma, sigma_prime, nu })
}

fn first_basis_failure(n: usize, mut ok: impl FnMut(usize) -> bool) -> Option<String> {
    (0..n).find(|&a| !ok(a)).map(|a| format!("fails at basis element {a}"))
}

/// The six identities tying `S`, `σ`, `σ′`, `δ`, `ν` and `φ` together.
pub fn verify_modular_identities(h: &HopfData, md: &ModularData) -> Report {
    let n = h.dim;
    let s = &h.antipode;
    let s2 = h.antipode_squared();
    let mut report = Report::new();

    let sss = md.sigma.mul(s).and_then(|m| m.mul(&md.sigma_prime));
    report.push(Check::from_failure(
        "modular.sigma-antipode",
        "σ∘S∘σ′=S",
        match sss {
            Ok(m) if &m == s => None,
            Ok(_) => Some("σSσ′ differs from S".into()),
            Err(e) => Some(e.to_string()),
        },
    ));

    report.push(Check::from_failure(
        "modular.delta-intertwines",
        "δσ(a)=σ′(a)δ",
        first_basis_failure(n, |a| {
            let sa = h.apply(&md.sigma, &h.basis(a));
            let spa = h.apply(&md.sigma_prime, &h.basis(a));
            h.mul_unchecked(&md.delta, &sa) == h.mul_unchecked(&spa, &md.delta)
        }),
    ));

    report.push(Check::from_failure(
        "modular.coproduct-sigma",
        "Δ(σ(a))=(S²⊗σ)Δ(a)",
        first_basis_failure(n, |a| {
            let lhs = h.comult(&h.apply(&md.sigma, &h.basis(a)));
            let rhs = h.comult(&h.basis(a)).map(&s2, &md.sigma);
            lhs == rhs
        }),
    ));

    let commute = |x: &Mat, y: &Mat| x.mul(y).ok() == y.mul(x).ok();
    let pairs = [
        ("S²,σ", commute(&s2, &md.sigma)),
        ("S²,σ′", commute(&s2, &md.sigma_prime)),
        ("σ,σ′", commute(&md.sigma, &md.sigma_prime)),
    ];
    report.push(Check::from_failure(
        "modular.commuting",
        "S²,σ,σ′commute",
        pairs.iter().find(|(_, ok)| !ok).map(|(p, _)| format!("{p} do not commute")),
    ));

    let target = md.nu.inv().map(|inv| md.delta.scale(&inv));
    let on_delta = match target {
        Ok(t) => {
            if h.apply(&md.sigma, &md.delta) != t {
                Some("σ(δ) ≠ ν⁻¹δ".to_string())
            } else if h.apply(&md.sigma_prime, &md.delta) != t {
                Some("σ′(δ) ≠ ν⁻¹δ".to_string())
            } else {
                None
            }
        }
        Err(e) => Some(e.to_string()),
    };
    report.push(Check::from_failure("modular.sigma-on-delta", "σ(δ)=σ′(δ)=ν⁻¹δ", on_delta));

    let g = gram(h, &md.phi);
    let mut exchange = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let mut lhs = Elem::zero(n);
            for (i, j, c) in h.comult.slice(a) {
                let gv = g.get(*j, b);
                if !gv.is_zero() {
                    lhs.0[*i] = &lhs.0[*i] + &(c * gv);
                }
            }
            let mut rhs = Elem::zero(n);
            for (i, j, c) in h.comult.slice(b) {
                let gv = g.get(a, *j);
                if !gv.is_zero() {
                    rhs.0[*i] = &rhs.0[*i] + &(c * gv);
                }
            }
            if h.antipode(&lhs) != rhs {
                exchange = Some(format!("fails at basis pair ({a},{b})"));
                break 'outer;
            }
        }
    }
    report.push(Check::from_failure(
        "modular.antipode-exchange",
        "S((ι⊗φ)(Δ(a)(1⊗b)))=(ι⊗φ)((1⊗a)Δ(b))",
        exchange,
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, Group};

    #[test]
    fn group_algebra_integral_is_coefficient_of_identity() {
        let h = zoo::group_algebra(&Group::cyclic(2));
        assert_eq!(compute_left_integral(&h).unwrap(), Functional::from_ints(&[1, 0]));
    }

    #[test]
    fn function_algebra_integral_is_haar_sum() {
        let h = zoo::function_algebra(&Group::cyclic(2));
        assert_eq!(compute_left_integral(&h).unwrap(), Functional::from_ints(&[1, 1]));
    }

    #[test]
    fn sweedler_modular_data() {
        let h = zoo::sweedler();
        let md = compute_modular_data(&h).unwrap();
        assert_eq!(md.phi, Functional::from_ints(&[0, 0, 0, 1]));
        // ψ = φ∘S with S(x) = −gx, S(gx) = x.
        assert_eq!(md.psi, Functional::from_ints(&[0, 0, -1, 0]));
        assert_eq!(md.delta, h.basis(1));
        assert_eq!(md.delta_inv, h.basis(1));
        assert_eq!(h.apply(&md.sigma, &h.basis(2)), h.basis(2).scale(&CycScalar::from_int(-1)));
        // φ(xg) = −φ(gx) forces σ(g) = −g; S²(gx) = −gx gives ν = −1.
        assert_eq!(h.apply(&md.sigma, &h.basis(1)), h.basis(1).scale(&CycScalar::from_int(-1)));
        assert_eq!(md.nu, CycScalar::from_int(-1));
        assert!(verify_modular_identities(&h, &md).all_passed());
    }

    #[test]
    fn identity_sigma_is_caught() {
        let h = zoo::sweedler();
        let mut md = compute_modular_data(&h).unwrap();
        md.sigma = Mat::identity(4);
        let r = verify_modular_identities(&h, &md);
        assert!(r.get("modular.sigma-antipode").unwrap().failed());
        assert!(r.get("modular.coproduct-sigma").unwrap().failed());
    }

    #[test]
    fn taft_nine() {
        let h = zoo::taft(3, &CycScalar::zeta(3, 1)).unwrap();
        let md = compute_modular_data(&h).unwrap();
        // φ lives in x-degree 2 and S²(x) = qx, so ν = q² = q⁻¹.
        assert_eq!(md.nu, CycScalar::zeta(3, 2));
        let order = md.sigma.multiplicative_order(12).unwrap();
        assert_eq!(6 % order, 0);
        let g = h.basis(1);
        let powers = [h.one(), g.clone(), h.mul_unchecked(&g, &g)];
        assert!(powers.contains(&md.delta));
        assert!(verify_modular_identities(&h, &md).all_passed());
    }

    #[test]
    fn singular_gram_is_not_faithful() {
        let h = zoo::sweedler();
        let bad = Functional::from_ints(&[1, 0, 0, 0]);
        assert_eq!(compute_modular_automorphism(&h, &bad, Side::Left), Err(Error::NotFaithful));
    }
}

//! Positivity of the integral and the finite-dimensional GNS construction:
//! modular conjugation, modular operator, commutant and the operator form of
//! Radford's formula.
//!
//! Conjugate-linear operators are stored as a matrix `M` meaning `u ↦ M·conj(u)`.
//! Vectors are written in orthonormal coordinates `u = L*x`, where `G = LL*`
//! is the Cholesky factorisation of the Gram matrix `G_ij = φ(e_i* e_j)`.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::duality::{compute_dual_integrals, DualPair};
use crate::error::{Error, Result};
use crate::hopf::{Elem, Functional, HopfData};
use crate::integrals::ModularData;
use crate::linalg::Mat;
use crate::report::{Check, Report};
use crate::scalar::CycScalar;

pub type CMat = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub enum Positivity {
    /// `sign·φ` is positive; `normalisation` rescales it to `φ(1) = 1`.
    Positive { sign: i64, normalisation: Option<CycScalar> },
    NotPositive { reason: String },
    NoStar,
}

impl Positivity {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::Positive { .. })
    }

    pub fn sign(&self) -> i64 {
        match self {
            Positivity::Positive { sign, .. } => *sign,
            _ => 1,
        }
    }
}

pub fn to_cmat(m: &Mat) -> CMat {
    CMat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_complex())
}

fn to_cvec(v: &[CycScalar]) -> DVector<Complex64> {
    DVector::from_iterator(v.len(), v.iter().map(CycScalar::to_complex))
}

fn norm(m: &CMat) -> f64 {
    m.norm()
}

/// `G_ij = ω(e_i* e_j)` over floats.
pub fn star_gram(h: &HopfData, omega: &Functional) -> Option<CMat> {
    let n = h.dim;
    let stars: Vec<Elem> = (0..n).map(|i| h.star(&h.basis(i))).collect::<Option<_>>()?;
    Some(CMat::from_fn(n, n, |i, j| omega.eval(&h.mul_unchecked(&stars[i], &h.basis(j))).to_complex()))
}

fn hermitian_spectrum(g: &CMat, tol: f64) -> Option<DVector<f64>> {
    if norm(&(g - g.adjoint())) > tol * norm(g).max(1.0) {
        return None;
    }
    Some(SymmetricEigen::new(g.clone()).eigenvalues)
}

/// Is `φ` (or `−φ`) positive with respect to the star?
pub fn check_positive_integral(h: &HopfData, phi: &Functional, tol: f64) -> Positivity {
    let Some(g) = star_gram(h, phi) else {
        return Positivity::NoStar;
    };
    let Some(eig) = hermitian_spectrum(&g, tol) else {
        return Positivity::NotPositive { reason: "φ(a*b) is not Hermitian".into() };
    };
    let sign = if eig.iter().all(|&l| l > tol) {
        1
    } else if eig.iter().all(|&l| l < -tol) {
        -1
    } else {
        return Positivity::NotPositive {
            reason: format!("Gram spectrum spans [{:.3e}, {:.3e}]", eig.min(), eig.max()),
        };
    };
    let at_one = phi.eval(&h.one());
    let normalisation = at_one.inv().ok();
    Positivity::Positive { sign, normalisation }
}

/// `δ = 1`, `σ = ι`, `ν = 1`, `S² = ι`, `δ̂ = 1̂` and positivity of `ψ̂`.
pub fn verify_kac_consequences(dp: &DualPair, verdict: &Positivity, tol: f64) -> Report {
    const NAME: &str = "kac.consequences";
    const REF: &str = "δ=1,δ̂=1,ν=1,σ=ι,S²=ι";
    if !verdict.is_positive() {
        return Report::single(Check::skip(NAME, REF, "not-positive"));
    }
    let h = &dp.primal;
    let md = &dp.primal_modular;
    let id = Mat::identity(h.dim);
    let mut failures = Vec::new();
    if md.delta != h.one() {
        failures.push("δ≠1".to_string());
    }
    if dp.dual_modular.delta != dp.dual.one() {
        failures.push("δ̂≠1".to_string());
    }
    if !md.nu.is_one() {
        failures.push("ν≠1".to_string());
    }
    if md.sigma != id || md.sigma_prime != id {
        failures.push("σ≠ι".to_string());
    }
    if h.antipode_squared() != id {
        failures.push("S²≠ι".to_string());
    }
    match compute_dual_integrals(dp) {
        Ok((psi_hat, _)) => {
            let signed = psi_hat.scale(&CycScalar::from_int(verdict.sign()));
            match star_gram(&dp.dual, &signed).and_then(|g| hermitian_spectrum(&g, tol)) {
                Some(eig) if eig.iter().all(|&l| l > tol) => {}
                _ => failures.push("ψ̂ is not positive".to_string()),
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    Report::single(
        Check::from_failure(NAME, REF, (!failures.is_empty()).then(|| failures.join("; ")))
            .with_detail("finite quantum group"),
    )
}

/// Modular data of a conjugate-linear `T = M∘conj`: `∇ = T*T` and
/// `J = T∇^{-1/2}`.
#[derive(Clone, Debug)]
pub struct Polar {
    pub t: CMat,
    pub nabla: CMat,
    pub j: CMat,
}

fn hermitian_function(m: &CMat, f: impl Fn(f64) -> Complex64) -> Result<CMat> {
    let eig = SymmetricEigen::new(m.clone());
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(Error::NumericalFailure("operator is not positive definite".into()));
    }
    let d = CMat::from_diagonal(&eig.eigenvalues.map(f));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

fn polar(t: CMat) -> Result<Polar> {
    let nabla = t.transpose() * t.conjugate();
    let inv_sqrt = hermitian_function(&nabla, |l| Complex64::new(l.powf(-0.5), 0.0))?;
    let j = &t * inv_sqrt.conjugate();
    Ok(Polar { t, nabla, j })
}

/// `J X J` for a linear `X`.
pub fn conjugate_by(j: &CMat, x: &CMat) -> CMat {
    j * x.conjugate() * j.conjugate()
}

#[derive(Clone, Debug)]
pub struct GnsData {
    pub dim: usize,
    /// `1` or `−1`: the sign making the integral positive.
    pub sign: i64,
    pub gram: CMat,
    /// `L*` with `G = LL*`.
    pub l_adj: CMat,
    pub l_adj_inv: CMat,
    /// `π(e_i)` in orthonormal coordinates.
    pub basis_rep: Vec<CMat>,
    pub polar: Polar,
}

impl GnsData {
    /// `Λ(x)` in orthonormal coordinates.
    pub fn vector(&self, x: &Elem) -> DVector<Complex64> {
        &self.l_adj * to_cvec(&x.0)
    }

    pub fn rep(&self, y: &Elem) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (c, m) in y.0.iter().zip(&self.basis_rep) {
            if !c.is_zero() {
                out += m * c.to_complex();
            }
        }
        out
    }

    /// `x ↦ L* K conj(L^{-*})` for a conjugate-linear map `x ↦ K conj(x)`.
    fn transport_antilinear(&self, k: &CMat) -> CMat {
        &self.l_adj * k * self.l_adj_inv.conjugate()
    }

    fn transport_linear(&self, k: &CMat) -> CMat {
        &self.l_adj * k * &self.l_adj_inv
    }
}

/// The GNS space of a positive integral, with `T: Λ(x) ↦ Λ(x*)` and its
/// polar decomposition.
pub fn gns_build(h: &HopfData, phi: &Functional, verdict: &Positivity, tol: f64) -> Result<GnsData> {
    let sign = match verdict {
        Positivity::Positive { sign, .. } => *sign,
        Positivity::NoStar => return Err(Error::NoStarStructure),
        Positivity::NotPositive { .. } => return Err(Error::NotPositive),
    };
    let star = h.star.as_ref().ok_or(Error::NoStarStructure)?;
    let phi = phi.scale(&CycScalar::from_int(sign));
    let gram = star_gram(h, &phi).ok_or(Error::NoStarStructure)?;
    let chol = Cholesky::new(gram.clone()).ok_or(Error::NotPositive)?;
    let l_adj = chol.l().adjoint();
    let l_adj_inv = l_adj
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NumericalFailure("Cholesky factor is singular".into()))?;
    let n = h.dim;
    let mut g = GnsData {
        dim: n,
        sign,
        gram,
        l_adj,
        l_adj_inv,
        basis_rep: Vec::with_capacity(n),
        polar: Polar { t: CMat::zeros(0, 0), nabla: CMat::zeros(0, 0), j: CMat::zeros(0, 0) },
    };
    g.basis_rep = (0..n).map(|i| g.transport_linear(&to_cmat(&h.left_mult_matrix(&h.basis(i))))).collect();
    g.polar = polar(g.transport_antilinear(&to_cmat(star)))?;

    for i in 0..n {
        let lhs = g.basis_rep[i].adjoint();
        let rhs = g.rep(&h.star(&h.basis(i)).expect("star present"));
        if norm(&(lhs - rhs)) > tol {
            return Err(Error::NumericalFailure(format!("π(e_{i})* ≠ π(e_{i}*)")));
        }
    }
    let t = &g.polar.t;
    if norm(&(t * t.conjugate() - CMat::identity(n, n))) > tol {
        return Err(Error::NumericalFailure("T² ≠ I".into()));
    }
    let j = &g.polar.j;
    if norm(&(j * j.conjugate() - CMat::identity(n, n))) > tol {
        return Err(Error::NumericalFailure("J² ≠ I".into()));
    }
    if norm(&(j.adjoint() * j - CMat::identity(n, n))) > tol {
        return Err(Error::NumericalFailure("J is not isometric".into()));
    }
    Ok(g)
}

/// `max_k ‖J∇^{1/2}Λ(e_k) − Λ(e_k*)‖`.
pub fn star_residual(h: &HopfData, g: &GnsData) -> Result<f64> {
    let sqrt = hermitian_function(&g.polar.nabla, |l| Complex64::new(l.sqrt(), 0.0))?;
    let mut worst: f64 = 0.0;
    for k in 0..h.dim {
        let u = g.vector(&h.basis(k));
        let tu = &g.polar.j * (&sqrt * u).conjugate();
        let target = g.vector(&h.star(&h.basis(k)).ok_or(Error::NoStarStructure)?);
        worst = worst.max((tu - target).norm());
    }
    Ok(worst)
}

pub fn nabla_deviation(g: &GnsData) -> f64 {
    norm(&(&g.polar.nabla - CMat::identity(g.dim, g.dim)))
}

fn numerical_rank(m: &CMat, tol: f64) -> usize {
    m.clone().svd(false, false).singular_values.iter().filter(|&&s| s > tol).count()
}

fn vec_of(m: &CMat) -> DVector<Complex64> {
    DVector::from_column_slice(m.as_slice())
}

/// Orthonormal basis (as columns of vectorised matrices) of
/// `M′ = {X : [X, π(e_i)] = 0}`.
pub fn commutant_basis(g: &GnsData, tol: f64) -> CMat {
    let n = g.dim;
    let nn = n * n;
    let id = CMat::identity(n, n);
    // vec(AX − XA) = (I⊗A − Aᵀ⊗I) vec(X) for column-major vec.
    let mut system = CMat::zeros(nn * n, nn);
    for (b, a) in g.basis_rep.iter().enumerate() {
        let block = id.kronecker(a) - a.transpose().kronecker(&id);
        system.view_mut((b * nn, 0), (nn, nn)).copy_from(&block);
    }
    let svd = system.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let cols: Vec<DVector<Complex64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect();
    let mut out = CMat::zeros(nn, cols.len());
    for (c, v) in cols.iter().enumerate() {
        out.set_column(c, v);
    }
    out
}

/// `J M J ⊆ M′`, the dimension count `dim M′ = dim JMJ`, and `∇ = I`.
pub fn verify_commutant(g: &GnsData, tol: f64, membership_tol: f64) -> Report {
    const NAME: &str = "gns.commutant";
    const REF: &str = "JMJ=M′,∇^{it}M∇^{-it}=M";
    let basis = commutant_basis(g, membership_tol);
    let reps_j: Vec<CMat> = g.basis_rep.iter().map(|x| conjugate_by(&g.polar.j, x)).collect();
    let mut worst: f64 = 0.0;
    for y in &reps_j {
        let v = vec_of(y);
        let proj = &basis * (basis.adjoint() * &v);
        worst = worst.max((v - proj).norm());
    }
    let mut stacked = CMat::zeros(g.dim * g.dim, reps_j.len());
    for (c, y) in reps_j.iter().enumerate() {
        stacked.set_column(c, &vec_of(y));
    }
    let dim_jmj = numerical_rank(&stacked, membership_tol);
    let dim_commutant = basis.ncols();
    let nabla_dev = nabla_deviation(g);
    let mut failures = Vec::new();
    if worst > membership_tol {
        failures.push(format!("JMJ ⊄ M′ (residual {worst:.3e})"));
    }
    if dim_jmj != dim_commutant {
        failures.push(format!("dim JMJ = {dim_jmj} but dim M′ = {dim_commutant}"));
    }
    if nabla_dev > tol {
        failures.push(format!("‖∇ − I‖ = {nabla_dev:.3e}"));
    }
    Report::single(
        Check::from_failure(NAME, REF, (!failures.is_empty()).then(|| failures.join("; ")))
            .with_detail(format!("dim M′ = {dim_commutant}, membership residual {worst:.3e}, ‖∇ − I‖ = {nabla_dev:.3e}")),
    )
}

/// `X^{it}` for a positive operator `X`.
fn imaginary_power(x: &CMat, t: f64, tol: f64) -> Result<CMat> {
    if norm(&(x - x.adjoint())) > tol {
        return Err(Error::NumericalFailure("operator is not self-adjoint".into()));
    }
    hermitian_function(x, |l| Complex64::new(0.0, t * l.ln()).exp())
}

/// The dual side transported onto the GNS space of `φ` through
/// `Λ̂(x̂) = Λ(x)`.
#[derive(Clone, Debug)]
pub struct DualGns {
    pub basis_rep: Vec<CMat>,
    pub polar: Polar,
}

impl DualGns {
    pub fn rep(&self, b: &Elem) -> CMat {
        let n = self.polar.t.nrows();
        let mut out = CMat::zeros(n, n);
        for (c, m) in b.0.iter().zip(&self.basis_rep) {
            if !c.is_zero() {
                out += m * c.to_complex();
            }
        }
        out
    }
}

pub fn dual_gns(dp: &DualPair, g: &GnsData, tol: f64) -> Result<DualGns> {
    let (psi_hat, _) = compute_dual_integrals(dp)?;
    let sign = Complex64::new(g.sign as f64, 0.0);
    let f = to_cmat(&dp.fourier) * sign;
    let f_inv = f.clone().try_inverse().ok_or(Error::NotBijective)?;
    let psi_hat = psi_hat.scale(&CycScalar::from_int(g.sign));
    let dual_gram = star_gram(&dp.dual, &psi_hat).ok_or(Error::NoStarStructure)?;
    // Plancherel: the Fourier map is isometric from (A, φ) to (Â, ψ̂).
    if norm(&(f.adjoint() * &dual_gram * &f - &g.gram)) > tol * norm(&g.gram).max(1.0) {
        return Err(Error::NumericalFailure("Fourier transform is not isometric".into()));
    }
    let d = to_cmat(dp.dual.star.as_ref().ok_or(Error::NoStarStructure)?);
    let k = &f_inv * d * f.conjugate();
    let basis_rep = (0..dp.dual.dim)
        .map(|b| g.transport_linear(&(&f_inv * to_cmat(&dp.dual.left_mult_matrix(&dp.dual.basis(b))) * &f)))
        .collect();
    Ok(DualGns { basis_rep, polar: polar(g.transport_antilinear(&k))? })
}

/// `P^{-2it} = δ^{it}(Jδ^{it}J)δ̂^{it}(Ĵδ̂^{it}Ĵ)` at several `t`, with the
/// finite forms `∇̂π(x)∇̂⁻¹ = π(x)` and `Ĵπ(δ)Ĵ = π(δ⁻¹)`.
pub fn verify_operator_radford(dp: &DualPair, g: &GnsData, tol: f64, membership_tol: f64) -> Result<Report> {
    let h = &dp.primal;
    let md: &ModularData = &dp.primal_modular;
    let dg = dual_gns(dp, g, tol)?;
    let n = g.dim;
    let id = CMat::identity(n, n);
    let nu = md.nu.to_complex();
    if nu.im.abs() > tol || nu.re <= 0.0 {
        return Err(Error::NumericalFailure(format!("ν = {nu} is not positive")));
    }
    let rep_delta = g.rep(&md.delta);
    let rep_dual_delta = dg.rep(&dp.dual_modular.delta);
    let xi0 = g.vector(&h.one());
    let mut report = Report::new();

    let mut worst_identity: f64 = 0.0;
    let mut worst_factor: f64 = 0.0;
    for &t in &[0.5, 1.0, 2.5] {
        let nabla_hat_it = imaginary_power(&dg.polar.nabla, t, tol)?;
        let nabla_hat_mit = imaginary_power(&dg.polar.nabla, -t, tol)?;
        let mut images = CMat::zeros(n, n);
        for k in 0..n {
            let col = &nabla_hat_it * &g.basis_rep[k] * &nabla_hat_mit * &xi0 * Complex64::new(nu.re.powf(t / 2.0), 0.0);
            images.set_column(k, &col);
        }
        let p_it = images * &g.l_adj_inv;
        let p_it_inv = p_it.clone().try_inverse().ok_or_else(|| Error::NumericalFailure("P^{it} is singular".into()))?;
        let lhs = &p_it_inv * &p_it_inv;

        let d_it = imaginary_power(&rep_delta, t, tol)?;
        let dh_it = imaginary_power(&rep_dual_delta, t, tol)?;
        let factors = [
            d_it.clone(),
            conjugate_by(&g.polar.j, &d_it),
            dh_it.clone(),
            conjugate_by(&dg.polar.j, &dh_it),
        ];
        let rhs = &factors[0] * &factors[1] * &factors[2] * &factors[3];
        worst_identity = worst_identity.max(norm(&(lhs - rhs)));
        for f in &factors {
            worst_factor = worst_factor.max(norm(&(f - &id)));
        }
    }
    report.push(
        Check::from_failure(
            "gns.operator-radford",
            "P^{-2it}=δ^{it}(Jδ^{it}J)δ̂^{it}(Ĵδ̂^{it}Ĵ)",
            (worst_identity > tol).then(|| format!("residual {worst_identity:.3e}")),
        )
        .with_detail(format!("t ∈ {{0.5, 1, 2.5}}: residual {worst_identity:.3e}, max ‖factor − I‖ = {worst_factor:.3e}"))
        .with_detail(format!("‖Ĵ − J‖ = {:.3e}", norm(&(&dg.polar.j - &g.polar.j)))),
    );

    report.push(Check::from_failure(
        "gns.factors-identity",
        "δ^{it}=Jδ^{it}J=δ̂^{it}=Ĵδ̂^{it}Ĵ=I",
        (worst_factor > tol).then(|| format!("max ‖factor − I‖ = {worst_factor:.3e}")),
    ));

    let nabla_hat_inv = dg
        .polar
        .nabla
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NumericalFailure("∇̂ is singular".into()))?;
    let tau = g
        .basis_rep
        .iter()
        .map(|x| norm(&(&dg.polar.nabla * x * &nabla_hat_inv - x)))
        .fold(0.0, f64::max);
    report.push(Check::from_failure(
        "gns.scaling-group-trivial",
        "τ_t(x)=∇̂^{it}x∇̂^{-it}=x",
        (tau > membership_tol).then(|| format!("residual {tau:.3e}")),
    ));

    let lhs = conjugate_by(&dg.polar.j, &rep_delta);
    let rhs = g.rep(&md.delta_inv);
    let jd = norm(&(lhs - rhs));
    report.push(Check::from_failure(
        "gns.dual-conjugation-delta",
        "ĴδĴ=δ⁻¹",
        (jd > tol).then(|| format!("residual {jd:.3e}")),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::build_dual;
    use crate::integrals::compute_modular_data;
    use crate::zoo::{self, Group};

    const TOL: f64 = 1e-9;

    fn setup(h: &HopfData) -> (DualPair, Positivity, GnsData) {
        let md = compute_modular_data(h).unwrap();
        let dp = build_dual(h, &md).unwrap();
        let verdict = check_positive_integral(h, &md.phi, TOL);
        let g = gns_build(h, &md.phi, &verdict, TOL).unwrap();
        (dp, verdict, g)
    }

    #[test]
    fn verdicts() {
        let s3 = zoo::group_algebra(&Group::symmetric3());
        let phi = compute_modular_data(&s3).unwrap().phi;
        assert!(check_positive_integral(&s3, &phi, TOL).is_positive());
        let h4 = zoo::sweedler();
        let phi = compute_modular_data(&h4).unwrap().phi;
        assert!(matches!(check_positive_integral(&h4, &phi, TOL), Positivity::NotPositive { .. }));
        let mut bare = h4.clone();
        bare.star = None;
        assert_eq!(check_positive_integral(&bare, &phi, TOL), Positivity::NoStar);
    }

    #[test]
    fn cyclic_group_is_tracial() {
        let h = zoo::group_algebra(&Group::cyclic(2));
        let (dp, verdict, g) = setup(&h);
        assert!(nabla_deviation(&g) < 1e-12);
        assert!(star_residual(&h, &g).unwrap() < 1e-12);
        assert!(verify_kac_consequences(&dp, &verdict, TOL).all_passed());
        let r = verify_commutant(&g, TOL, 1e-8);
        assert!(r.all_passed(), "{r:?}");
        assert!(r.checks[0].details[0].contains("dim M′ = 2"));
        assert!(verify_operator_radford(&dp, &g, TOL, 1e-8).unwrap().all_passed());
    }

    #[test]
    fn symmetric_group_both_sides() {
        for h in [zoo::group_algebra(&Group::symmetric3()), zoo::function_algebra(&Group::symmetric3())] {
            let (dp, _, g) = setup(&h);
            let r = verify_commutant(&g, TOL, 1e-8);
            assert!(r.all_passed(), "{}: {r:?}", h.name);
            assert!(r.checks[0].details[0].contains("dim M′ = 6"), "{:?}", r.checks[0].details);
            let op = verify_operator_radford(&dp, &g, TOL, 1e-8).unwrap();
            assert!(op.all_passed(), "{}: {op:?}", h.name);
        }
    }
}

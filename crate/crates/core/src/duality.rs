//! The dual Hopf algebra on the coordinate dual basis, the canonical actions
//! of `Â` on `A`, the Fourier transform and the dual integrals.
//!
//! An element of `Â` is stored as an [`Elem`] of the dual [`HopfData`]; its
//! coordinates are its values on the basis of `A`, so the pairing matrix is
//! the identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{verify_hopf, verify_star, Elem, Functional, HopfData};
use crate::integrals::{compose_with, compute_modular_data, gram, is_left_invariant, is_right_invariant, ModularData};
use crate::linalg::{dot, Mat};
use crate::morphism::verify_hopf_morphism;
use crate::report::{Check, Report};
use crate::scalar::CycScalar;

#[derive(Clone, Debug)]
pub struct DualPair {
    pub primal: HopfData,
    pub dual: HopfData,
    /// `⟨e_i, f_j⟩`; the identity by construction.
    pub pairing: Mat,
    /// Column `k` holds the coordinates of `ê_k = φ(·e_k)`.
    pub fourier: Mat,
    pub primal_modular: ModularData,
    pub dual_modular: ModularData,
}

fn dual_name(name: &str) -> String {
    match name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({name})"),
    }
}

/// Structure constants of `Â` by transposition. The star, when present, is
/// `f*(a) = conj(f(S(a)*))`.
pub fn dual_hopf(h: &HopfData) -> HopfData {
    let star = h.star.as_ref().map(|st| {
        st.conj().mul(&h.antipode).expect("square matrices").transpose()
    });
    HopfData {
        name: dual_name(&h.name),
        dim: h.dim,
        field_order: h.field_order,
        mult: h.comult.permute([2, 0, 1]),
        unit: h.counit.as_elem(),
        comult: h.mult.permute([1, 2, 0]),
        counit: h.unit.as_functional(),
        antipode: h.antipode.transpose(),
        star,
    }
}

pub fn build_dual(h: &HopfData, md: &ModularData) -> Result<DualPair> {
    let dual = dual_hopf(h);
    let report = verify_hopf(&dual);
    if let Some(bad) = report.first_failure() {
        return Err(Error::DualVerificationFailed(bad.name.clone()));
    }
    if dual.star.is_some() {
        let stars = verify_star(&dual)?;
        if let Some(bad) = stars.first_failure() {
            return Err(Error::DualVerificationFailed(bad.name.clone()));
        }
    }
    let fourier = gram(h, &md.phi);
    if fourier.rank() != h.dim {
        return Err(Error::NotBijective);
    }
    let dual_modular =
        compute_modular_data(&dual).map_err(|e| Error::DualVerificationFailed(format!("dual integrals: {e}")))?;
    Ok(DualPair {
        primal: h.clone(),
        pairing: Mat::identity(h.dim),
        dual,
        fourier,
        primal_modular: md.clone(),
        dual_modular,
    })
}

/// `b⊳e_k = Σ comult[k][i][j] b_j e_i`.
pub fn act_left(h: &HopfData, b: &Elem, a: &Elem) -> Result<Elem> {
    check_dims(h, b, a)?;
    let mut out = Elem::zero(h.dim);
    for (k, ak) in a.0.iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        for (i, j, c) in h.comult.slice(k) {
            if !b.0[*j].is_zero() {
                out.0[*i] = &out.0[*i] + &(&(c * &b.0[*j]) * ak);
            }
        }
    }
    Ok(out)
}

/// `e_k⊲b = Σ comult[k][i][j] b_i e_j`.
pub fn act_right(h: &HopfData, a: &Elem, b: &Elem) -> Result<Elem> {
    check_dims(h, b, a)?;
    let mut out = Elem::zero(h.dim);
    for (k, ak) in a.0.iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        for (i, j, c) in h.comult.slice(k) {
            if !b.0[*i].is_zero() {
                out.0[*j] = &out.0[*j] + &(&(c * &b.0[*i]) * ak);
            }
        }
    }
    Ok(out)
}

fn check_dims(h: &HopfData, b: &Elem, a: &Elem) -> Result<()> {
    for d in [b.dim(), a.dim()] {
        if d != h.dim {
            return Err(Error::DimMismatch { expected: h.dim, got: d });
        }
    }
    Ok(())
}

/// Matrix of `a ↦ b⊳a`.
pub fn left_action_matrix(h: &HopfData, b: &Elem) -> Mat {
    let cols: Vec<Vec<CycScalar>> =
        (0..h.dim).map(|k| act_left(h, b, &h.basis(k)).expect("matching dims").0).collect();
    Mat::from_columns(&cols).expect("square")
}

/// Matrix of `a ↦ a⊲b`.
pub fn right_action_matrix(h: &HopfData, b: &Elem) -> Mat {
    let cols: Vec<Vec<CycScalar>> =
        (0..h.dim).map(|k| act_right(h, &h.basis(k), b).expect("matching dims").0).collect();
    Mat::from_columns(&cols).expect("square")
}

/// `â = φ(·a)`.
pub fn fourier(dp: &DualPair, a: &Elem) -> Result<Elem> {
    Ok(Elem(dp.fourier.mul_vec(&a.0)?))
}

/// `ψ̂(â) = ε(a)` and `φ̂ = ψ̂∘Ŝ`, checked against the integrals computed
/// directly on `Â`.
pub fn compute_dual_integrals(dp: &DualPair) -> Result<(Functional, Functional)> {
    let f_inv = dp.fourier.inverse().map_err(|_| Error::NotBijective)?;
    let psi_hat = compose_with(&dp.primal.counit, &f_inv);
    if !is_right_invariant(&dp.dual, &psi_hat) {
        return Err(Error::InconsistentWithDirectComputation("ψ̂ is not right invariant".into()));
    }
    let phi_hat = compose_with(&psi_hat, &dp.dual.antipode);
    if !is_left_invariant(&dp.dual, &phi_hat) {
        return Err(Error::InconsistentWithDirectComputation("ψ̂∘Ŝ is not left invariant".into()));
    }
    if !proportional(&psi_hat.0, &dp.dual_modular.psi.0) {
        return Err(Error::InconsistentWithDirectComputation("ψ̂ is not a multiple of the right integral".into()));
    }
    if !proportional(&phi_hat.0, &dp.dual_modular.phi.0) {
        return Err(Error::InconsistentWithDirectComputation("φ̂ is not a multiple of the left integral".into()));
    }
    Ok((psi_hat, phi_hat))
}

/// Nonzero vectors `u`, `v` with `u = λv`.
pub fn proportional(u: &[CycScalar], v: &[CycScalar]) -> bool {
    let Some(p) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if u[p].is_zero() {
        return false;
    }
    let ratio = u[p].try_div(&v[p]).expect("nonzero");
    u.iter().zip(v).all(|(x, y)| *x == y * &ratio)
}

/// Module laws, commutation of the two actions, pairing compatibility and
/// unitality of the actions.
pub fn verify_pairing(dp: &DualPair) -> Report {
    let h = &dp.primal;
    let d = &dp.dual;
    let n = h.dim;
    let lefts: Vec<Mat> = (0..n).map(|b| left_action_matrix(h, &d.basis(b))).collect();
    let rights: Vec<Mat> = (0..n).map(|b| right_action_matrix(h, &d.basis(b))).collect();
    let mut report = Report::new();

    let mut module = None;
    if left_action_matrix(h, &d.one()) != Mat::identity(n) || right_action_matrix(h, &d.one()) != Mat::identity(n) {
        module = Some("the unit of Â does not act trivially".to_string());
    }
    'laws: for b in 0..n {
        for c in 0..n {
            let bc = d.mul_basis(b, c);
            if left_action_matrix(h, &bc) != lefts[b].mul(&lefts[c]).expect("square") {
                module = Some(format!("(bb′)⊳a ≠ b⊳(b′⊳a) at ({b},{c})"));
                break 'laws;
            }
            if right_action_matrix(h, &bc) != rights[c].mul(&rights[b]).expect("square") {
                module = Some(format!("a⊲(bb′) ≠ (a⊲b)⊲b′ at ({b},{c})"));
                break 'laws;
            }
            if lefts[b].mul(&rights[c]).expect("square") != rights[c].mul(&lefts[b]).expect("square") {
                module = Some(format!("actions do not commute at ({b},{c})"));
                break 'laws;
            }
        }
    }
    report.push(Check::from_failure("dual.actions", "(bb′)⊳a=b⊳(b′⊳a),(b⊳a)⊲b′=b⊳(a⊲b′)", module));

    let mut compat = None;
    'pairs: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let pa = h.basis(a);
                let bc = d.mul_basis(b, c);
                let cb = d.mul_basis(c, b);
                let left = act_left(h, &d.basis(b), &pa).expect("dims");
                let right = act_right(h, &pa, &d.basis(b)).expect("dims");
                if left.0[c] != cb.0[a] {
                    compat = Some(format!("⟨b⊳a,b′⟩ ≠ ⟨a,b′b⟩ at ({a},{b},{c})"));
                    break 'pairs;
                }
                if right.0[c] != bc.0[a] {
                    compat = Some(format!("⟨a⊲b,b′⟩ ≠ ⟨a,bb′⟩ at ({a},{b},{c})"));
                    break 'pairs;
                }
            }
        }
    }
    report.push(Check::from_failure("dual.pairing", "⟨b⊳a,b′⟩=⟨a,b′b⟩,⟨a⊲b,b′⟩=⟨a,bb′⟩", compat));

    let mut cols = Vec::with_capacity(n * n);
    for m in &lefts {
        for k in 0..n {
            cols.push(m.column(k));
        }
    }
    let rank = Mat::from_columns(&cols).map(|m| m.rank()).unwrap_or(0);
    report.push(Check::from_failure(
        "dual.action-span",
        "span{b⊳a}=A",
        (rank != n).then(|| format!("span has rank {rank}, expected {n}")),
    ));
    report
}

/// The four identities linking `σ`, `σ′`, `S²` and `δ̂`.
pub fn verify_dual_modular_identities(dp: &DualPair) -> Report {
    let h = &dp.primal;
    let md = &dp.primal_modular;
    let n = h.dim;
    let dh = &dp.dual_modular.delta;
    let dh_inv = &dp.dual_modular.delta_inv;
    let s2 = h.antipode_squared();
    let mut report = Report::new();

    let eps_sigma = compose_with(&h.counit, &md.sigma);
    report.push(Check::from_failure(
        "dual.counit-sigma",
        "δ̂⁻¹=ε∘σ",
        (eps_sigma.0 != dh_inv.0).then(|| "ε∘σ differs from δ̂⁻¹".to_string()),
    ));

    let first_bad = |f: &dyn Fn(&Elem) -> bool| (0..n).find(|&a| !f(&h.basis(a))).map(|a| format!("fails at basis element {a}"));
    report.push(Check::from_failure(
        "dual.sigma-action",
        "σ(a)=δ̂⁻¹⊳S²(a)",
        first_bad(&|a| h.apply(&md.sigma, a) == act_left(h, dh_inv, &h.apply(&s2, a)).expect("dims")),
    ));

    let sigma_inv = md.sigma.inverse();
    report.push(Check::from_failure(
        "dual.left-action-delta-hat",
        "δ̂⊳a=S²(σ⁻¹(a))",
        match &sigma_inv {
            Ok(si) => first_bad(&|a| act_left(h, dh, a).expect("dims") == h.apply(&s2, &h.apply(si, a))),
            Err(e) => Some(e.to_string()),
        },
    ));
    report.push(Check::from_failure(
        "dual.right-action-delta-hat-inv",
        "a⊲δ̂⁻¹=S²(σ′(a))",
        first_bad(&|a| act_right(h, a, dh_inv).expect("dims") == h.apply(&s2, &h.apply(&md.sigma_prime, a))),
    ));
    report
}

/// Deterministic sample of elements with small rational coordinates.
pub fn sample_elements(n: usize, count: usize, seed: u64) -> Vec<Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Elem(
                (0..n)
                    .map(|_| CycScalar::from_ratio(rng.random_range(-5..=5), rng.random_range(1..=4)))
                    .collect(),
            )
        })
        .collect()
}

/// `ψ̂(â*â) = φ(a*a)` on the basis and on `samples` seeded elements.
pub fn verify_plancherel(dp: &DualPair, seed: u64, samples: usize) -> Result<Report> {
    let h = &dp.primal;
    if h.star.is_none() || dp.dual.star.is_none() {
        return Err(Error::NoStarStructure);
    }
    let (psi_hat, _) = compute_dual_integrals(dp)?;
    let phi = &dp.primal_modular.phi;
    let mut elems: Vec<Elem> = (0..h.dim).map(|i| h.basis(i)).collect();
    elems.extend(sample_elements(h.dim, samples, seed));
    let mut failure = None;
    for (idx, a) in elems.iter().enumerate() {
        let a_star = h.star(a).expect("star present");
        let lhs_primal = phi.eval(&h.mul_unchecked(&a_star, a));
        let ah = fourier(dp, a)?;
        let ah_star = dp.dual.star(&ah).expect("dual star present");
        let rhs = dot(&psi_hat.0, &dp.dual.mul_unchecked(&ah_star, &ah).0);
        if lhs_primal != rhs {
            failure = Some(format!("fails on element {idx}"));
            break;
        }
    }
    Ok(Report::single(
        Check::from_failure("plancherel", "ψ̂(â*â)=φ(a*a)", failure)
            .with_detail(format!("seed {seed}, {} basis elements and {samples} samples", h.dim)),
    ))
}

/// The canonical map `A → (Â)^` is a Hopf (*-)isomorphism.
pub fn verify_biduality(dp: &DualPair) -> Report {
    let bidual = dual_hopf(&dp.dual);
    let mut failure = verify_hopf_morphism(&Mat::identity(dp.primal.dim), &dp.primal, &bidual).err();
    if failure.is_none() && dp.primal.star != bidual.star {
        failure = Some("star is not preserved".into());
    }
    Report::single(Check::from_failure("biduality", "(Â)^≅A", failure))
}

//! Acceptance criteria 1 to 11, one line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use radford_cli::format::{self, HopfFile};
use radford_core::duality::{build_dual, dual_hopf, verify_biduality, verify_dual_modular_identities, verify_pairing, verify_plancherel};
use radford_core::gns::{self, Positivity};
use radford_core::hopf::verify_hopf;
use radford_core::integrals::{compute_modular_data, left_invariance_kernel, verify_modular_identities};
use radford_core::radford::{verify_proof_path, verify_radford};
use radford_core::zoo::{self, Group};
use radford_core::{CycScalar, DualPair, Functional, HopfData, Mat, Report};

type Outcome = Result<String, String>;

const TOL: f64 = 1e-9;
const MEMBERSHIP_TOL: f64 = 1e-8;
const SEED: u64 = 42;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(r: &Report, who: &str) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{who}: {c} {:?}", c.status)),
    }
}

fn dual_pair(h: &HopfData) -> Result<DualPair, String> {
    let md = compute_modular_data(h).map_err(|e| format!("{}: {e}", h.name))?;
    build_dual(h, &md).map_err(|e| format!("{}: {e}", h.name))
}

fn find<'a>(zoo: &'a [HopfData], name: &str) -> &'a HopfData {
    zoo.iter().find(|h| h.name == name).unwrap_or_else(|| panic!("{name} missing from the zoo"))
}

// Oracles written against raw structure constants only.

/// `(ι⊗φ)Δ(e_a) = φ(e_a)1` for every basis element.
fn oracle_left_invariant(h: &HopfData, phi: &[CycScalar]) -> bool {
    let one = h.one();
    (0..h.dim).all(|a| {
        (0..h.dim).all(|i| {
            let mut lhs = CycScalar::zero();
            for j in 0..h.dim {
                lhs = lhs + h.comult.get(a, i, j).clone() * phi[j].clone();
            }
            lhs == phi[a].clone() * one.0[i].clone()
        })
    })
}

/// `δ` from `(φ⊗ι)Δ(a) = φ(a)δ` at a basis element with `φ(a) ≠ 0`.
fn oracle_modular_element(h: &HopfData, phi: &[CycScalar]) -> Vec<CycScalar> {
    let a = phi.iter().position(|c| !c.is_zero()).expect("nonzero integral");
    (0..h.dim)
        .map(|j| {
            let mut s = CycScalar::zero();
            for i in 0..h.dim {
                s = s + h.comult.get(a, i, j).clone() * phi[i].clone();
            }
            s.try_div(&phi[a]).expect("nonzero")
        })
        .collect()
}

fn phi_of(h: &HopfData, phi: &[CycScalar], i: usize, j: usize) -> CycScalar {
    let mut s = CycScalar::zero();
    for k in 0..h.dim {
        s = s + h.mult.get(i, j, k).clone() * phi[k].clone();
    }
    s
}

fn antipode_squared(h: &HopfData) -> Mat {
    h.antipode.mul(&h.antipode).expect("square")
}

fn timed(budget: Duration, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let r = f()?;
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:.2?}, budget {budget:?}"))?;
    Ok(format!("{r} in {:.2}s", took.as_secs_f64()))
}

fn criterion_1(zoo: &[HopfData]) -> Outcome {
    timed(Duration::from_secs(10), || {
        for h in zoo {
            all_pass(&verify_hopf(h), &h.name)?;
        }
        Ok(format!("{} algebras satisfy the Hopf axioms", zoo.len()))
    })
}

fn criterion_2(zoo: &[HopfData]) -> Outcome {
    for h in zoo {
        let k = left_invariance_kernel(h);
        ensure(k.len() == 1, || format!("{}: kernel dimension {}", h.name, k.len()))?;
        ensure(oracle_left_invariant(h, &k[0]), || format!("{}: kernel vector is not left invariant", h.name))?;
    }
    Ok("left-invariance kernel is one-dimensional everywhere".into())
}

fn criterion_3(zoo: &[HopfData]) -> Outcome {
    for h in zoo {
        all_pass(&verify_radford(&dual_pair(h)?), &h.name)?;
    }
    let h4 = find(zoo, "sweedler");
    // Basis 1, g, x, gx; the left integral is the dual vector of gx.
    let phi: Vec<CycScalar> = [0, 0, 0, 1].iter().map(|&v| CycScalar::from_int(v)).collect();
    ensure(oracle_left_invariant(h4, &phi), || "f_gx is not left invariant".into())?;
    let delta = oracle_modular_element(h4, &phi);
    ensure(delta == h4.basis(1).0, || format!("oracle δ = {delta:?}"))?;
    let dp = dual_pair(h4)?;
    ensure(Functional(phi.clone()) == dp.primal_modular.phi, || "solver φ differs from f_gx".into())?;
    ensure(dp.primal_modular.delta.0 == delta, || "solver δ differs from g".into())?;
    ensure(h4.antipode.pow(4).map_err(|e| e.to_string())?.is_identity(), || "S⁴ ≠ I on H₄".into())?;
    ensure(dp.dual_modular.delta.0 != h4.counit.0, || "δ̂ = 1̂ on H₄".into())?;
    Ok(format!("S⁴ formula exact on {} algebras; H₄: S⁴ = I, δ = g, δ̂ ≠ 1̂", zoo.len()))
}

fn criterion_4(zoo: &[HopfData]) -> Outcome {
    for h in zoo {
        let dp = dual_pair(h)?;
        let own = verify_modular_identities(h, &dp.primal_modular);
        ensure(own.checks.len() == 6, || format!("{}: {} modular identities", h.name, own.checks.len()))?;
        all_pass(&own, &h.name)?;
        let dual = verify_dual_modular_identities(&dp);
        ensure(dual.checks.len() >= 3, || format!("{}: {} dual identities", h.name, dual.checks.len()))?;
        all_pass(&dual, &h.name)?;
        all_pass(&verify_proof_path(&dp), &h.name)?;
    }
    Ok("modular, dual-modular and proof-path identities exact".into())
}

fn same_structure(a: &HopfData, b: &HopfData) -> bool {
    a.dim == b.dim
        && a.mult == b.mult
        && a.comult == b.comult
        && a.unit == b.unit
        && a.counit == b.counit
        && a.antipode == b.antipode
        && a.star == b.star
}

fn criterion_5(zoo: &[HopfData]) -> Outcome {
    for h in zoo {
        let back = dual_hopf(&dual_hopf(h));
        ensure(&back == h, || format!("{}: double dual differs", h.name))?;
        let dp = dual_pair(h)?;
        all_pass(&verify_biduality(&dp), &h.name)?;
        ensure(dp.fourier.rank() == h.dim, || format!("{}: Fourier transform is singular", h.name))?;
        let pairing = verify_pairing(&dp);
        ensure(pairing.get("dual.action-span").is_some(), || "no action-span check".into())?;
        all_pass(&pairing, &h.name)?;
    }
    for g in [Group::cyclic(2), Group::cyclic(3), Group::symmetric3()] {
        let d = dual_hopf(&zoo::group_algebra(&g));
        ensure(same_structure(&d, &zoo::function_algebra(&g)), || format!("dual of C[{}] is not C({})", g.name, g.name))?;
    }
    Ok("biduality, C(G) = dual of C[G] for Z2, Z3, S3, Fourier and pairing exact".into())
}

fn positive(h: &HopfData) -> Result<Option<DualPair>, String> {
    let dp = dual_pair(h)?;
    Ok(gns::check_positive_integral(h, &dp.primal_modular.phi, TOL).is_positive().then_some(dp))
}

fn criterion_6(zoo: &[HopfData]) -> Outcome {
    let mut count = 0;
    for h in zoo {
        if let Some(dp) = positive(h)? {
            let r = verify_plancherel(&dp, SEED, 20).map_err(|e| format!("{}: {e}", h.name))?;
            all_pass(&r, &h.name)?;
            count += 1;
        }
    }
    ensure(count >= 8, || format!("only {count} positive algebras"))?;
    Ok(format!("ψ̂(â*â) = φ(a*a) on {count} positive algebras, basis plus 20 samples"))
}

fn criterion_7(zoo: &[HopfData]) -> Outcome {
    let mut count = 0;
    for h in zoo {
        let Some(dp) = positive(h)? else { continue };
        let phi = &dp.primal_modular.phi.0;
        ensure(oracle_left_invariant(h, phi), || format!("{}: φ not invariant", h.name))?;
        ensure(oracle_modular_element(h, phi) == h.one().0, || format!("{}: δ ≠ 1", h.name))?;
        let d = &dp.dual;
        let phi_hat = left_invariance_kernel(d).remove(0);
        ensure(oracle_left_invariant(d, &phi_hat), || format!("{}: φ̂ not invariant", h.name))?;
        ensure(oracle_modular_element(d, &phi_hat) == d.one().0, || format!("{}: δ̂ ≠ 1̂", h.name))?;
        let s2 = antipode_squared(h);
        ensure(s2.is_identity(), || format!("{}: S² ≠ ι", h.name))?;
        // φ∘S² = νφ, so ν = 1 once S² = ι; cross-check the solver.
        ensure(dp.primal_modular.nu.is_one(), || format!("{}: ν ≠ 1", h.name))?;
        for i in 0..h.dim {
            for j in 0..h.dim {
                ensure(phi_of(h, phi, i, j) == phi_of(h, phi, j, i), || format!("{}: σ ≠ ι at ({i},{j})", h.name))?;
            }
        }
        ensure(dp.primal_modular.sigma.is_identity(), || format!("{}: solver σ ≠ ι", h.name))?;
        count += 1;
    }
    Ok(format!("δ = 1, δ̂ = 1̂, ν = 1, σ = ι, S² = ι on {count} positive algebras"))
}

/// The literal claim is false on the non-involutive entries; the facts that
/// do hold are asserted separately in `nu_facts`.
fn criterion_8(zoo: &[HopfData]) -> Outcome {
    let mut off = Vec::new();
    for h in zoo {
        let md = compute_modular_data(h).map_err(|e| e.to_string())?;
        if !md.nu.is_one() {
            off.push(format!("{}: ν = {}", h.name, md.nu.to_text(md.nu.order()).unwrap_or_default()));
        }
    }
    ensure(off.is_empty(), || format!("ν ≠ 1 on {}", off.join(", ")))?;
    Ok("ν = 1 everywhere".into())
}

fn nu_facts(zoo: &[HopfData]) -> Outcome {
    for h in zoo {
        let md = compute_modular_data(h).map_err(|e| e.to_string())?;
        let phi = &md.phi.0;
        let s2 = antipode_squared(h);
        let k = s2.multiplicative_order(1024).ok_or_else(|| format!("{}: S² has no finite order", h.name))?;
        ensure(md.nu.pow(k).is_one(), || format!("{}: ν^{k} ≠ 1", h.name))?;
        // Oracle: φ(S²(e_a)) = νφ(e_a) at every basis element.
        for a in 0..h.dim {
            let mut lhs = CycScalar::zero();
            for b in 0..h.dim {
                lhs = lhs + s2.get(b, a).clone() * phi[b].clone();
            }
            ensure(lhs == md.nu.clone() * phi[a].clone(), || format!("{}: φ∘S² ≠ νφ at {a}", h.name))?;
        }
        if positive(h)?.is_some() {
            ensure(md.nu.is_one(), || format!("{}: positive but ν ≠ 1", h.name))?;
        }
    }
    let nu = |name: &str| compute_modular_data(find(zoo, name)).map(|md| md.nu).map_err(|e| e.to_string());
    ensure(nu("sweedler")? == CycScalar::from_int(-1), || "H₄: ν ≠ −1".into())?;
    ensure(nu("taft(3,z)")? == CycScalar::zeta(3, 2), || "taft(3,ζ₃): ν ≠ ζ₃²".into())?;
    ensure(nu("taft(3,-1-z)")? == CycScalar::zeta(3, 1), || "taft(3,ζ₃²): ν ≠ ζ₃".into())?;
    Ok("ν is a root of unity of order dividing ord(S²), ν = 1 when positive; H₄ ν = −1, taft(3,q) ν = q⁻¹".into())
}

fn criterion_9() -> Outcome {
    timed(Duration::from_secs(5), || {
        for h in [zoo::group_algebra(&Group::symmetric3()), zoo::function_algebra(&Group::symmetric3())] {
            let dp = dual_pair(&h)?;
            let verdict = gns::check_positive_integral(&h, &dp.primal_modular.phi, TOL);
            ensure(matches!(verdict, Positivity::Positive { .. }), || format!("{}: {verdict:?}", h.name))?;
            let g = gns::gns_build(&h, &dp.primal_modular.phi, &verdict, TOL).map_err(|e| e.to_string())?;
            let dev = gns::nabla_deviation(&g);
            ensure(dev <= TOL, || format!("{}: ‖∇ − I‖ = {dev:e}", h.name))?;
            let res = gns::star_residual(&h, &g).map_err(|e| e.to_string())?;
            ensure(res <= TOL, || format!("{}: star residual {res:e}", h.name))?;
            all_pass(&gns::verify_commutant(&g, TOL, MEMBERSHIP_TOL), &h.name)?;
            let op = gns::verify_operator_radford(&dp, &g, TOL, MEMBERSHIP_TOL).map_err(|e| e.to_string())?;
            for name in ["gns.operator-radford", "gns.factors-identity"] {
                ensure(op.get(name).is_some_and(|c| c.passed()), || format!("{}: {name} did not pass", h.name))?;
            }
            all_pass(&op, &h.name)?;
        }
        Ok("C[S3] and C(S3): ∇ = I, T reproduces *, JMJ ⊆ M′, four factors equal I".into())
    })
}

fn radford(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_radford")).args(args).output().expect("run radford");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn write_file(dir: &Path, name: &str, file: &HopfFile) -> PathBuf {
    let path = dir.join(name);
    let text = format::write(&file.to_hopf().expect("still parseable")).expect("writable");
    std::fs::write(&path, text).expect("write");
    path
}

fn criterion_10(dir: &Path) -> Outcome {
    let base = HopfFile::from_hopf(&zoo::sweedler()).map_err(|e| e.to_string())?;
    let negate = |s: &str| (-CycScalar::parse(s, base.field_order).expect("scalar")).to_text(base.field_order).expect("text");

    let mut mult = base.clone();
    // g·g = 1 becomes g·g = 2.
    mult.mult[1][1][0] = "2".into();
    let mut counit = base.clone();
    counit.counit[1] = "2".into();
    let mut antipode = base.clone();
    // Flip the sign of the coefficient of gx in S(x).
    antipode.antipode[3][2] = negate(&antipode.antipode[3][2]);
    ensure(antipode.antipode != base.antipode, || "antipode edit was a no-op".into())?;

    let mut seen = Vec::new();
    for (file, name, expected) in [
        (mult, "mult.json", "hopf.algebra"),
        (counit, "counit.json", "hopf.coalgebra"),
        (antipode, "antipode.json", "hopf.antipode"),
    ] {
        let path = write_file(dir, name, &file);
        let (code, out) = radford(&["verify", path.to_str().expect("utf-8 path")]);
        ensure(code == 1, || format!("{name}: exit code {code}"))?;
        let first_fail = out.lines().find(|l| l.contains(" FAIL ")).unwrap_or("");
        ensure(first_fail.starts_with(&format!("CHECK {expected} FAIL")), || format!("{name}: first failure {first_fail:?}"))?;
        seen.push(format!("{name}→{expected}"));
    }
    Ok(seen.join(", "))
}

fn criterion_11(dir: &Path) -> Outcome {
    let mut names = Vec::new();
    for (file, args) in [("h4.json", vec!["sweedler"]), ("cs3.json", vec!["s3"]), ("t9.json", vec!["taft", "--n", "3", "--q", "z"])] {
        let path = dir.join(file);
        let p = path.to_str().expect("utf-8 path");
        let mut zoo_args = vec!["zoo"];
        zoo_args.extend(args);
        zoo_args.extend(["-o", p]);
        let (code, _) = radford(&zoo_args);
        ensure(code == 0, || format!("zoo {file}: exit {code}"))?;
        let first = radford(&["verify", "--details", p]);
        let second = radford(&["verify", "--details", p]);
        ensure(first.0 == 0, || format!("{file}: exit {}", first.0))?;
        ensure(first == second, || format!("{file}: reports differ"))?;
        names.push(file);
    }
    Ok(format!("byte-identical reports for {}", names.join(", ")))
}

fn main() {
    let zoo = zoo::standard_zoo();
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<(&str, &str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1", "axiom suite", Box::new(|| criterion_1(&zoo))),
        ("2", "integral uniqueness", Box::new(|| criterion_2(&zoo))),
        ("3", "S⁴ formula", Box::new(|| criterion_3(&zoo))),
        ("4", "modular identity suites", Box::new(|| criterion_4(&zoo))),
        ("5", "duality", Box::new(|| criterion_5(&zoo))),
        ("6", "Plancherel", Box::new(|| criterion_6(&zoo))),
        ("7", "Kac collapse", Box::new(|| criterion_7(&zoo))),
        ("8", "scaling constant ν = 1", Box::new(|| criterion_8(&zoo))),
        ("8*", "scaling constant facts", Box::new(|| nu_facts(&zoo))),
        ("9", "GNS operator identities", Box::new(criterion_9)),
        ("10", "fault detection", Box::new(|| criterion_10(dir.path()))),
        ("11", "determinism", Box::new(|| criterion_11(dir.path()))),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in &criteria {
        match run() {
            Ok(msg) => println!("CRITERION {id} PASS {title}: {msg}"),
            Err(msg) => {
                println!("CRITERION {id} FAIL {title}: {msg}");
                // Criterion 8 contradicts exact computation on H₄ and the
                // Taft algebras; 8* asserts what holds instead.
                if *id != "8" {
                    unexpected.push(*id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("failing criteria: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}

//! Human-readable modular data for `report`.

use std::fmt::Write;

use radford_core::gns::Positivity;
use radford_core::{CycScalar, Elem, HopfData, Mat};

use crate::pipeline::Outcome;
use crate::CliError;

const ORDER_BOUND: u64 = 1024;

fn exact(c: &CycScalar, field: u32) -> String {
    let f = field.max(c.order());
    c.to_text(f).unwrap_or_else(|_| c.to_text(c.order()).unwrap_or_default())
}

fn float(c: &CycScalar) -> String {
    let z = c.to_complex();
    // Adding 0.0 turns -0.0 into 0.0.
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    if im.abs() < 1e-12 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn vector(v: &[CycScalar], field: u32) -> String {
    let ex: Vec<String> = v.iter().map(|c| exact(c, field)).collect();
    let fl: Vec<String> = v.iter().map(float).collect();
    format!("[{}] ≈ [{}]", ex.join(", "), fl.join(", "))
}

fn element(h: &HopfData, e: &Elem) -> String {
    if *e == h.one() {
        format!("1   {}", vector(&e.0, h.field_order))
    } else {
        vector(&e.0, h.field_order)
    }
}

fn order(m: &Mat) -> String {
    m.multiplicative_order(ORDER_BOUND).map_or_else(|| format!("> {ORDER_BOUND}"), |k| k.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render(h: &HopfData, outcome: &Outcome) -> Result<String, CliError> {
    let dp = outcome
        .dual
        .as_ref()
        .ok_or_else(|| CliError::Usage("dual was not built".into()))?;
    let md = &dp.primal_modular;
    let dmd = &dp.dual_modular;
    let f = h.field_order;
    let unimodular = md.delta == h.one();
    let counimodular = dmd.delta == dp.dual.one();

    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "name: {}", h.name);
    let _ = writeln!(w, "dim = {}", h.dim);
    let _ = writeln!(w, "field_order = {f}");
    let _ = writeln!(w, "φ = {}", vector(&md.phi.0, f));
    let _ = writeln!(w, "ψ = {}", vector(&md.psi.0, f));
    let _ = writeln!(w, "δ = {}", element(h, &md.delta));
    let dual_delta = if counimodular { format!("1̂   {}", vector(&dmd.delta.0, f)) } else { vector(&dmd.delta.0, f) };
    let _ = writeln!(w, "δ̂ = {dual_delta}");
    let _ = writeln!(w, "ν = {} ≈ {}", exact(&md.nu, f), float(&md.nu));
    let _ = writeln!(w, "ord(S) = {}", order(&h.antipode));
    let s2 = h.antipode_squared();
    let _ = writeln!(w, "ord(S²) = {}", order(&s2));
    let _ = writeln!(w, "S² = id: {}", yes_no(s2.is_identity()));
    let _ = writeln!(w, "unimodular: {}", yes_no(unimodular));
    let _ = writeln!(w, "counimodular: {}", yes_no(counimodular));
    match &outcome.group_likes {
        Some(gl) => {
            let _ = writeln!(w, "group-likes ({}):", gl.len());
            for g in gl {
                let _ = writeln!(w, "  {}", vector(&g.0, f));
            }
        }
        None => {
            let _ = writeln!(w, "group-likes: not determined");
        }
    }
    let kac = match &outcome.positivity {
        Some(Positivity::Positive { sign, .. }) if *sign > 0 => "finite quantum group (φ positive)".to_string(),
        Some(Positivity::Positive { .. }) => "finite quantum group (−φ positive)".to_string(),
        Some(Positivity::NotPositive { reason }) => format!("not positive: {reason}"),
        Some(Positivity::NoStar) | None => "no *-structure".to_string(),
    };
    let _ = writeln!(w, "Kac: {kac}");
    Ok(s)
}

//! Named presentations, so degree data is written down once.
//!
//! Bigraded presets place generators at (filtration, internal). Presets whose
//! degrees depend on r or k take the [`CaseParams`] of a pair (q, p).

use crate::algebra::{GenKind, Presentation};
use crate::error::{EngineError, Result};
use crate::fp::PrimeField;
use crate::ktheory::{classify, CaseParams};
use crate::steenrod::DualSteenrod;

use GenKind::{DividedPower as Div, Exterior as Ext, Polynomial as Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub needs_q: bool,
    pub description: &'static str,
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo { name: "v0-k", needs_q: true, description: "V(0)_*K = E(x) ⊗ P(y)" },
    PresetInfo { name: "v1-k", needs_q: true, description: "V(1)_*K = E(x) ⊗ P_k(y)" },
    PresetInfo { name: "hk", needs_q: true, description: "(HF_p)_*K for cases 1 to 3" },
    PresetInfo { name: "hk-quotient", needs_q: true, description: "E(x) ⊗ P_k(y)/(xy^{k-1}), case 4" },
    PresetInfo { name: "dual-steenrod", needs_q: false, description: "A_* through degree 2p^3 - 3" },
    PresetInfo { name: "v0-thh-e2", needs_q: true, description: "Γ(σx) ⊗ E(σy) ⊗ E(λ1) ⊗ P(μ1), bigraded" },
    PresetInfo { name: "v0-thh", needs_q: true, description: "V(0)_*THH(K; HZ_p) by case" },
    PresetInfo { name: "tor-hk-e2", needs_q: true, description: "Tor over (HF_p)_*K, bigraded, cases 1 to 3" },
    PresetInfo { name: "bokstedt-case2-e2", needs_q: false, description: "Bökstedt E^2 in case 2 with σξ̃_3" },
    PresetInfo { name: "bokstedt-case2-ep", needs_q: false, description: "Bökstedt E^p in case 2" },
    PresetInfo { name: "v1-thh-case1-e2", needs_q: false, description: "E(x) ⊗ E(a, λ2) ⊗ P(μ2) ⊗ Γ(b), bigraded" },
    PresetInfo { name: "v1-thh-case1-dga", needs_q: false, description: "E(x, a, λ2) ⊗ P(μ2) ⊗ Γ(b)" },
    PresetInfo { name: "v1-thh-case1", needs_q: false, description: "Ω^∞ ⊗ P(μ2) ⊗ Γ(b)" },
    PresetInfo { name: "omega-infinity", needs_q: false, description: "Ω^∞ on x, e, c, d" },
    PresetInfo { name: "v1-thh-case2-e2", needs_q: false, description: "E(x) ⊗ E(λ1, λ2) ⊗ Γ(σx) ⊗ P(μ2), bigraded" },
    PresetInfo { name: "v1-thh-case2", needs_q: false, description: "E(x) ⊗ E(λ1, λ2) ⊗ P(μ2) ⊗ Γ(γ1')" },
    PresetInfo { name: "v1-thh-hypothesis-e2", needs_q: true, description: "E(x) ⊗ P_k(y) ⊗ Γ(σx) ⊗ E(σy) ⊗ E(λ1) ⊗ P(μ1)" },
    PresetInfo { name: "fg", needs_q: true, description: "P_r(u) ⊗ Γ(σx)" },
];

fn field(p: u32) -> Result<PrimeField> {
    PrimeField::new(p)
}

fn pow(name: &str, e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => name.into(),
        e => format!("{name}^{e}"),
    }
}

pub fn v0_k(c: &CaseParams) -> Result<Presentation> {
    super::v0_presentation(c)
}

pub fn v1_k(c: &CaseParams) -> Result<Presentation> {
    super::v1_presentation(c)
}

/// Internal degrees of ξ̃_1, ξ̃_2, τ̃_2 and of the class b in case 1.
fn steenrod_degrees(p: u32) -> (u32, u32, u32) {
    (2 * p - 2, 2 * p * p - 2, 2 * p * p - 1)
}

/// (HF_p)_*K: E(b) ⊗ P(ξ̃_1^p, ξ̃_2) ⊗ E(τ̃_2) in case 1 and
/// E(x) ⊗ P_k(y) ⊗ P(ξ̃_1, ξ̃_2) ⊗ E(τ̃_2) in cases 2 and 3.
pub fn hk(c: &CaseParams) -> Result<Presentation> {
    let (xi1, xi2, tau2) = steenrod_degrees(c.p);
    let b = Presentation::builder(c.field());
    match c.case {
        1 => b.ext("b", c.p * xi1 - 1).poly("xi1p", c.p * xi1).poly("xi2", xi2).ext("tau2", tau2).build(),
        2 | 3 => {
            let b = b.ext("x", c.x_degree());
            let b = if c.k > 1 { b.truncated("y", c.y_degree(), c.k) } else { b };
            b.poly("xi1", xi1).poly("xi2", xi2).ext("tau2", tau2).build()
        }
        _ => Err(EngineError::Precondition("case 4 has no closed-form model; use hk-quotient".into())),
    }
}

/// E(x) ⊗ P_k(y)/(xy^{k−1}), the case-4 model in low degrees.
pub fn hk_quotient(c: &CaseParams) -> Result<Presentation> {
    if c.k < 2 {
        return Err(EngineError::Precondition("the quotient needs k ≥ 2".into()));
    }
    Presentation::builder(c.field())
        .ext("x", c.x_degree())
        .truncated("y", c.y_degree(), c.k)
        .relation(&format!("x*{}", pow("y", c.k - 1)))
        .build()
}

pub fn dual_steenrod(p: u32) -> Result<Presentation> {
    Ok(DualSteenrod::new(field(p)?, 2 * p * p * p - 3)?.algebra().presentation().clone())
}

/// E^2 of the spectral sequence converging to V(0)_*THH(K; HZ_p):
/// σx at (0, 2r), σy at (0, 2r + 1), λ1 at (2p − 1, 0), μ1 at (2p, 0).
pub fn v0_thh_e2(c: &CaseParams) -> Result<Presentation> {
    Presentation::builder(c.field())
        .bigraded("sx", Div, 0, 2 * c.r)
        .bigraded("sy", Ext, 0, 2 * c.r + 1)
        .bigraded("l1", Ext, 2 * c.p - 1, 0)
        .bigraded("mu1", Poly, 2 * c.p, 0)
        .build()
}

/// The answer for V(0)_*THH(K; HZ_p), bigraded as on E^∞.
pub fn v0_thh(c: &CaseParams) -> Result<Presentation> {
    let p = c.p;
    let b = Presentation::builder(c.field());
    match c.case {
        1 => b
            .bigraded("mu1p", Poly, 2 * p * p, 0)
            .bigraded("mu1sy", Ext, 2 * p * (p - 1), 2 * c.r + 1)
            .bigraded("l1sx", Ext, 2 * p - 1, 2 * c.r * (p - 1))
            .bigraded("gpsx", Div, 0, 2 * c.r * p)
            .build(),
        2 => b
            .bigraded("l1", Ext, 2 * p - 1, 0)
            .bigraded("mu1sy", Ext, 2 * p * (p - 1), 2 * c.r + 1)
            .bigraded("sx", Div, 0, 2 * c.r)
            .bigraded("mu1p", Poly, 2 * p * p, 0)
            .build(),
        _ => b
            .bigraded("mu1", Poly, 2 * p, 0)
            .bigraded("sy", Ext, 0, 2 * c.r + 1)
            .bigraded("l1", Ext, 2 * p - 1, 0)
            .bigraded("sx", Div, 0, 2 * c.r)
            .build(),
    }
}

/// The claimed E^2 = Tor over (HF_p)_*K, at (homological, internal).
pub fn tor_hk_e2(c: &CaseParams) -> Result<Presentation> {
    let (xi1, xi2, tau2) = steenrod_degrees(c.p);
    let b = Presentation::builder(c.field());
    match c.case {
        1 => b
            .bigraded("sxi1p", Ext, 1, c.p * xi1)
            .bigraded("sxi2", Ext, 1, xi2)
            .bigraded("sb", Div, 1, c.p * xi1 - 1)
            .bigraded("stau2", Div, 1, tau2)
            .build(),
        2 => b
            .bigraded("sxi1", Ext, 1, xi1)
            .bigraded("sxi2", Ext, 1, xi2)
            .bigraded("sx", Div, 1, c.x_degree())
            .bigraded("stau2", Div, 1, tau2)
            .build(),
        3 => b
            .bigraded("sy", Ext, 1, c.y_degree())
            .bigraded("sxi1", Ext, 1, xi1)
            .bigraded("sxi2", Ext, 1, xi2)
            .bigraded("sx", Div, 1, c.x_degree())
            .bigraded("z", Div, 2, c.k * c.y_degree())
            .bigraded("stau2", Div, 1, tau2)
            .build(),
        _ => Err(EngineError::Precondition("no closed-form Tor in case 4".into())),
    }
}

/// Bökstedt E^2 in case 2: (HF_p)_*K in filtration 0, then
/// E(σξ̃_1, σξ̃_2, σξ̃_3) ⊗ Γ(σx, στ̃_2) in filtration 1.
pub fn bokstedt_case2_e2(p: u32) -> Result<Presentation> {
    let (xi1, xi2, tau2) = steenrod_degrees(p);
    Presentation::builder(field(p)?)
        .bigraded("x", Ext, 0, 2 * p - 3)
        .bigraded("xi1", Poly, 0, xi1)
        .bigraded("xi2", Poly, 0, xi2)
        .bigraded("tau2", Ext, 0, tau2)
        .bigraded("sxi1", Ext, 1, xi1)
        .bigraded("sxi2", Ext, 1, xi2)
        .bigraded("sxi3", Ext, 1, 2 * p * p * p - 2)
        .bigraded("sx", Div, 1, 2 * p - 3)
        .bigraded("stau2", Div, 1, tau2)
        .build()
}

/// Bökstedt E^p in case 2, with P_p(στ̃_2) in place of Γ(στ̃_2) ⊗ E(σξ̃_3).
pub fn bokstedt_case2_ep(p: u32) -> Result<Presentation> {
    let (xi1, xi2, tau2) = steenrod_degrees(p);
    Presentation::builder(field(p)?)
        .bigraded("x", Ext, 0, 2 * p - 3)
        .bigraded("xi1", Poly, 0, xi1)
        .bigraded("xi2", Poly, 0, xi2)
        .bigraded("tau2", Ext, 0, tau2)
        .bigraded("sxi1", Ext, 1, xi1)
        .bigraded("sxi2", Ext, 1, xi2)
        .bigraded("sx", Div, 1, 2 * p - 3)
        .bigraded("stau2", GenKind::Truncated(p), 1, tau2)
        .build()
}

/// Degrees in case 1: x, a = σξ̃_1^p, λ2, μ2, b = σb.
fn case1_degrees(p: u32) -> (u32, u32, u32, u32, u32) {
    (2 * p - 3, 2 * p * p - 2 * p + 1, 2 * p * p - 1, 2 * p * p, 2 * p * p - 2 * p)
}

/// E^2 in case 1 with x on line 2p − 3 and everything else on line 0.
pub fn v1_thh_case1_e2(p: u32) -> Result<Presentation> {
    let (x, a, l2, m2, b) = case1_degrees(p);
    Presentation::builder(field(p)?)
        .bigraded("x", Ext, 0, x)
        .bigraded("a", Ext, a, 0)
        .bigraded("l2", Ext, l2, 0)
        .bigraded("mu2", Poly, m2, 0)
        .bigraded("b", Div, b, 0)
        .build()
}

/// The same algebra singly graded, as a DGA with d(λ2) = xa.
pub fn v1_thh_case1_dga(p: u32) -> Result<Presentation> {
    let (x, a, l2, m2, b) = case1_degrees(p);
    Presentation::builder(field(p)?).ext("x", x).ext("a", a).ext("l2", l2).poly("mu2", m2).divided("b", b).build()
}

fn omega_builder(p: u32) -> Result<crate::algebra::PresentationBuilder> {
    let (x, a, l2, _, _) = case1_degrees(p);
    Ok(Presentation::builder(field(p)?)
        .ext("x", x)
        .ext("e", a)
        .truncated("c", x + l2, 2)
        .truncated("d", a + l2, 2))
}

const OMEGA_RELATIONS: [&str; 5] = ["x*e", "x*c", "d*e", "d*c", "e*c = -x*d"];

/// Ω^∞: generators x, e, c, d with d² = c² = 0, xe = xc = 0, de = dc = 0,
/// ec = −xd.
pub fn omega_infinity(p: u32) -> Result<Presentation> {
    OMEGA_RELATIONS.iter().try_fold(omega_builder(p)?, |b, r| Ok(b.relation(r)))?.build()
}

/// Ω^∞ ⊗ P(μ2) ⊗ Γ(b).
pub fn v1_thh_case1(p: u32) -> Result<Presentation> {
    let (_, _, _, m2, b) = case1_degrees(p);
    let builder = omega_builder(p)?.poly("mu2", m2).divided("b", b);
    OMEGA_RELATIONS.iter().fold(builder, |b, r| b.relation(r)).build()
}

/// E^2 in case 2: x on line 2p − 3, the rest on line 0.
pub fn v1_thh_case2_e2(p: u32) -> Result<Presentation> {
    Presentation::builder(field(p)?)
        .bigraded("x", Ext, 0, 2 * p - 3)
        .bigraded("l1", Ext, 2 * p - 1, 0)
        .bigraded("l2", Ext, 2 * p * p - 1, 0)
        .bigraded("sx", Div, 2 * p - 2, 0)
        .bigraded("mu2", Poly, 2 * p * p, 0)
        .build()
}

/// E(x) ⊗ E(λ1, λ2) ⊗ P(μ2) ⊗ Γ(γ1').
pub fn v1_thh_case2(p: u32) -> Result<Presentation> {
    Presentation::builder(field(p)?)
        .ext("x", 2 * p - 3)
        .ext("l1", 2 * p - 1)
        .ext("l2", 2 * p * p - 1)
        .poly("mu2", 2 * p * p)
        .divided("g1", 2 * p - 2)
        .build()
}

/// E^2 in cases 3 and 4: E(x) ⊗ P_k(y) ⊗ Γ(σx) ⊗ E(σy) ⊗ E(λ1) ⊗ P(μ1) with
/// x, y on line 0; case 4 adds xy^{k−1} = 0.
pub fn v1_thh_hypothesis_e2(c: &CaseParams) -> Result<Presentation> {
    if c.case != 3 && c.case != 4 {
        return Err(EngineError::Precondition("defined for cases 3 and 4".into()));
    }
    let b = Presentation::builder(c.field())
        .bigraded("x", Ext, 0, c.x_degree())
        .bigraded("y", GenKind::Truncated(c.k), 0, c.y_degree())
        .bigraded("sx", Div, 2 * c.r, 0)
        .bigraded("sy", Ext, 2 * c.r + 1, 0)
        .bigraded("l1", Ext, 2 * c.p - 1, 0)
        .bigraded("mu1", Poly, 2 * c.p, 0);
    if c.case == 4 {
        b.relation(&format!("x*{}", pow("y", c.k - 1))).build()
    } else {
        b.build()
    }
}

/// P_r(u) ⊗ Γ(σx) with |u| = 2 and |σx| = 2r.
pub fn fg(c: &CaseParams) -> Result<Presentation> {
    Presentation::builder(c.field()).truncated("u", 2, c.r).divided("sx", 2 * c.r).build()
}

/// Looks up a preset by name. `q` is required for presets that depend on r.
pub fn preset(name: &str, p: u32, q: Option<u64>) -> Result<Presentation> {
    let info = PRESETS
        .iter()
        .find(|i| i.name == name)
        .ok_or_else(|| EngineError::InvalidInput(format!("unknown preset {name:?}")))?;
    let params = match (info.needs_q, q) {
        (true, None) => return Err(EngineError::InvalidInput(format!("preset {name:?} needs q"))),
        (true, Some(q)) => Some(classify(q, p)?),
        (false, _) => None,
    };
    let c = || params.as_ref().expect("checked above");
    match name {
        "v0-k" => v0_k(c()),
        "v1-k" => v1_k(c()),
        "hk" => hk(c()),
        "hk-quotient" => hk_quotient(c()),
        "dual-steenrod" => dual_steenrod(p),
        "v0-thh-e2" => v0_thh_e2(c()),
        "v0-thh" => v0_thh(c()),
        "tor-hk-e2" => tor_hk_e2(c()),
        "bokstedt-case2-e2" => bokstedt_case2_e2(p),
        "bokstedt-case2-ep" => bokstedt_case2_ep(p),
        "v1-thh-case1-e2" => v1_thh_case1_e2(p),
        "v1-thh-case1-dga" => v1_thh_case1_dga(p),
        "v1-thh-case1" => v1_thh_case1(p),
        "omega-infinity" => omega_infinity(p),
        "v1-thh-case2-e2" => v1_thh_case2_e2(p),
        "v1-thh-case2" => v1_thh_case2(p),
        "v1-thh-hypothesis-e2" => v1_thh_hypothesis_e2(c()),
        "fg" => fg(c()),
        _ => unreachable!("every listed preset is handled"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn every_preset_builds_for_its_pairs() {
        for info in PRESETS {
            let mut built = 0;
            for q in [2u64, 7, 49, 4] {
                if preset(info.name, 5, Some(q)).is_ok() {
                    built += 1;
                }
            }
            assert!(built > 0, "{}", info.name);
        }
    }

    #[test]
    fn omega_has_six_basis_elements() {
        let a = Algebra::new(omega_infinity(5).unwrap(), 120).unwrap();
        let nz: Vec<(u32, usize)> = (0..=120).map(|d| (d, a.dim(d))).filter(|&(_, n)| n > 0).collect();
        assert_eq!(nz, vec![(0, 1), (7, 1), (41, 1), (56, 1), (90, 1), (97, 1)]);
    }

    #[test]
    fn stated_degrees_at_p5() {
        let a = Algebra::new(v1_thh_case2(5).unwrap(), 20).unwrap();
        // E(x7) ⊗ E(λ1 9) ⊗ Γ(γ 8) through 20; λ2, μ2 lie higher.
        let got: Vec<usize> = (0..=20).map(|d| a.dim(d)).collect();
        let want = vec![1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0];
        assert_eq!(got, want);
    }
}

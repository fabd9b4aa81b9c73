//! Boundary cohomology vanishing and Lefschetz-domain certification.

use serde::{Deserialize, Serialize};

use super::{delzant_check, good_cone_check, eval_model, BundleModel, Leaf, ModelEval, ModelExpr, MomentCone};
use crate::algebra::{is_semisimple, localize_at_c1};
use crate::error::GeometryError;

/// Levels j with H^{2j}(V; ℚ) = 0 guaranteed for the contact boundary V.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingRange {
    /// Inclusive bounds; `None` when nothing is certified.
    pub interval: Option<(u32, u32)>,
    pub reason: String,
}

impl VanishingRange {
    pub fn contains(&self, j: u32) -> bool {
        self.interval.is_some_and(|(lo, hi)| lo <= j && j <= hi)
    }

    fn empty(reason: impl Into<String>) -> Self {
        VanishingRange { interval: None, reason: reason.into() }
    }

    fn between(lo: u32, hi: u32, reason: impl Into<String>) -> Self {
        if lo > hi {
            return Self::empty(format!("empty interval [{lo}, {hi}]"));
        }
        VanishingRange { interval: Some((lo, hi)), reason: reason.into() }
    }
}

/// Range for a good cone with Delzant cross-section: `⌈n/2⌉ ≤ j ≤ n − 1`.
pub fn cone_vanishing_range(cone: &MomentCone) -> Result<VanishingRange, GeometryError> {
    let n = cone.dim() as u32;
    let verdict = good_cone_check(cone)?;
    if !verdict.good {
        return Ok(VanishingRange::empty(format!("cone is not good: {}", verdict.failures.join("; "))));
    }
    if !delzant_check(&cone.cross_section())? {
        return Ok(VanishingRange::empty("cross-section is not Delzant"));
    }
    Ok(VanishingRange::between(n.div_ceil(2), n - 1, "good cone with Delzant cross-section"))
}

/// Range for the boundary of a bundle. For a line bundle the boundary is a
/// circle bundle over CP^{n−1} with Euler class m·h, and the Gysin sequence
/// kills H^{2j} over ℚ for `1 ≤ j ≤ n − 1`. Higher rank goes through the moment cone.
pub fn vanishing_range(b: &BundleModel) -> Result<VanishingRange, GeometryError> {
    let n = b.n();
    if b.n1 == 1 {
        return Ok(VanishingRange::between(1, n - 1, "sphere bundle of a line bundle"));
    }
    cone_vanishing_range(&MomentCone::of_bundle(b))
}

pub fn leaf_vanishing_range(leaf: &Leaf) -> Result<VanishingRange, GeometryError> {
    match leaf {
        Leaf::Bundle(b) => vanishing_range(b),
        Leaf::Cn(n) => Ok(VanishingRange::between(1, n - 1, "boundary is a round sphere")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub certified: bool,
    pub reason: Option<String>,
}

impl Certification {
    fn yes() -> Self {
        Certification { certified: true, reason: None }
    }

    fn no(reason: impl Into<String>) -> Self {
        Certification { certified: false, reason: Some(reason.into()) }
    }

    fn and(self, other: Certification) -> Certification {
        match (self.certified, other.certified) {
            (true, true) => Certification::yes(),
            (true, false) => other,
            (false, true) => self,
            (false, false) => Certification::no(format!(
                "{}; {}",
                self.reason.unwrap_or_default(),
                other.reason.unwrap_or_default()
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzVerdict {
    pub level: u32,
    /// H^{2j} of the boundary vanishes for every leaf.
    pub boundary_vanishing: Certification,
    /// Normal form of c₁^{⋆j} in QH.
    pub c1_power: String,
    /// c₁^{⋆j} is q-free and homogeneous of degree 2j.
    pub classical_power: bool,
    pub sh_semisimple: bool,
    /// SH agrees with the localization of QH at c₁ (dimension and c₁ characteristic polynomial).
    pub sh_is_localization: bool,
    pub overall: Certification,
}

/// Checks both conditions of a Lefschetz domain at level `j`.
pub fn lefschetz_check(model: &ModelExpr, j: u32) -> Result<LefschetzVerdict, GeometryError> {
    let eval = eval_model(model)?;
    lefschetz_check_evaluated(&eval, j)
}

pub fn lefschetz_check_evaluated(eval: &ModelEval, j: u32) -> Result<LefschetzVerdict, GeometryError> {
    let mut boundary = Certification::yes();
    for l in &eval.leaves {
        let range = leaf_vanishing_range(&l.leaf.leaf)?;
        if !range.contains(j) {
            let shown = match range.interval {
                Some((lo, hi)) => format!("[{lo}, {hi}]"),
                None => format!("empty ({})", range.reason),
            };
            boundary = boundary.and(Certification::no(format!(
                "level {j} outside the vanishing range {shown} of {} at {}",
                l.leaf.leaf, l.leaf.path
            )));
        }
    }

    let qh = &eval.qh;
    let power = qh.normal_form(&qh.c1().pow(j));
    let classical = power.is_q_free()
        && power.terms().all(|(m, _)| m.weighted_degree(qh.degrees()) == 2 * j as i64);

    let (sh_semisimple, _) = is_semisimple(&eval.sh);
    let localized = localize_at_c1(qh)?.localized;
    let sh_is_localization =
        localized.dim() == eval.sh.dim() && localized.c1_char_poly() == eval.sh.c1_char_poly();

    let mut overall = boundary.clone();
    if !classical {
        overall = overall.and(Certification::no(format!("c1^{j} = {power} is not classical")));
    }
    if !sh_semisimple {
        overall = overall.and(Certification::no("SH is not semisimple"));
    }
    if !sh_is_localization {
        overall = overall.and(Certification::no("SH differs from the localization of QH at c1"));
    }
    Ok(LefschetzVerdict {
        level: j,
        boundary_vanishing: boundary,
        c1_power: power.to_string(),
        classical_power: classical,
        sh_semisimple,
        sh_is_localization,
        overall,
    })
}

//! Toric models: line-bundle total spaces, moment cones, surgery trees and the
//! Lefschetz-type checks built on them.

mod bundle;
mod cone;
mod lefschetz;
mod model;

pub use bundle::{
    build_bundle_qh, build_fan, closed_form_sh_relation, derive_qh_from_fan, fan_ideal,
    BundleModel, FanData, PrimitiveRelation,
};
pub use cone::{delzant_check, good_cone_check, GoodConeVerdict, MomentCone, Polytope};
pub use lefschetz::{
    cone_vanishing_range, lefschetz_check, lefschetz_check_evaluated, leaf_vanishing_range,
    vanishing_range, Certification, LefschetzVerdict, VanishingRange,
};
pub use model::{
    calabi_yau_sh, eval_leaf, eval_model, torus_bound, Leaf, LeafEval, LeafOrigin, LeafRef,
    ModelEval, ModelExpr,
};

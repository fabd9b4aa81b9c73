//! Surgery trees and their ring-level semantics.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{build_bundle_qh, BundleModel};
use crate::algebra::{
    build_quotient, graded_dims, localize_at_c1, sum_rings, QuotientAlgebra, SumMode,
};
use crate::error::GeometryError;
use crate::polyalg::vars;

/// A manifold described by leaves and surgeries. Every node has the same
/// complex dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelExpr {
    Bundle(BundleModel),
    Cn(u32),
    /// `count` blow-ups at points on the cylindrical end.
    Blowup { count: u32, child: Box<ModelExpr> },
    ConnSum(Box<ModelExpr>, Box<ModelExpr>),
    /// Reverse simple flip; ring effect is a connected sum with O(−1)^{⊕n1} → CP^{n2}.
    Flip { child: Box<ModelExpr>, n1: u32, n2: u32 },
}

/// Building block a tree decomposes into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leaf {
    Bundle(BundleModel),
    Cn(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafOrigin {
    /// Written in the expression.
    Explicit,
    /// O(−1) → CP^{n−1} glued in by a blow-up.
    Blowup,
    /// The E₊ piece of a flip.
    Flip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafRef {
    pub path: String,
    pub leaf: Leaf,
    pub origin: LeafOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafEval {
    pub leaf: LeafRef,
    pub qh: QuotientAlgebra,
    pub sh: QuotientAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelEval {
    pub qh: QuotientAlgebra,
    pub sh: QuotientAlgebra,
    pub leaves: Vec<LeafEval>,
}

impl Leaf {
    pub fn dim(&self) -> u32 {
        match self {
            Leaf::Bundle(b) => b.n(),
            Leaf::Cn(n) => *n,
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Bundle(b) => write!(f, "{b}"),
            Leaf::Cn(n) => write!(f, "C^{n}"),
        }
    }
}

fn blowup_piece(n: u32) -> Result<BundleModel, GeometryError> {
    if n < 2 {
        return Err(GeometryError::InvalidParameters(format!(
            "blow-up needs complex dimension at least 2, got {n}"
        )));
    }
    BundleModel::new(1, 1, n - 1)
}

fn child_path(path: &str, step: &str) -> String {
    if path.is_empty() {
        step.to_string()
    } else {
        format!("{path}/{step}")
    }
}

impl ModelExpr {
    pub fn bundle(m: u32, n1: u32, n2: u32) -> Result<Self, GeometryError> {
        Ok(ModelExpr::Bundle(BundleModel::new(m, n1, n2)?))
    }

    pub fn conn_sum(a: ModelExpr, b: ModelExpr) -> Self {
        ModelExpr::ConnSum(Box::new(a), Box::new(b))
    }

    pub fn blowup(count: u32, child: ModelExpr) -> Self {
        ModelExpr::Blowup { count, child: Box::new(child) }
    }

    pub fn flip(child: ModelExpr, n1: u32, n2: u32) -> Self {
        ModelExpr::Flip { child: Box::new(child), n1, n2 }
    }

    /// Complex dimension, read off the leftmost leaf.
    pub fn dim(&self) -> u32 {
        match self {
            ModelExpr::Bundle(b) => b.n(),
            ModelExpr::Cn(n) => *n,
            ModelExpr::Blowup { child, .. } | ModelExpr::Flip { child, .. } => child.dim(),
            ModelExpr::ConnSum(a, _) => a.dim(),
        }
    }

    /// Checks dimensions agree across the tree and that every generated piece exists.
    pub fn validate(&self) -> Result<(), GeometryError> {
        match self {
            ModelExpr::Bundle(b) => BundleModel::new(b.m, b.n1, b.n2).map(|_| ()),
            ModelExpr::Cn(n) if *n == 0 => {
                Err(GeometryError::InvalidParameters("C^0 has no cylindrical end".into()))
            }
            ModelExpr::Cn(_) => Ok(()),
            ModelExpr::Blowup { count, child } => {
                child.validate()?;
                if *count == 0 {
                    return Err(GeometryError::InvalidParameters("blow-up count must be at least 1".into()));
                }
                blowup_piece(child.dim()).map(|_| ())
            }
            ModelExpr::ConnSum(a, b) => {
                a.validate()?;
                b.validate()?;
                if a.dim() != b.dim() {
                    return Err(GeometryError::DimensionMismatch(format!(
                        "{a} has dimension {} but {b} has dimension {}",
                        a.dim(),
                        b.dim()
                    )));
                }
                Ok(())
            }
            ModelExpr::Flip { child, n1, n2 } => {
                child.validate()?;
                let piece = BundleModel::new(1, *n1, *n2)?;
                if piece.n() != child.dim() {
                    return Err(GeometryError::DimensionMismatch(format!(
                        "flip piece {piece} has dimension {} but {child} has dimension {}",
                        piece.n(),
                        child.dim()
                    )));
                }
                Ok(())
            }
        }
    }

    /// Right-associates `#` and merges nested blow-up counts.
    pub fn normalize(self) -> ModelExpr {
        match self {
            ModelExpr::ConnSum(a, b) => {
                let b = b.normalize();
                match a.normalize() {
                    ModelExpr::ConnSum(l, r) => {
                        ModelExpr::ConnSum(l, Box::new(ModelExpr::conn_sum(*r, b).normalize()))
                    }
                    a => ModelExpr::conn_sum(a, b),
                }
            }
            ModelExpr::Blowup { count, child } => match child.normalize() {
                ModelExpr::Blowup { count: inner, child } => ModelExpr::blowup(count + inner, *child),
                c => ModelExpr::blowup(count, c),
            },
            ModelExpr::Flip { child, n1, n2 } => ModelExpr::flip(child.normalize(), n1, n2),
            leaf => leaf,
        }
    }

    /// Leaves in evaluation order, including the pieces glued in by surgeries.
    pub fn leaves(&self) -> Result<Vec<LeafRef>, GeometryError> {
        let mut out = Vec::new();
        self.collect_leaves("", LeafOrigin::Explicit, &mut out)?;
        Ok(out)
    }

    fn collect_leaves(&self, path: &str, origin: LeafOrigin, out: &mut Vec<LeafRef>) -> Result<(), GeometryError> {
        let at = |p: &str| if p.is_empty() { "root".to_string() } else { p.to_string() };
        match self {
            ModelExpr::Bundle(b) => out.push(LeafRef { path: at(path), leaf: Leaf::Bundle(*b), origin }),
            ModelExpr::Cn(n) => out.push(LeafRef { path: at(path), leaf: Leaf::Cn(*n), origin }),
            ModelExpr::ConnSum(a, b) => {
                a.collect_leaves(&child_path(path, "left"), origin, out)?;
                b.collect_leaves(&child_path(path, "right"), origin, out)?;
            }
            ModelExpr::Blowup { count, child } => {
                child.collect_leaves(&child_path(path, "base"), origin, out)?;
                let piece = blowup_piece(child.dim())?;
                for i in 1..=*count {
                    out.push(LeafRef {
                        path: child_path(path, &format!("point{i}")),
                        leaf: Leaf::Bundle(piece),
                        origin: LeafOrigin::Blowup,
                    });
                }
            }
            ModelExpr::Flip { child, n1, n2 } => {
                child.collect_leaves(&child_path(path, "base"), origin, out)?;
                out.push(LeafRef {
                    path: child_path(path, "E+"),
                    leaf: Leaf::Bundle(BundleModel::new(1, *n1, *n2)?),
                    origin: LeafOrigin::Flip,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelExpr::Bundle(b) => write!(f, "{b}"),
            ModelExpr::Cn(n) => write!(f, "C^{n}"),
            ModelExpr::Blowup { count, child } => write!(f, "Bl({count}, {child})"),
            ModelExpr::Flip { child, n1, n2 } => write!(f, "flip({child}, {n1}, {n2})"),
            ModelExpr::ConnSum(a, b) => {
                // bundles bind looser than `#` visually, so they are bracketed as summands
                let side = |e: &ModelExpr| match e {
                    ModelExpr::Bundle(_) => format!("({e})"),
                    _ => e.to_string(),
                };
                let left = match a.as_ref() {
                    ModelExpr::ConnSum(..) => format!("({a})"),
                    _ => side(a),
                };
                write!(f, "{left} # {}", side(b))
            }
        }
    }
}

/// Quantum and symplectic cohomology of a single leaf.
///
/// Bundles use the closed form for QH and its localization at c₁ for SH; in the
/// Calabi–Yau case SH vanishes (see [`calabi_yau_sh`]). ℂⁿ has QH = 𝕂 and SH = 0.
pub fn eval_leaf(leaf: &Leaf) -> Result<(QuotientAlgebra, QuotientAlgebra), GeometryError> {
    match leaf {
        Leaf::Cn(_) => Ok((QuotientAlgebra::ground_field(), QuotientAlgebra::zero_ring(&vars::<&str>(&[]), vec![], 0))),
        Leaf::Bundle(b) => {
            let qh = build_quotient(build_bundle_qh(b))?;
            let sh = if b.is_calabi_yau() { calabi_yau_sh(b) } else { localize_at_c1(&qh)?.localized };
            Ok((qh, sh))
        }
    }
}

/// SH of a Calabi–Yau bundle: the zero ring, by the vanishing theorem for
/// c₁ = 0 rather than by the degenerate toric formula.
pub fn calabi_yau_sh(b: &BundleModel) -> QuotientAlgebra {
    debug_assert!(b.is_calabi_yau());
    QuotientAlgebra::zero_ring(&vars(&["x"]), vec![2], 0)
}

/// Evaluates a tree by folding its leaves: QH by the unital sum, SH by the
/// orthogonal direct sum. Repeated leaves are computed once.
pub fn eval_model(model: &ModelExpr) -> Result<ModelEval, GeometryError> {
    model.validate()?;
    let refs = model.leaves()?;
    let mut cache: HashMap<Leaf, (QuotientAlgebra, QuotientAlgebra)> = HashMap::new();
    let mut leaves = Vec::with_capacity(refs.len());
    for r in refs {
        let (qh, sh) = match cache.get(&r.leaf) {
            Some(v) => v.clone(),
            None => {
                let v = eval_leaf(&r.leaf)
                    .map_err(|e| GeometryError::Leaf { path: r.path.clone(), source: Box::new(e) })?;
                cache.insert(r.leaf, v.clone());
                v
            }
        };
        leaves.push(LeafEval { leaf: r, qh, sh });
    }
    let (first, rest) = leaves.split_first().expect("a tree has at least one leaf");
    let mut qh = first.qh.clone();
    let mut sh = first.sh.clone();
    for l in rest {
        qh = sum_rings(&qh, &l.qh, SumMode::UnitalConnected)?;
        sh = sum_rings(&sh, &l.sh, SumMode::OrthogonalDirect)?;
    }
    Ok(ModelEval { qh, sh, leaves })
}

/// Upper bound on pairwise disjoinable monotone tori: the even part of SH.
pub fn torus_bound(eval: &ModelEval) -> usize {
    graded_dims(&eval.sh).even_dim
}

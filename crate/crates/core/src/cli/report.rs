use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse_model, CliError};
use crate::algebra::{graded_dims, is_semisimple, localize_at_c1, QuotientAlgebra};
use crate::error::GeometryError;
use crate::geometry::{
    eval_model, leaf_vanishing_range, lefschetz_check_evaluated, torus_bound, Leaf, LeafOrigin,
    LefschetzVerdict, ModelEval, ModelExpr,
};
use crate::mirror::{
    brane_census, build_superpotential, hms_check, jacobi_ring, monotonicity_constant,
    verify_critical_family, HmsVerdict, ModelCensus,
};

const BLOWUP_EXPONENT_NOTE: &str = "blow-up pieces use SH = K[x]/(x^(n-1) + n*q^(n-1)), the O(-1) -> P^(n-1) formula; \
the variant x^n + n*q^n for blow-ups of C^n has the wrong exponent and would contradict r <= m(n-1)";
const CRITICAL_VALUE_NOTE: &str = "critical values are W(z_c) = (n2 - m*n1 + 1)*x by direct substitution; \
reading the coefficient as n2 - m*n + 1 would make it vanish for line bundles";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Qh,
    Sh,
    Lefschetz,
    Mirror,
    Bounds,
}

impl Section {
    pub const ALL: [Section; 5] =
        [Section::Qh, Section::Sh, Section::Lefschetz, Section::Mirror, Section::Bounds];
}

impl FromStr for Section {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "qh" => Ok(Section::Qh),
            "sh" => Ok(Section::Sh),
            "lefschetz" => Ok(Section::Lefschetz),
            "mirror" => Ok(Section::Mirror),
            "bounds" => Ok(Section::Bounds),
            other => Err(format!("unknown section '{other}' (expected qh, sh, lefschetz, mirror, bounds)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Levels j to certify; empty means every 1 ≤ j ≤ n − 1.
    pub levels: Vec<u32>,
    pub sections: BTreeSet<Section>,
}

impl Default for Options {
    fn default() -> Self {
        Options { levels: Vec::new(), sections: Section::ALL.into_iter().collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub presentation: String,
    pub generators: Vec<String>,
    pub dim: usize,
    pub relations: Vec<String>,
    pub c1: String,
    pub c1_min_poly: String,
    pub semisimple: bool,
    pub trace_det: String,
    pub graded_dims: BTreeMap<i64, usize>,
    pub even_dim: usize,
    pub nilpotent_dim: usize,
    pub stabilization_exponent: u32,
}

impl AlgebraSummary {
    pub fn of(a: &QuotientAlgebra) -> Result<Self, GeometryError> {
        let (semisimple, witness) = is_semisimple(a);
        let grading = graded_dims(a);
        let split = localize_at_c1(a)?;
        Ok(AlgebraSummary {
            presentation: a.display_presentation(),
            generators: a.vars().to_vec(),
            dim: a.dim(),
            relations: a.relations().iter().map(ToString::to_string).collect(),
            c1: a.c1().to_string(),
            c1_min_poly: a.min_poly(a.c1()).to_string(),
            semisimple,
            trace_det: witness.to_string(),
            graded_dims: grading.by_residue,
            even_dim: grading.even_dim,
            nilpotent_dim: split.nilpotent_dim,
            stabilization_exponent: split.stabilization_exponent,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub path: String,
    pub piece: String,
    pub interval: Option<(u32, u32)>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzSection {
    pub levels_checked: Vec<u32>,
    pub verdicts: Vec<LefschetzVerdict>,
    pub vanishing_ranges: Vec<VanishingEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub torus_bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup_bound_note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorLeaf {
    pub piece: String,
    pub occurrences: usize,
    pub superpotential: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_constraint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_value_coefficient: Option<i64>,
    pub critical_points: u32,
    pub monotonicity_constant: String,
    pub jacobi_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hms: Option<HmsVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorSection {
    pub pieces: Vec<MirrorLeaf>,
    pub census: ModelCensus,
}

/// Full analysis result. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input_text: String,
    pub normalized_expr: String,
    pub dimension: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qh: Option<AlgebraSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sh: Option<AlgebraSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror: Option<MirrorSection>,
    pub discrepancy_notes: Vec<String>,
}

fn blowup_nodes(e: &ModelExpr, out: &mut Vec<(u32, u32)>) {
    match e {
        ModelExpr::Blowup { count, child } => {
            out.push((*count, child.dim()));
            blowup_nodes(child, out);
        }
        ModelExpr::Flip { child, .. } => blowup_nodes(child, out),
        ModelExpr::ConnSum(a, b) => {
            blowup_nodes(a, out);
            blowup_nodes(b, out);
        }
        ModelExpr::Bundle(_) | ModelExpr::Cn(_) => {}
    }
}

fn lefschetz_section(eval: &ModelEval, levels: &[u32]) -> Result<LefschetzSection, GeometryError> {
    let verdicts = levels.iter().map(|&j| lefschetz_check_evaluated(eval, j)).collect::<Result<_, _>>()?;
    let vanishing_ranges = eval
        .leaves
        .iter()
        .map(|l| {
            let r = leaf_vanishing_range(&l.leaf.leaf)?;
            Ok(VanishingEntry {
                path: l.leaf.path.clone(),
                piece: l.leaf.leaf.to_string(),
                interval: r.interval,
                reason: r.reason,
            })
        })
        .collect::<Result<_, GeometryError>>()?;
    Ok(LefschetzSection { levels_checked: levels.to_vec(), verdicts, vanishing_ranges })
}

fn mirror_section(eval: &ModelEval) -> Result<MirrorSection, GeometryError> {
    let mut pieces: Vec<MirrorLeaf> = Vec::new();
    for l in &eval.leaves {
        let Leaf::Bundle(b) = l.leaf.leaf else { continue };
        if let Some(p) = pieces.iter_mut().find(|p| p.piece == b.to_string()) {
            p.occurrences += 1;
            continue;
        }
        let w = build_superpotential(&b);
        let jac = jacobi_ring(&w)?;
        let cf = if b.is_calabi_yau() { None } else { Some(verify_critical_family(&w, &b)?) };
        pieces.push(MirrorLeaf {
            piece: b.to_string(),
            occurrences: 1,
            superpotential: w.to_string(),
            critical_constraint: cf.as_ref().map(|c| c.constraint.clone()),
            critical_value: cf.as_ref().map(|c| c.critical_value.clone()),
            critical_value_coefficient: cf.as_ref().map(|c| c.value_coefficient),
            critical_points: cf.as_ref().map_or(0, |c| c.count),
            monotonicity_constant: monotonicity_constant(&b).to_string(),
            jacobi_dim: jac.dim(),
            hms: cf.as_ref().map(|c| hms_check(&jac, &l.sh, c)),
        });
    }
    Ok(MirrorSection { pieces, census: brane_census(eval) })
}

/// Runs the requested analyses on a model tree.
pub fn analyze(expr: &ModelExpr, options: &Options) -> Result<Report, GeometryError> {
    expr.validate()?;
    let expr = expr.clone().normalize();
    let n = expr.dim();
    let eval = eval_model(&expr)?;
    let want = |s: Section| options.sections.contains(&s);
    let has_blowup = eval.leaves.iter().any(|l| l.leaf.origin == LeafOrigin::Blowup);

    let qh = want(Section::Qh).then(|| AlgebraSummary::of(&eval.qh)).transpose()?;
    let sh = want(Section::Sh).then(|| AlgebraSummary::of(&eval.sh)).transpose()?;
    let lefschetz = if want(Section::Lefschetz) {
        let levels: Vec<u32> =
            if options.levels.is_empty() { (1..n).collect() } else { options.levels.clone() };
        Some(lefschetz_section(&eval, &levels)?)
    } else {
        None
    };
    let bounds = want(Section::Bounds).then(|| {
        let mut nodes = Vec::new();
        blowup_nodes(&expr, &mut nodes);
        let notes: Vec<String> = nodes
            .iter()
            .map(|&(m, n)| format!("r <= m(n-1) = {} for m = {m}, n = {n}", m * (n - 1)))
            .collect();
        BoundsSection {
            torus_bound: torus_bound(&eval),
            blowup_bound_note: (!notes.is_empty()).then(|| notes.join("; ")),
        }
    });
    let mirror = want(Section::Mirror).then(|| mirror_section(&eval)).transpose()?;

    let mut discrepancy_notes = Vec::new();
    if has_blowup && (sh.is_some() || bounds.is_some()) {
        discrepancy_notes.push(BLOWUP_EXPONENT_NOTE.to_string());
    }
    if mirror.as_ref().is_some_and(|m| m.pieces.iter().any(|p| p.critical_value.is_some())) {
        discrepancy_notes.push(CRITICAL_VALUE_NOTE.to_string());
    }
    Ok(Report {
        input_text: expr.to_string(),
        normalized_expr: expr.to_string(),
        dimension: n,
        qh,
        sh,
        lefschetz,
        bounds,
        mirror,
        discrepancy_notes,
    })
}

/// Parses `text` and analyzes the resulting model.
pub fn analyze_text(text: &str, options: &Options) -> Result<Report, CliError> {
    let expr = parse_model(text)?;
    let mut report = analyze(&expr, options)?;
    report.input_text = text.to_string();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Serializes a report; output is byte-identical for equal reports.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit_algebra(out: &mut String, name: &str, a: &AlgebraSummary) {
    let residues: Vec<String> = a.graded_dims.iter().map(|(r, d)| format!("{r}:{d}")).collect();
    let _ = writeln!(out, "{name} = {}", a.presentation);
    let _ = writeln!(out, "  {:<20}{}", "dim", a.dim);
    let _ = writeln!(out, "  {:<20}{} (trace det {})", "semisimple", yes_no(a.semisimple), a.trace_det);
    let _ = writeln!(out, "  {:<20}{}", "c1", a.c1);
    let _ = writeln!(out, "  {:<20}{}", "c1 min poly", a.c1_min_poly);
    let _ = writeln!(out, "  {:<20}{} (even part {})", "graded dims", residues.join(" "), a.even_dim);
    let _ = writeln!(
        out,
        "  {:<20}{} (kernel stabilizes at d = {})",
        "c1-nilpotent part", a.nilpotent_dim, a.stabilization_exponent
    );
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lefschetz analysis");
    let _ = writeln!(out, "model: {} (complex dimension {})", r.normalized_expr, r.dimension);
    if let Some(a) = &r.qh {
        out.push('\n');
        emit_algebra(&mut out, "QH*", a);
    }
    if let Some(a) = &r.sh {
        out.push('\n');
        emit_algebra(&mut out, "SH*", a);
    }
    if let Some(l) = &r.lefschetz {
        let _ = writeln!(out, "\nLefschetz levels");
        for v in &l.verdicts {
            let status = match (&v.overall.certified, &v.overall.reason) {
                (true, _) => "certified".to_string(),
                (false, Some(why)) => format!("not certified: {why}"),
                (false, None) => "not certified".to_string(),
            };
            let _ = writeln!(out, "  j = {:<4}{status}", v.level);
            let _ = writeln!(out, "  {:<8}c1^{} = {}", "", v.level, v.c1_power);
        }
        let _ = writeln!(out, "  vanishing ranges");
        for e in &l.vanishing_ranges {
            let range = match e.interval {
                Some((lo, hi)) => format!("[{lo}, {hi}]"),
                None => format!("none ({})", e.reason),
            };
            let _ = writeln!(out, "    {:<16} {:<20} {range}", e.path, e.piece);
        }
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(out, "\nBounds");
        let _ = writeln!(out, "  {:<20}{}", "torus bound", b.torus_bound);
        if let Some(note) = &b.blowup_bound_note {
            let _ = writeln!(out, "  {:<20}{note}", "blow-up bound");
        }
    }
    if let Some(m) = &r.mirror {
        let _ = writeln!(out, "\nMirror");
        for p in &m.pieces {
            if p.occurrences > 1 {
                let _ = writeln!(out, "  {} ({} copies)", p.piece, p.occurrences);
            } else {
                let _ = writeln!(out, "  {}", p.piece);
            }
            let _ = writeln!(out, "    W = {}", p.superpotential);
            if let (Some(c), Some(v)) = (&p.critical_constraint, &p.critical_value) {
                let _ = writeln!(out, "    critical points: {c} = 0, {} of them, value {v}", p.critical_points);
            }
            let _ = writeln!(out, "    dim Jac(W) = {}, monotonicity constant {}", p.jacobi_dim, p.monotonicity_constant);
            if let Some(h) = &p.hms {
                let _ = writeln!(out, "    Jac(W) vs SH*: {}", if h.ok { "match" } else { "MISMATCH" });
            }
        }
        let _ = writeln!(out, "  census");
        for e in &m.census.entries {
            let _ = writeln!(
                out,
                "    {:<16} {:<20} tori {}, local systems per torus {}, m0 roots of {} ({})",
                e.node,
                e.piece,
                e.tori,
                e.local_systems_per_torus,
                e.m0_min_poly,
                if e.m0_distinct { "distinct" } else { "repeated" }
            );
        }
        let _ = writeln!(
            out,
            "    total {} branes, torus bound {}",
            m.census.total_branes, m.census.torus_bound
        );
    }
    if !r.discrepancy_notes.is_empty() {
        let _ = writeln!(out, "\nNotes");
        for n in &r.discrepancy_notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}

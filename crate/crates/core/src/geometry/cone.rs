//! Rational polyhedral cones and polytopes: face enumeration for the good-cone
//! conditions, and the Delzant test on the cross-section at height one.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::BundleModel;
use crate::coeffs::Rational;
use crate::error::GeometryError;

/// Cone `{x : ⟨x, v_i⟩ ≥ 0}` given by its inward facet normals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentCone {
    pub facet_normals: Vec<Vec<i64>>,
}

/// Polytope `{y : ⟨a_i, y⟩ + b_i ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub facets: Vec<(Vec<i64>, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodConeVerdict {
    pub strictly_convex: bool,
    /// Every nonzero proper face of codimension c lies on exactly c facets.
    pub face_condition: bool,
    /// The normals of the facets through each such face are linearly independent.
    pub rank_condition: bool,
    pub good: bool,
    pub faces_checked: usize,
    /// Number of facets through the apex (not subject to the conditions).
    pub apex_facets: usize,
    pub failures: Vec<String>,
}

fn to_rat(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
        .collect()
}

/// In-place reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m = to_rat(rows);
    rref(&mut m, ncols).len()
}

/// Primitive integer vectors spanning the kernel of `rows` (as a rational space).
fn kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m = to_rat(rows);
    let pivots = rref(&mut m, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Scales a nonzero rational vector to a primitive integer vector (same direction).
fn primitive(v: &[Rational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.iter().map(|c| i64::try_from(c / &g).expect("lattice vector fits in i64")).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Extreme rays of a pointed cone `{x : ⟨x, v⟩ ≥ 0}` in ℝ^dim.
fn extreme_rays(normals: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = Vec::new();
    if dim == 0 {
        return rays;
    }
    for s in subsets(normals.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| normals[i].clone()).collect();
        let ker = kernel(&rows, dim);
        if ker.len() != 1 {
            continue;
        }
        let r = &ker[0];
        for cand in [r.clone(), r.iter().map(|c| -c).collect::<Vec<_>>()] {
            if normals.iter().all(|v| dot(&cand, v) >= 0) && !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    rays
}

impl MomentCone {
    pub fn new(facet_normals: Vec<Vec<i64>>) -> Self {
        MomentCone { facet_normals }
    }

    pub fn dim(&self) -> usize {
        self.facet_normals.first().map_or(0, Vec::len)
    }

    /// Positive orthant in ℝⁿ, the moment cone of the round sphere S^{2n−1}.
    pub fn orthant(n: usize) -> Self {
        MomentCone::new((0..n).map(|i| unit(n, i)).collect())
    }

    /// Cone over `polytope × {1}`.
    pub fn over_polytope(p: &Polytope) -> Self {
        MomentCone::new(
            p.facets
                .iter()
                .map(|(a, b)| a.iter().copied().chain([*b]).collect())
                .collect(),
        )
    }

    /// Moment cone of the unit sphere bundle of O(−m)^{⊕n1} → CP^{n2}: the cone
    /// over the moment polytope of CP^{n1−1} × CP^{n2}.
    pub fn of_bundle(b: &BundleModel) -> Self {
        Self::over_polytope(&Polytope::simplex_product(b.n1 as usize - 1, b.n2 as usize))
    }

    /// Intersection with the hyperplane where the last coordinate is 1.
    pub fn cross_section(&self) -> Polytope {
        Polytope {
            facets: self
                .facet_normals
                .iter()
                .map(|v| {
                    let (b, a) = v.split_last().expect("nonempty normal");
                    (a.to_vec(), *b)
                })
                .collect(),
        }
    }

    pub fn extreme_rays(&self) -> Vec<Vec<i64>> {
        extreme_rays(&self.facet_normals, self.dim())
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.facets.first().map_or(0, |(a, _)| a.len())
    }

    /// Standard simplex `{y ≥ 0, Σ y ≤ 1}` in ℝ^k.
    pub fn simplex(k: usize) -> Self {
        let mut facets: Vec<(Vec<i64>, i64)> = (0..k).map(|i| (unit(k, i), 0)).collect();
        facets.push((vec![-1; k], 1));
        Polytope { facets }
    }

    /// Δ^a × Δ^b in ℝ^{a+b}.
    pub fn simplex_product(a: usize, b: usize) -> Self {
        let pad = |(v, c): (Vec<i64>, i64), before: usize, after: usize| {
            let mut w = vec![0; before];
            w.extend(v);
            w.extend(std::iter::repeat_n(0, after));
            (w, c)
        };
        let mut facets = Vec::new();
        if a > 0 {
            facets.extend(Polytope::simplex(a).facets.into_iter().map(|f| pad(f, 0, b)));
        }
        if b > 0 {
            facets.extend(Polytope::simplex(b).facets.into_iter().map(|f| pad(f, a, 0)));
        }
        Polytope { facets }
    }

    /// Vertices as rational points.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for s in subsets(self.facets.len(), d) {
            // [A | -b] in row echelon form gives A y = -b
            let mut m: Vec<Vec<Rational>> = s
                .iter()
                .map(|&i| {
                    let (a, b) = &self.facets[i];
                    a.iter()
                        .chain(std::iter::once(&-b))
                        .map(|&c| Rational::from_integer(BigInt::from(c)))
                        .collect()
                })
                .collect();
            let pivots = rref(&mut m, d);
            if pivots.len() != d {
                continue;
            }
            let y: Vec<Rational> = (0..d).map(|r| m[r][d].clone()).collect();
            let feasible = self.facets.iter().all(|(a, b)| !self.slack(a, *b, &y).is_negative());
            if feasible && !out.contains(&y) {
                out.push(y);
            }
        }
        out
    }

    fn slack(&self, a: &[i64], b: i64, y: &[Rational]) -> Rational {
        a.iter()
            .zip(y)
            .fold(Rational::from_integer(BigInt::from(b)), |acc, (&c, v)| {
                acc + Rational::from_integer(BigInt::from(c)) * v
            })
    }

    pub fn is_bounded(&self) -> bool {
        let normals: Vec<Vec<i64>> = self.facets.iter().map(|(a, _)| a.clone()).collect();
        let d = self.dim();
        rank(&normals, d) == d && extreme_rays(&normals, d).is_empty()
    }
}

/// Good-cone conditions, checked on every nonzero proper face obtained by
/// exhaustive enumeration of facet subsets. The apex of a strictly convex cone
/// is a point of the cone but not of the contact manifold, so it is excluded.
pub fn good_cone_check(c: &MomentCone) -> Result<GoodConeVerdict, GeometryError> {
    let n = c.dim();
    let normals = &c.facet_normals;
    if n == 0 || normals.iter().any(|v| v.len() != n || v.iter().all(|&x| x == 0)) {
        return Err(GeometryError::DegenerateCone);
    }
    let strictly_convex = rank(normals, n) == n;
    if !strictly_convex {
        return Ok(GoodConeVerdict {
            strictly_convex,
            face_condition: false,
            rank_condition: false,
            good: false,
            faces_checked: 0,
            apex_facets: 0,
            failures: vec!["cone contains a line".into()],
        });
    }
    let rays = c.extreme_rays();
    if rank(&rays, n) < n {
        return Err(GeometryError::DegenerateCone);
    }

    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u64..(1u64 << normals.len()) {
        let on_face: Vec<usize> = (0..rays.len())
            .filter(|&r| {
                (0..normals.len()).all(|j| mask & (1 << j) == 0 || dot(&rays[r], &normals[j]) == 0)
            })
            .collect();
        faces.insert(on_face);
    }

    let mut face_condition = true;
    let mut rank_condition = true;
    let mut failures = Vec::new();
    let mut faces_checked = 0;
    let mut apex_facets = normals.len();
    for face in &faces {
        let face_rays: Vec<Vec<i64>> = face.iter().map(|&r| rays[r].clone()).collect();
        let active: Vec<usize> = (0..normals.len())
            .filter(|&j| face_rays.iter().all(|r| dot(r, &normals[j]) == 0))
            .collect();
        if face.is_empty() {
            apex_facets = active.len();
            continue;
        }
        let codim = n - rank(&face_rays, n);
        if codim == 0 {
            continue;
        }
        faces_checked += 1;
        if active.len() != codim {
            face_condition = false;
            failures.push(format!(
                "face spanned by rays {face:?} has codimension {codim} but lies on {} facets",
                active.len()
            ));
        }
        let active_normals: Vec<Vec<i64>> = active.iter().map(|&j| normals[j].clone()).collect();
        if rank(&active_normals, n) != active.len() {
            rank_condition = false;
            failures.push(format!("normals of facets {active:?} are linearly dependent"));
        }
    }
    Ok(GoodConeVerdict {
        strictly_convex,
        face_condition,
        rank_condition,
        good: face_condition && rank_condition,
        faces_checked,
        apex_facets,
        failures,
    })
}

/// Delzant test: the polytope is simple and at every vertex the primitive
/// edge directions form a ℤ-basis.
pub fn delzant_check(p: &Polytope) -> Result<bool, GeometryError> {
    if !p.is_bounded() {
        return Err(GeometryError::UnboundedPolytope);
    }
    let d = p.dim();
    for y in p.vertices() {
        let active: Vec<&Vec<i64>> = p
            .facets
            .iter()
            .filter(|(a, b)| p.slack(a, *b, &y).is_zero())
            .map(|(a, _)| a)
            .collect();
        if active.len() != d {
            return Ok(false);
        }
        // edge i is orthogonal to all active normals but the i-th
        let mut edges: Vec<Vec<i64>> = Vec::with_capacity(d);
        for i in 0..d {
            let rows: Vec<Vec<i64>> =
                (0..d).filter(|&k| k != i).map(|k| active[k].clone()).collect();
            let ker = kernel(&rows, d);
            let mut e = ker.into_iter().next().expect("simple vertex has one edge per facet");
            if dot(&e, active[i]) < 0 {
                e.iter_mut().for_each(|c| *c = -*c);
            }
            edges.push(e);
        }
        let det = int_det(&edges);
        if det.abs() != BigInt::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn int_det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m = to_rat(rows);
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det.to_integer()
}

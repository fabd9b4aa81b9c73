use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::coeffs::{Rational, RatFunc};
use crate::error::GeometryError;
use crate::polyalg::{vars, MPoly, Matrix, Monomial};

/// Split negative bundle O(−m)^{⊕n1} → CP^{n2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BundleModel {
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
}

impl BundleModel {
    pub fn new(m: u32, n1: u32, n2: u32) -> Result<Self, GeometryError> {
        if m == 0 || n1 == 0 || n2 == 0 {
            return Err(GeometryError::InvalidParameters(format!(
                "O(-{m})^{n1} -> P^{n2}: twist, rank and base dimension must be positive"
            )));
        }
        if m * n1 > n2 + 1 {
            return Err(GeometryError::NotSemiPositive { mn1: m * n1, bound: n2 + 1 });
        }
        Ok(BundleModel { m, n1, n2 })
    }

    /// Complex dimension of the total space.
    pub fn n(&self) -> u32 {
        self.n1 + self.n2
    }

    /// `n2 + 1 − m·n1`: the minimal Chern number, and the q-exponent of the quantum relation.
    pub fn chern_number(&self) -> u32 {
        self.n2 + 1 - self.m * self.n1
    }

    pub fn is_calabi_yau(&self) -> bool {
        self.m * self.n1 == self.n2 + 1
    }

    /// `(−m)^{m·n1} (n2+1)^{m·n1}`
    pub fn relation_constant(&self) -> BigInt {
        let e = self.m * self.n1;
        Pow::pow(BigInt::from(-(self.m as i64)) * BigInt::from(self.n2 + 1), e)
    }

    /// `q^{n2+1−m·n1} (−m)^{m·n1} (n2+1)^{m·n1}`, the constant of the SH relation.
    pub fn sh_constant(&self) -> RatFunc {
        RatFunc::q_monomial(Rational::from_integer(self.relation_constant()), self.chern_number() as usize)
    }
}

impl std::fmt::Display for BundleModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "O(-{})", self.m)?;
        if self.n1 != 1 {
            write!(f, "^{}", self.n1)?;
        }
        write!(f, " -> P^{}", self.n2)
    }
}

fn x_monomial(e: u32) -> Monomial {
    Monomial::new(vec![e])
}

fn bundle_presentation(b: &BundleModel, relation: MPoly) -> AlgebraPresentation {
    let v = relation.vars().clone();
    let c1 = MPoly::var(&v, 0).scale(&RatFunc::from_int(b.chern_number() as i64));
    AlgebraPresentation::new(v, vec![2], vec![relation], c1, b.chern_number())
}

/// Closed-form quantum cohomology:
/// `𝕂[x]/(x^{n2+1} − q^{n2+1−m·n1} (−m)^{m·n1} (n2+1)^{m·n1} x^{m·n1})`,
/// with c₁ = (n2+1−m·n1)·x and N_M = n2+1−m·n1.
pub fn build_bundle_qh(b: &BundleModel) -> AlgebraPresentation {
    let v = vars(&["x"]);
    let rel = MPoly::from_terms(
        &v,
        [(x_monomial(b.n2 + 1), RatFunc::one()), (x_monomial(b.m * b.n1), -b.sh_constant())],
    );
    bundle_presentation(b, rel)
}

/// Closed-form symplectic cohomology
/// `𝕂[x]/(x^{n2+1−m·n1} − q^{n2+1−m·n1} (−m)^{m·n1} (n2+1)^{m·n1})`
/// (the zero ring in the Calabi–Yau case).
pub fn closed_form_sh_relation(b: &BundleModel) -> MPoly {
    let v = vars(&["x"]);
    if b.is_calabi_yau() {
        return MPoly::one(&v);
    }
    MPoly::from_terms(&v, [(x_monomial(b.chern_number()), RatFunc::one()), (x_monomial(0), -b.sh_constant())])
}

/// Σ e_i = multiplier · Σ_j weight_j · f_j among the fan rays; the quantum
/// Stanley–Reisner relation is `Π x_i = q^{q_exponent} Π y_j^{weight_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRelation {
    pub fiber_weights: Vec<i64>,
    pub multiplier: i64,
    pub q_exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanData {
    /// Base rays e_1 … e_{n2+1} followed by fiber rays f_1 … f_{n1}.
    pub rays: Vec<Vec<i64>>,
    pub base_count: usize,
    pub primitive_relation: PrimitiveRelation,
}

impl FanData {
    pub fn base_rays(&self) -> &[Vec<i64>] {
        &self.rays[..self.base_count]
    }

    pub fn fiber_rays(&self) -> &[Vec<i64>] {
        &self.rays[self.base_count..]
    }

    /// Checks the primitive relation coordinate-wise.
    pub fn relation_holds(&self) -> bool {
        let dim = self.rays.first().map_or(0, Vec::len);
        let rel = &self.primitive_relation;
        (0..dim).all(|c| {
            let lhs: i64 = self.base_rays().iter().map(|r| r[c]).sum();
            let rhs: i64 =
                self.fiber_rays().iter().zip(&rel.fiber_weights).map(|(r, w)| w * r[c]).sum();
            lhs == rel.multiplier * rhs
        })
    }
}

fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &c| num_integer::gcd(g, c)) == 1
}

/// Rays `e_i = (b_i, m, …, m)` with `b_i` the rays of CP^{n2}, and unit fiber rays `f_j`.
pub fn build_fan(b: &BundleModel) -> FanData {
    let (n1, n2) = (b.n1 as usize, b.n2 as usize);
    let n = n1 + n2;
    let m = b.m as i64;
    let mut rays = Vec::with_capacity(n2 + 1 + n1);
    for i in 0..=n2 {
        let mut r = vec![0i64; n];
        if i < n2 {
            r[i] = 1;
        } else {
            r[..n2].iter_mut().for_each(|c| *c = -1);
        }
        r[n2..].iter_mut().for_each(|c| *c = m);
        rays.push(r);
    }
    for j in 0..n1 {
        let mut r = vec![0i64; n];
        r[n2 + j] = 1;
        rays.push(r);
    }
    let fan = FanData {
        rays,
        base_count: n2 + 1,
        primitive_relation: PrimitiveRelation {
            fiber_weights: vec![m; n1],
            multiplier: n2 as i64 + 1,
            q_exponent: b.chern_number() as i64,
        },
    };
    debug_assert!(fan.relation_holds());
    debug_assert!(fan.rays.iter().all(|r| is_primitive(r)));
    fan
}

/// Linear relations `Σ_rays ⟨u, ray⟩ D_ray = 0` for each coordinate functional `u`.
fn linear_relations(fan: &FanData) -> Vec<Vec<i64>> {
    let dim = fan.rays.first().map_or(0, Vec::len);
    (0..dim).map(|c| fan.rays.iter().map(|r| r[c]).collect()).collect()
}

fn fan_ring_vars(fan: &FanData) -> Vec<String> {
    let nb = fan.base_count;
    (1..=nb)
        .map(|i| format!("x{i}"))
        .chain((1..=fan.rays.len() - nb).map(|j| format!("y{j}")))
        .collect()
}

fn sr_relation(fan: &FanData, v: &crate::polyalg::Vars) -> MPoly {
    let nb = fan.base_count;
    let nvars = fan.rays.len();
    let rel = &fan.primitive_relation;
    let lhs = Monomial::new((0..nvars).map(|i| u32::from(i < nb)).collect());
    let rhs = Monomial::new(
        (0..nvars).map(|i| if i < nb { 0 } else { rel.fiber_weights[i - nb] as u32 }).collect(),
    );
    MPoly::from_terms(
        v,
        [
            (lhs, RatFunc::one()),
            (rhs, -RatFunc::q_monomial(Rational::one(), rel.q_exponent as usize)),
        ],
    )
}

/// The multivariate presentation read off the fan: linear relations plus the
/// quantum Stanley–Reisner relation, in variables `x1…x_{n2+1}, y1…y_{n1}`.
pub fn fan_ideal(b: &BundleModel) -> (crate::polyalg::Vars, Vec<MPoly>) {
    let fan = build_fan(b);
    let v = vars(&fan_ring_vars(&fan));
    let mut rels: Vec<MPoly> = linear_relations(&fan)
        .into_iter()
        .map(|row| {
            MPoly::from_terms(
                &v,
                row.iter().enumerate().map(|(i, &c)| {
                    (Monomial::var(v.len(), i, 1), RatFunc::from_int(c))
                }),
            )
        })
        .collect();
    rels.push(sr_relation(&fan, &v));
    (v, rels)
}

/// Presentation derived from the fan: the linear relations express every
/// divisor class as a multiple of `x = x_{n2+1}`; substituting into the
/// quantum Stanley–Reisner relation yields a univariate relation.
pub fn derive_qh_from_fan(b: &BundleModel) -> Result<AlgebraPresentation, GeometryError> {
    let fan = build_fan(b);
    if !fan.relation_holds() {
        return Err(GeometryError::InvalidParameters("primitive relation fails".into()));
    }
    let lin = linear_relations(&fan);
    let nvars = fan.rays.len();
    let free = fan.base_count - 1;
    // column order: every divisor except the free one, then the free one
    let order: Vec<usize> = (0..nvars).filter(|&i| i != free).chain([free]).collect();
    let mat = Matrix::from_rows(
        lin.iter()
            .map(|row| order.iter().map(|&i| RatFunc::from_int(row[i])).collect())
            .collect(),
    );
    let (rref, pivots) = mat.rref();
    if pivots.len() != nvars - 1 || pivots.contains(&(nvars - 1)) {
        return Err(GeometryError::InvalidParameters(
            "linear relations do not cut the divisor classes down to one generator".into(),
        ));
    }
    let x = vars(&["x"]);
    let xv = MPoly::var(&x, 0);
    let mut images = vec![MPoly::zero(&x); nvars];
    images[free] = xv.clone();
    for (row, &p) in pivots.iter().enumerate() {
        // D_{order[p]} + r · D_free = 0
        let r = rref.get(row, nvars - 1);
        images[order[p]] = xv.scale(&-r);
    }
    let v = vars(&fan_ring_vars(&fan));
    let rel = sr_relation(&fan, &v).substitute(&images);
    Ok(bundle_presentation(b, rel))
}

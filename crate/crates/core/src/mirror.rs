//! Landau–Ginzburg mirror of a split negative bundle: superpotential, closed-form
//! critical family, Jacobi ring and the comparison with symplectic cohomology.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_quotient, is_semisimple, AlgebraPresentation, QuotientAlgebra};
use crate::coeffs::{rat, RatFunc};
use crate::error::GeometryError;
use crate::geometry::{BundleModel, Leaf, LeafOrigin, ModelEval};
use crate::polyalg::{vars, MPoly, Monomial, UniPoly};

/// Laurent polynomial in z₁ … z_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    n: usize,
    terms: BTreeMap<Vec<i64>, RatFunc>,
}

impl Superpotential {
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, RatFunc)>) -> Self {
        let mut map: BTreeMap<Vec<i64>, RatFunc> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length");
            let entry = map.entry(e).or_insert_with(RatFunc::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Superpotential { n, terms: map }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Terms in descending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &RatFunc)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `z_j ∂W/∂z_j`
    pub fn log_derivative(&self, j: usize) -> Superpotential {
        Superpotential::new(
            self.n,
            self.terms.iter().map(|(e, c)| (e.clone(), c * &RatFunc::from_int(e[j]))),
        )
    }
}

impl fmt::Display for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let (negative, mag) = c.signed_parts();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("z{}", i + 1) } else { format!("z{}^{a}", i + 1) })
                .collect();
            let coeff = if c.is_atomic() { mag } else { format!("({mag})") };
            match (factors.is_empty(), coeff.as_str()) {
                (true, _) => f.write_str(&coeff)?,
                (false, "1") => f.write_str(&factors.join("*"))?,
                (false, _) => write!(f, "{coeff}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `W = Σ z_j + q^{n2+1−m·n1} (n2+1)^{m·n1} z₁⁻¹ ⋯ z_{n2}⁻¹ z_{n2+1}^m ⋯ z_n^m`
pub fn build_superpotential(b: &BundleModel) -> Superpotential {
    let n = b.n() as usize;
    let n2 = b.n2 as usize;
    let mut terms: Vec<(Vec<i64>, RatFunc)> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            (e, RatFunc::one())
        })
        .collect();
    let quantum: Vec<i64> = (0..n).map(|j| if j < n2 { -1 } else { b.m as i64 }).collect();
    let c = num_traits::Pow::pow(num_bigint::BigInt::from(b.n2 + 1), b.m * b.n1);
    terms.push((quantum, RatFunc::q_monomial(c.into(), b.chern_number() as usize)));
    Superpotential::new(n, terms)
}

/// Arithmetic in 𝕂[x]/(x^k − K) with K ≠ 0, where x is a unit.
struct CyclicQuotient {
    k: usize,
    constant: RatFunc,
}

impl CyclicQuotient {
    /// `c · x^e` reduced to coefficients of 1, x, …, x^{k−1}.
    fn monomial(&self, c: &RatFunc, e: i64) -> Vec<RatFunc> {
        let k = self.k as i64;
        let (turns, r) = (e.div_euclid(k), e.rem_euclid(k));
        let scale = if turns >= 0 {
            self.constant.pow(turns as u32)
        } else {
            self.constant.inv().expect("nonzero constant").pow((-turns) as u32)
        };
        let mut out = vec![RatFunc::zero(); self.k];
        out[r as usize] = c * &scale;
        out
    }

    fn add(a: &mut [RatFunc], b: &[RatFunc]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = &*x + y;
        }
    }

    fn to_upoly(&self, v: &[RatFunc]) -> UniPoly {
        UniPoly::new(v.to_vec())
    }
}

/// Closed-form critical locus `z_c = (x, …, x, −m x, …, −m x)` with
/// `x^{n2+1−m·n1} = q^{n2+1−m·n1} (−m)^{m·n1} (n2+1)^{m·n1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalFamily {
    /// Multiplier of x in each coordinate.
    pub pattern: Vec<i64>,
    /// Constraint polynomial in x.
    pub constraint: String,
    /// W(z_c) reduced modulo the constraint.
    pub critical_value: String,
    /// Coefficient c in W(z_c) = c·x.
    pub value_coefficient: i64,
    /// Number of critical points, the degree of the constraint.
    pub count: u32,
    /// Monotonicity constant (1 + n2 − m·n1)/(m·n1).
    pub monotonicity_constant: String,
    #[serde(skip)]
    constraint_poly: Option<UniPoly>,
}

impl CriticalFamily {
    pub fn constraint_poly(&self) -> &UniPoly {
        self.constraint_poly.as_ref().expect("constructed by verify_critical_family")
    }
}

/// Substitutes the pattern into every logarithmic partial derivative and the
/// superpotential, reducing modulo the constraint.
pub fn verify_critical_family(w: &Superpotential, b: &BundleModel) -> Result<CriticalFamily, GeometryError> {
    if b.is_calabi_yau() {
        return Err(GeometryError::CriticalFamilyInvalid(format!(
            "{b} is Calabi-Yau: the superpotential has no critical points"
        )));
    }
    let n = b.n() as usize;
    if w.n() != n {
        return Err(GeometryError::DimensionMismatch(format!("superpotential in {} variables for {b}", w.n())));
    }
    let k = b.chern_number() as usize;
    let ring = CyclicQuotient { k, constant: b.sh_constant() };
    let pattern: Vec<i64> = (0..n).map(|j| if j < b.n2 as usize { 1 } else { -(b.m as i64) }).collect();
    let restrict = |p: &Superpotential| {
        let mut acc = vec![RatFunc::zero(); k];
        for (e, c) in p.terms() {
            let factor = e.iter().zip(&pattern).fold(RatFunc::one(), |f, (&a, &s)| {
                let s = RatFunc::from_int(s);
                &f * &if a >= 0 { s.pow(a as u32) } else { s.inv().expect("nonzero").pow((-a) as u32) }
            });
            CyclicQuotient::add(&mut acc, &ring.monomial(&(c * &factor), e.iter().sum()));
        }
        acc
    };
    for j in 0..n {
        let g = restrict(&w.log_derivative(j));
        if g.iter().any(|c| !c.is_zero()) {
            return Err(GeometryError::CriticalFamilyInvalid(format!(
                "z{} dW/dz{} restricts to {} on the family",
                j + 1,
                j + 1,
                ring.to_upoly(&g).display_in("x")
            )));
        }
    }
    let value = restrict(w);
    let coefficient = (b.n2 + 1) as i64 - (b.m * b.n1) as i64;
    let expected = ring.monomial(&RatFunc::from_int(coefficient), 1);
    if value != expected {
        return Err(GeometryError::CriticalFamilyInvalid(format!(
            "critical value {} is not {coefficient}*x",
            ring.to_upoly(&value).display_in("x")
        )));
    }
    let mut constraint = vec![-b.sh_constant()];
    constraint.resize(k, RatFunc::zero());
    constraint.push(RatFunc::one());
    let constraint = UniPoly::new(constraint);
    Ok(CriticalFamily {
        pattern,
        constraint: constraint.display_in("x"),
        critical_value: ring.to_upoly(&value).display_in("x"),
        value_coefficient: coefficient,
        count: k as u32,
        monotonicity_constant: monotonicity_constant(b).to_string(),
        constraint_poly: Some(constraint),
    })
}

/// Jacobi ring of W: variables z_j and inverses u_j with z_j u_j = 1, modulo
/// the logarithmic derivatives z_j ∂_j W. The distinguished element is W.
pub fn jacobi_ring(w: &Superpotential) -> Result<QuotientAlgebra, GeometryError> {
    let n = w.n();
    let names: Vec<String> =
        (1..=n).map(|j| format!("z{j}")).chain((1..=n).map(|j| format!("u{j}"))).collect();
    let v = vars(&names);
    let to_poly = |p: &Superpotential| {
        MPoly::from_terms(
            &v,
            p.terms().map(|(e, c)| {
                let mut exps = vec![0u32; 2 * n];
                for (j, &a) in e.iter().enumerate() {
                    if a >= 0 {
                        exps[j] = a as u32;
                    } else {
                        exps[n + j] = (-a) as u32;
                    }
                }
                (Monomial::new(exps), c.clone())
            }),
        )
    };
    let mut relations: Vec<MPoly> = (0..n)
        .map(|j| &(&MPoly::var(&v, j) * &MPoly::var(&v, n + j)) - &MPoly::one(&v))
        .collect();
    relations.extend((0..n).map(|j| to_poly(&w.log_derivative(j))));
    let pres = AlgebraPresentation::new(v.clone(), vec![0; 2 * n], relations, to_poly(w), 0);
    Ok(build_quotient(pres)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmsVerdict {
    pub jacobi_dim: usize,
    pub sh_dim: usize,
    /// (a) dim Jac(W) = dim SH.
    pub dims_match: bool,
    /// (b) both algebras semisimple.
    pub both_semisimple: bool,
    /// (c) the c₁ characteristic polynomial on SH vanishes at the critical value.
    pub critical_values_are_eigenvalues: bool,
    /// W on Jac(W) and c₁ on SH have the same characteristic polynomial.
    pub char_polys_match: bool,
    pub ok: bool,
}

pub fn hms_check(jac: &QuotientAlgebra, sh: &QuotientAlgebra, cf: &CriticalFamily) -> HmsVerdict {
    let p = sh.c1_char_poly();
    let at_value = p.rescale_variable(&RatFunc::from_int(cf.value_coefficient)).rem(cf.constraint_poly());
    let dims_match = jac.dim() == sh.dim();
    let both_semisimple = is_semisimple(jac).0 && is_semisimple(sh).0;
    let critical_values_are_eigenvalues = at_value.is_zero();
    let char_polys_match = jac.c1_char_poly() == p;
    HmsVerdict {
        jacobi_dim: jac.dim(),
        sh_dim: sh.dim(),
        dims_match,
        both_semisimple,
        critical_values_are_eigenvalues,
        char_polys_match,
        ok: dims_match && both_semisimple && critical_values_are_eigenvalues && char_polys_match,
    }
}

/// Monotone Lagrangian tori with local systems contributed by one node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraneCensus {
    pub node: String,
    pub piece: String,
    pub tori: usize,
    pub local_systems_per_torus: usize,
    /// Minimal polynomial of c₁ on the piece's SH; its roots are the m₀ values.
    pub m0_min_poly: String,
    pub m0_distinct: bool,
    pub total_branes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCensus {
    pub entries: Vec<BraneCensus>,
    pub total_branes: usize,
    pub torus_bound: usize,
    pub matches_bound: bool,
}

/// One entry per bundle node (blow-up pieces of the same node grouped);
/// ℂⁿ leaves carry no tori and are omitted.
pub fn brane_census(eval: &ModelEval) -> ModelCensus {
    let mut entries: Vec<BraneCensus> = Vec::new();
    for l in &eval.leaves {
        let Leaf::Bundle(b) = l.leaf.leaf else { continue };
        let node = match l.leaf.origin {
            LeafOrigin::Blowup => l.leaf.path.rsplit_once('/').map_or("root", |(p, _)| p).to_string(),
            _ => l.leaf.path.clone(),
        };
        if let Some(prev) = entries.last_mut() {
            if l.leaf.origin == LeafOrigin::Blowup && prev.node == node && prev.piece == b.to_string() {
                prev.tori += 1;
                prev.total_branes = prev.tori * prev.local_systems_per_torus;
                continue;
            }
        }
        let (tori, s, min_poly, distinct) = if b.is_calabi_yau() {
            (0, 0, "1".to_string(), true)
        } else {
            let mp = l.sh.min_poly(l.sh.c1());
            (1, l.sh.dim(), mp.to_string(), mp.is_squarefree())
        };
        entries.push(BraneCensus {
            node,
            piece: b.to_string(),
            tori,
            local_systems_per_torus: s,
            m0_min_poly: min_poly,
            m0_distinct: distinct,
            total_branes: tori * s,
        });
    }
    let total_branes = entries.iter().map(|e| e.total_branes).sum();
    let torus_bound = crate::geometry::torus_bound(eval);
    ModelCensus { entries, total_branes, torus_bound, matches_bound: total_branes == torus_bound }
}

/// `λ_M` as an exact rational.
pub fn monotonicity_constant(b: &BundleModel) -> crate::coeffs::Rational {
    rat((b.n2 + 1) as i64 - (b.m * b.n1) as i64) / rat((b.m * b.n1) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{eval_model, ModelExpr};

    fn b(m: u32, n1: u32, n2: u32) -> BundleModel {
        BundleModel::new(m, n1, n2).unwrap()
    }

    #[test]
    fn superpotentials() {
        assert_eq!(build_superpotential(&b(1, 1, 2)).to_string(), "z1 + z2 + z3 + 3*q^2*z1^-1*z2^-1*z3");
        assert_eq!(build_superpotential(&b(1, 1, 1)).to_string(), "z1 + z2 + 2*q*z1^-1*z2");
        assert_eq!(build_superpotential(&b(2, 1, 2)).to_string(), "z1 + z2 + z3 + 9*q*z1^-1*z2^-1*z3^2");
        assert_eq!(build_superpotential(&b(1, 2, 3)).len(), 6);
    }

    #[test]
    fn critical_families() {
        let cf = verify_critical_family(&build_superpotential(&b(1, 1, 2)), &b(1, 1, 2)).unwrap();
        assert_eq!((cf.constraint.as_str(), cf.critical_value.as_str(), cf.count), ("x^2 + 3*q^2", "2*x", 2));
        let cf = verify_critical_family(&build_superpotential(&b(1, 1, 1)), &b(1, 1, 1)).unwrap();
        assert_eq!((cf.critical_value.as_str(), cf.count), ("-2*q", 1));
        let cf = verify_critical_family(&build_superpotential(&b(1, 2, 3)), &b(1, 2, 3)).unwrap();
        assert_eq!((cf.constraint.as_str(), cf.value_coefficient), ("x^2 - 16*q^2", 2));
        assert_eq!(cf.monotonicity_constant, "1");
        assert_eq!(monotonicity_constant(&b(1, 1, 2)).to_string(), "2");
    }

    #[test]
    fn wrong_superpotential_is_caught() {
        let mut w = build_superpotential(&b(1, 1, 2));
        w = Superpotential::new(3, w.terms().map(|(e, c)| (e.clone(), c + c)).collect::<Vec<_>>());
        assert!(matches!(
            verify_critical_family(&w, &b(1, 1, 2)),
            Err(GeometryError::CriticalFamilyInvalid(_))
        ));
    }

    #[test]
    fn jacobi_rings_match_sh() {
        for (m, n1, n2) in [(1, 1, 1), (1, 1, 2), (2, 1, 2), (1, 2, 3)] {
            let bm = b(m, n1, n2);
            let w = build_superpotential(&bm);
            let jac = jacobi_ring(&w).unwrap();
            let ev = eval_model(&ModelExpr::Bundle(bm)).unwrap();
            let cf = verify_critical_family(&w, &bm).unwrap();
            let v = hms_check(&jac, &ev.sh, &cf);
            assert!(v.ok, "{bm}: {v:?}");
        }
    }

    #[test]
    fn calabi_yau_jacobi_ring_vanishes() {
        let jac = jacobi_ring(&build_superpotential(&b(1, 2, 1))).unwrap();
        assert!(jac.is_zero_ring());
    }

    #[test]
    fn census() {
        let ev = eval_model(&ModelExpr::blowup(3, ModelExpr::Cn(2))).unwrap();
        let c = brane_census(&ev);
        assert_eq!(c.entries.len(), 1);
        assert_eq!((c.entries[0].tori, c.entries[0].local_systems_per_torus), (3, 1));
        assert_eq!((c.total_branes, c.torus_bound), (3, 3));
        let c = brane_census(&eval_model(&ModelExpr::bundle(1, 1, 2).unwrap()).unwrap());
        assert_eq!(c.entries[0].m0_min_poly, "t^2 + 12*q^2");
        assert!(c.entries[0].m0_distinct);
        let c = brane_census(&eval_model(&ModelExpr::bundle(2, 1, 2).unwrap()).unwrap());
        assert_eq!((c.entries[0].tori, c.entries[0].local_systems_per_torus), (1, 1));
    }
}

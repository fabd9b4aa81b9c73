use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Matrix, MPoly, Monomial, Vars};
use crate::coeffs::RatFunc;
use crate::error::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic in the declared variable sequence.
    #[default]
    DegRevLex,
}

/// Reduced Gröbner basis: monic generators sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: Vars,
    generators: Vec<MPoly>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_unit()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().filter_map(MPoly::leading_monomial)
    }

    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        reduce(p, &self.generators)
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Full reduction of `p` by `divisors` (each nonzero). The remainder has no
/// term divisible by a leading monomial of a divisor.
pub fn reduce(p: &MPoly, divisors: &[MPoly]) -> MPoly {
    let leads: Vec<(&Monomial, RatFunc)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().expect("zero divisor in reduction");
            (m, c.inv().expect("nonzero leading coefficient"))
        })
        .collect();
    let mut work = p.clone();
    let mut rem = MPoly::zero(p.vars());
    while let Some((m, c)) = work.terms_mut().pop_last() {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                let (lm, lc_inv) = &leads[k];
                let shift = lm.quotient_of(&m);
                let factor = &c * lc_inv;
                for (gm, gc) in divisors[k].terms().skip(1) {
                    work.add_term(gm.mul(&shift), -(&factor * gc));
                }
            }
            None => {
                rem.terms_mut().insert(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &fc.inv().unwrap());
    let b = g.mul_term(&gm.quotient_of(&l), &gc.inv().unwrap());
    &a - &b
}

/// Buchberger's algorithm with the product and chain criteria, normal pair
/// selection, and a final inter-reduction.
pub fn groebner(vars: &Vars, ideal_gens: &[MPoly], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<MPoly> = Vec::new();
    for g in ideal_gens {
        assert_eq!(g.vars(), vars, "generator over a different variable list");
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(MPoly::is_unit) {
        return unit_basis(vars, order);
    }

    let lm = |p: &MPoly| p.leading_monomial().unwrap().clone();
    let mut leads: Vec<Monomial> = basis.iter().map(lm).collect();
    let mut pending: BTreeMap<(Monomial, usize, usize), ()> = BTreeMap::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((leads[i].lcm(&leads[j]), i, j), ());
            pending_set.insert((i, j));
        }
    }

    while let Some(((l, i, j), ())) = pending.pop_first() {
        pending_set.remove(&(i, j));
        if leads[i].coprime(&leads[j]) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return unit_basis(vars, order);
        }
        let r = r.monic();
        let new = basis.len();
        let rm = lm(&r);
        for k in 0..new {
            pending.insert((leads[k].lcm(&rm), k, new), ());
            pending_set.insert((k, new));
        }
        leads.push(rm);
        basis.push(r);
    }

    GroebnerBasis { vars: vars.clone(), generators: interreduce(basis), order }
}

fn unit_basis(vars: &Vars, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis { vars: vars.clone(), generators: vec![MPoly::one(vars)], order }
}

fn interreduce(basis: Vec<MPoly>) -> Vec<MPoly> {
    // minimal basis: drop generators whose leading monomial is divisible by another's
    let mut minimal: Vec<MPoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in sorted {
        let gm = g.leading_monomial().unwrap();
        if minimal.iter().any(|h| h.leading_monomial().unwrap().divides(gm)) {
            continue;
        }
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let (m, c) = g.leading_term().unwrap();
        let head = MPoly::term(g.vars(), m.clone(), c.clone());
        let others: Vec<MPoly> =
            minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, h)| h.clone()).collect();
        let tail = reduce(&(g - &head), &others);
        reduced.push((&head + &tail).monic());
    }
    reduced
}

pub fn normal_form(p: &MPoly, gb: &GroebnerBasis) -> MPoly {
    gb.normal_form(p)
}

/// Standard monomials of a zero-dimensional ideal, ascending in the order.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<Vec<Monomial>, AlgebraError> {
    let n = gb.vars().len();
    if gb.is_unit_ideal() {
        return Ok(Vec::new());
    }
    let mut bounds: Vec<Option<u32>> = vec![None; n];
    for m in gb.leading_monomials() {
        if let Some((i, e)) = m.pure_power() {
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    let bounds: Vec<u32> =
        bounds.into_iter().collect::<Option<_>>().ok_or(AlgebraError::InfiniteQuotient)?;
    let leads: Vec<&Monomial> = gb.leading_monomials().collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box Π [0, bound_i)
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Coordinates of a normal form in the standard-monomial basis.
pub fn coordinates(nf: &MPoly, index: &HashMap<Monomial, usize>) -> Vec<RatFunc> {
    let mut v = vec![RatFunc::zero(); index.len()];
    for (m, c) in nf.terms() {
        let k = *index.get(m).expect("normal form outside the standard monomials");
        v[k] = c.clone();
    }
    v
}

/// Matrix of multiplication by `e` on the quotient; column `j` holds the
/// normal form of `e * basis[j]`.
pub fn mult_matrix(e: &MPoly, gb: &GroebnerBasis) -> Result<Matrix, AlgebraError> {
    let basis = quotient_basis(gb)?;
    Ok(mult_matrix_in_basis(e, gb, &basis))
}

pub(crate) fn mult_matrix_in_basis(e: &MPoly, gb: &GroebnerBasis, basis: &[Monomial]) -> Matrix {
    let index: HashMap<Monomial, usize> =
        basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let d = basis.len();
    let e = gb.normal_form(e);
    let mut mat = Matrix::zero(d, d);
    for (j, b) in basis.iter().enumerate() {
        let prod = gb.normal_form(&e.mul_term(b, &RatFunc::one()));
        for (i, c) in coordinates(&prod, &index).into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    mat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use crate::polyalg::{char_poly, vars, UniPoly};

    fn qm(c: i64, k: usize) -> RatFunc {
        RatFunc::q_monomial(rat(c), k)
    }

    fn x_ring() -> (Vars, MPoly) {
        let v = vars(&["x"]);
        let x = MPoly::var(&v, 0);
        (v, x)
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let (v, x) = x_ring();
        let f = &x.pow(3) + &x.scale(&qm(3, 2));
        let gb = groebner(&v, &[f.clone()], MonomialOrder::DegRevLex);
        assert_eq!(gb.generators(), &[f]);
    }

    #[test]
    fn linear_pair_reduces_to_variables() {
        let v = vars(&["x", "y"]);
        let x = MPoly::var(&v, 0);
        let y = MPoly::var(&v, 1);
        let gb = groebner(&v, &[&x + &y, &x - &y], MonomialOrder::DegRevLex);
        assert_eq!(gb.generators(), &[y.clone(), x.clone()]);
        assert!(gb.normal_form(&x).is_zero());
        assert_eq!(quotient_basis(&gb).unwrap(), vec![Monomial::one(2)]);
    }

    #[test]
    fn inverse_of_nilpotent_gives_unit_ideal() {
        let v = vars(&["z", "u"]);
        let z = MPoly::var(&v, 0);
        let u = MPoly::var(&v, 1);
        let gb = groebner(&v, &[&(&z * &u) - &MPoly::one(&v), z.pow(2)], MonomialOrder::DegRevLex);
        assert!(gb.is_unit_ideal());
        assert!(quotient_basis(&gb).unwrap().is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let (v, x) = x_ring();
        let gb = groebner(&v, &[&x.pow(3) + &x.scale(&qm(3, 2))], MonomialOrder::DegRevLex);
        assert_eq!(gb.normal_form(&x.pow(3)), x.scale(&qm(-3, 2)));
        assert_eq!(gb.normal_form(&MPoly::one(&v)), MPoly::one(&v));
        assert_eq!(quotient_basis(&gb).unwrap().len(), 3);
    }

    #[test]
    fn infinite_quotient_detected() {
        let v = vars(&["x", "y"]);
        let xy = &MPoly::var(&v, 0) * &MPoly::var(&v, 1);
        let gb = groebner(&v, &[&xy - &MPoly::constant(&v, RatFunc::q())], MonomialOrder::DegRevLex);
        assert_eq!(quotient_basis(&gb), Err(AlgebraError::InfiniteQuotient));
        assert!(mult_matrix(&MPoly::var(&v, 0), &gb).is_err());
    }

    #[test]
    fn multiplication_matrices() {
        let (v, x) = x_ring();
        let gb = groebner(&v, &[&x.pow(2) - &MPoly::constant(&v, qm(16, 2))], MonomialOrder::DegRevLex);
        let m = mult_matrix(&x, &gb).unwrap();
        assert_eq!(m.get(0, 0), &RatFunc::zero());
        assert_eq!(m.get(1, 0), &RatFunc::one());
        assert_eq!(m.get(0, 1), &qm(16, 2));
        assert_eq!(m.get(1, 1), &RatFunc::zero());
        assert_eq!(mult_matrix(&MPoly::one(&v), &gb).unwrap(), Matrix::identity(2));
        assert_eq!(char_poly(&m), UniPoly::new(vec![qm(-16, 2), RatFunc::zero(), RatFunc::one()]));

        let gb = groebner(&v, &[&x.pow(3) + &x.scale(&qm(3, 2))], MonomialOrder::DegRevLex);
        let m = mult_matrix(&x, &gb).unwrap();
        // x * x^2 = -3q^2 x
        assert_eq!(m.get(1, 2), &qm(-3, 2));
        assert_eq!(
            char_poly(&m),
            UniPoly::new(vec![RatFunc::zero(), qm(3, 2), RatFunc::zero(), RatFunc::one()])
        );
    }

    #[test]
    fn buchberger_criterion_holds_on_a_nontrivial_ideal() {
        let v = vars(&["x", "y", "z"]);
        let x = MPoly::var(&v, 0);
        let y = MPoly::var(&v, 1);
        let z = MPoly::var(&v, 2);
        let q = MPoly::constant(&v, RatFunc::q());
        let gens = [&(&x * &y) - &z.pow(2), &(&y * &z) - &(&x * &q), &x.pow(2) - &y];
        let gb = groebner(&v, &gens, MonomialOrder::DegRevLex);
        for f in gb.generators() {
            for g in gb.generators() {
                if f != g {
                    assert!(gb.normal_form(&s_polynomial(f, g)).is_zero());
                }
            }
        }
        for g in &gens {
            assert!(gb.contains(g));
        }
    }
}

//! Finite-dimensional graded commutative algebras over ℚ(q).
//!
//! A [`QuotientAlgebra`] is a presentation together with its reduced Gröbner
//! basis, standard-monomial basis and per-generator multiplication matrices.
//! On top of that this module computes the Fitting split with respect to
//! multiplication by c₁, the trace-form semisimplicity witness, the grading
//! modulo 2N_M, and the two ring sums used by the surgery calculus.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;

use crate::coeffs::RatFunc;
use crate::error::AlgebraError;
use crate::polyalg::{
    char_poly, coordinates, groebner, mult_matrix_in_basis, quotient_basis, GroebnerBasis, MPoly,
    Matrix, Monomial, MonomialOrder, UniPoly, Vars,
};

/// Finitely presented graded commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub vars: Vars,
    /// Cohomological degree of each generator (hyperplane-type classes have degree 2).
    pub degrees: Vec<i64>,
    pub relations: Vec<MPoly>,
    pub c1: MPoly,
    /// Minimal Chern number N_M; `0` flags a vanishing first Chern class.
    pub chern_modulus: u32,
}

impl AlgebraPresentation {
    pub fn new(
        vars: Vars,
        degrees: Vec<i64>,
        relations: Vec<MPoly>,
        c1: MPoly,
        chern_modulus: u32,
    ) -> Self {
        assert_eq!(vars.len(), degrees.len(), "one degree per generator");
        AlgebraPresentation { vars, degrees, relations, c1, chern_modulus }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumMode {
    /// Ring direct sum with unit (1, 1).
    OrthogonalDirect,
    /// Units identified; augmentation-trivial classes from different summands multiply to 0.
    UnitalConnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    presentation: AlgebraPresentation,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    mult_tables: Vec<Matrix>,
    c1_element: MPoly,
    warnings: Vec<String>,
}

/// Splitting by the stabilised kernel of multiplication by c₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSplit {
    pub nilpotent_dim: usize,
    pub localized: QuotientAlgebra,
    pub stabilization_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    /// Residue of the degree mod 2N_M (the plain degree when c₁ = 0) → dimension.
    pub by_residue: BTreeMap<i64, usize>,
    pub even_dim: usize,
}

pub fn build_quotient(pres: AlgebraPresentation) -> Result<QuotientAlgebra, AlgebraError> {
    let gb = groebner(&pres.vars, &pres.relations, MonomialOrder::DegRevLex);
    let basis = quotient_basis(&gb)?;
    let mult_tables = (0..pres.vars.len())
        .map(|i| mult_matrix_in_basis(&MPoly::var(&pres.vars, i), &gb, &basis))
        .collect();
    let c1_element = gb.normal_form(&pres.c1);
    let warnings = pres
        .relations
        .iter()
        .filter(|r| !is_homogeneous(r, &pres.degrees))
        .map(|r| format!("relation {r} is not homogeneous with deg q = 0; grading tracked mod 2N_M"))
        .collect();
    Ok(QuotientAlgebra { presentation: pres, gb, basis, mult_tables, c1_element, warnings })
}

fn is_homogeneous(p: &MPoly, degrees: &[i64]) -> bool {
    let mut degs = p.terms().map(|(m, _)| m.weighted_degree(degrees));
    match degs.next() {
        None => true,
        Some(d) => degs.all(|e| e == d),
    }
}

impl QuotientAlgebra {
    /// The ground field 𝕂: no generators, no relations.
    pub fn ground_field() -> Self {
        let v: Vars = Vec::<String>::new().into();
        build_quotient(AlgebraPresentation::new(v.clone(), vec![], vec![], MPoly::zero(&v), 0))
            .expect("the ground field is finite-dimensional")
    }

    /// The zero ring over the given generators.
    pub fn zero_ring(vars: &Vars, degrees: Vec<i64>, chern_modulus: u32) -> Self {
        build_quotient(AlgebraPresentation::new(
            vars.clone(),
            degrees,
            vec![MPoly::one(vars)],
            MPoly::zero(vars),
            chern_modulus,
        ))
        .expect("the zero ring is finite-dimensional")
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn vars(&self) -> &Vars {
        &self.presentation.vars
    }

    pub fn degrees(&self) -> &[i64] {
        &self.presentation.degrees
    }

    pub fn chern_modulus(&self) -> u32 {
        self.presentation.chern_modulus
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Reduced Gröbner basis of the relation ideal.
    pub fn relations(&self) -> &[MPoly] {
        self.gb.generators()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn mult_tables(&self) -> &[Matrix] {
        &self.mult_tables
    }

    /// Normal form of c₁.
    pub fn c1(&self) -> &MPoly {
        &self.c1_element
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        self.gb.normal_form(p)
    }

    pub fn coordinates(&self, p: &MPoly) -> Vec<RatFunc> {
        coordinates(&self.normal_form(p), &self.basis_index())
    }

    pub fn element(&self, coords: &[RatFunc]) -> MPoly {
        MPoly::from_terms(self.vars(), self.basis.iter().cloned().zip(coords.iter().cloned()))
    }

    fn basis_index(&self) -> HashMap<Monomial, usize> {
        self.basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// Matrix of multiplication by `p` in the standard-monomial basis.
    pub fn mult_matrix(&self, p: &MPoly) -> Matrix {
        let nf = self.normal_form(p);
        let d = self.dim();
        let mut acc = Matrix::zero(d, d);
        for (m, c) in nf.terms() {
            let mut term = Matrix::identity(d);
            for (table, &e) in self.mult_tables.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term = term.mul(table);
                }
            }
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    pub fn c1_matrix(&self) -> Matrix {
        self.mult_matrix(&self.c1_element)
    }

    /// Characteristic polynomial of multiplication by c₁.
    pub fn c1_char_poly(&self) -> UniPoly {
        char_poly(&self.c1_matrix())
    }

    /// Minimal polynomial of `p` acting by multiplication, found as the first
    /// linear dependence among `1, p, p², …`.
    pub fn min_poly(&self, p: &MPoly) -> UniPoly {
        let d = self.dim();
        if d == 0 {
            return UniPoly::one();
        }
        let m = self.mult_matrix(p);
        let mut powers: Vec<Vec<RatFunc>> = vec![self.coordinates(&MPoly::one(self.vars()))];
        loop {
            let next = m.apply(powers.last().unwrap());
            let k = powers.len();
            // solve Σ a_i v_i = next for i < k
            let mut cols = powers.clone();
            cols.push(next.clone());
            let ker = Matrix::from_columns(&cols, d).kernel();
            if let Some(v) = ker.into_iter().find(|v| !v[k].is_zero()) {
                let lead = v[k].clone();
                return UniPoly::new(v.iter().map(|c| c / &lead).collect());
            }
            powers.push(next);
        }
    }

    /// Degree of a basis monomial under the generator degrees.
    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.presentation.degrees)
    }

    /// Human form, e.g. `K[x]/(x^2 + 3*q^2)`; `K` for the field and `0` for the zero ring.
    pub fn display_presentation(&self) -> String {
        if self.is_zero_ring() {
            return "0".into();
        }
        if self.vars().is_empty() {
            return "K".into();
        }
        let rels: Vec<String> = self.relations().iter().map(ToString::to_string).collect();
        let gens = self.vars().join(", ");
        if rels.is_empty() {
            format!("K[{gens}]")
        } else {
            format!("K[{gens}]/({})", rels.join(", "))
        }
    }
}

impl fmt::Display for QuotientAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_presentation())
    }
}

/// Fitting split of `a` with respect to multiplication by c₁.
///
/// Iterates `d = 1, 2, …` until `ker c₁^d = ker c₁^{d+1}` and returns the
/// quotient by that kernel, on which c₁ acts invertibly.
pub fn localize_at_c1(a: &QuotientAlgebra) -> Result<FittingSplit, AlgebraError> {
    let m = a.c1_matrix();
    let dim = a.dim();
    let mut power = m.clone();
    let mut d = 1u32;
    let mut kernel = power.kernel();
    loop {
        let next = power.mul(&m);
        let next_kernel_dim = dim - next.rank();
        if next_kernel_dim == kernel.len() {
            break;
        }
        power = next;
        kernel = power.kernel();
        d += 1;
    }
    let nilpotent_dim = kernel.len();
    let pres = a.presentation();
    let localized = if nilpotent_dim == dim {
        QuotientAlgebra::zero_ring(&pres.vars, pres.degrees.clone(), pres.chern_modulus)
    } else if nilpotent_dim == 0 {
        a.clone()
    } else {
        let mut relations: Vec<MPoly> = a.relations().to_vec();
        relations.extend(kernel.iter().map(|v| a.element(v)));
        build_quotient(AlgebraPresentation::new(
            pres.vars.clone(),
            pres.degrees.clone(),
            relations,
            pres.c1.clone(),
            pres.chern_modulus,
        ))?
    };
    Ok(FittingSplit { nilpotent_dim, localized, stabilization_exponent: d })
}

/// Trace-form test: the witness is the determinant of the Gram matrix
/// `tr(b_i · b_j)` over the standard basis, nonzero exactly when the algebra is
/// semisimple (characteristic 0, stable under field extension).
pub fn is_semisimple(a: &QuotientAlgebra) -> (bool, RatFunc) {
    let w = trace_form(a).det();
    (!w.is_zero(), w)
}

pub fn trace_form(a: &QuotientAlgebra) -> Matrix {
    let d = a.dim();
    let mats: Vec<Matrix> = a
        .basis()
        .iter()
        .map(|b| a.mult_matrix(&MPoly::term(a.vars(), b.clone(), RatFunc::one())))
        .collect();
    let mut gram = Matrix::zero(d, d);
    for i in 0..d {
        for j in i..d {
            let t = mats[i].mul(&mats[j]).trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram
}

/// Number of primitive idempotents over the algebraic closure.
pub fn idempotent_count(a: &QuotientAlgebra) -> Result<usize, AlgebraError> {
    if !is_semisimple(a).0 {
        return Err(AlgebraError::NotSemisimple);
    }
    Ok(a.dim())
}

pub fn graded_dims(a: &QuotientAlgebra) -> GradedDims {
    let modulus = 2 * a.chern_modulus() as i64;
    let mut by_residue = BTreeMap::new();
    let mut even_dim = 0;
    for m in a.basis() {
        let deg = a.monomial_degree(m);
        let key = if modulus > 0 { deg.rem_euclid(modulus) } else { deg };
        *by_residue.entry(key).or_insert(0) += 1;
        if deg.rem_euclid(2) == 0 {
            even_dim += 1;
        }
    }
    GradedDims { by_residue, even_dim }
}

fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..).map(|k| format!("{base}{k}")).find(|n| !taken.contains(n)).unwrap()
}

/// Sum of two algebras; clashing generator names on the right are renamed.
pub fn sum_rings(
    a: &QuotientAlgebra,
    b: &QuotientAlgebra,
    mode: SumMode,
) -> Result<QuotientAlgebra, AlgebraError> {
    match mode {
        SumMode::OrthogonalDirect => {
            if a.is_zero_ring() {
                return Ok(b.clone());
            }
            if b.is_zero_ring() {
                return Ok(a.clone());
            }
        }
        SumMode::UnitalConnected => {
            for alg in [a, b] {
                if let Some(r) = alg.relations().iter().find(|r| {
                    !r.coeff(&Monomial::one(r.nvars())).is_zero()
                }) {
                    return Err(AlgebraError::NoAugmentation(r.to_string()));
                }
            }
            if a.vars().is_empty() && a.dim() == 1 {
                return Ok(b.clone());
            }
            if b.vars().is_empty() && b.dim() == 1 {
                return Ok(a.clone());
            }
        }
    }

    let mut taken: HashSet<String> = a.vars().iter().cloned().collect();
    let mut names: Vec<String> = a.vars().to_vec();
    for v in b.vars().iter() {
        let n = fresh_name(v, &taken);
        taken.insert(n.clone());
        names.push(n);
    }
    let idem = match mode {
        SumMode::OrthogonalDirect => {
            let e = fresh_name("e", &taken);
            names.push(e);
            Some(names.len() - 1)
        }
        SumMode::UnitalConnected => None,
    };
    let all: Vars = names.into();
    let na = a.vars().len();
    let nb = b.vars().len();
    let map_a: Vec<usize> = (0..na).collect();
    let map_b: Vec<usize> = (na..na + nb).collect();
    let emb_a = |p: &MPoly| p.embed(&all, &map_a);
    let emb_b = |p: &MPoly| p.embed(&all, &map_b);

    let mut degrees: Vec<i64> = a.degrees().to_vec();
    degrees.extend_from_slice(b.degrees());
    let mut relations = Vec::new();
    let c1;
    match idem {
        Some(ei) => {
            degrees.push(0);
            let e = MPoly::var(&all, ei);
            let one = MPoly::one(&all);
            let f = &one - &e;
            relations.push(&e.pow(2) - &e);
            for i in 0..na {
                let x = MPoly::var(&all, i);
                relations.push(&x - &(&e * &x));
            }
            for i in na..na + nb {
                relations.push(&e * &MPoly::var(&all, i));
            }
            relations.extend(a.relations().iter().map(|r| &e * &emb_a(r)));
            relations.extend(b.relations().iter().map(|r| &f * &emb_b(r)));
            c1 = &(&e * &emb_a(a.c1())) + &(&f * &emb_b(b.c1()));
        }
        None => {
            relations.extend(a.relations().iter().map(emb_a));
            relations.extend(b.relations().iter().map(emb_b));
            for i in 0..na {
                for j in na..na + nb {
                    relations.push(&MPoly::var(&all, i) * &MPoly::var(&all, j));
                }
            }
            c1 = &emb_a(a.c1()) + &emb_b(b.c1());
        }
    }
    let modulus = a.chern_modulus().gcd(&b.chern_modulus());
    build_quotient(AlgebraPresentation::new(all, degrees, relations, c1, modulus))
}

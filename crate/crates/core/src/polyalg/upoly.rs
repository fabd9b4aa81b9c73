use std::fmt;

use super::matrix::BareissRing;
use super::{vars, MPoly, Matrix, Monomial};
use crate::coeffs::RatFunc;

/// Dense univariate polynomial over ℚ(q), coefficients by ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<RatFunc>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: RatFunc, k: usize) -> Self {
        let mut v = vec![RatFunc::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &RatFunc) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.leading().inv().unwrap())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let lc_inv = d.leading().inv().unwrap();
        let mut quot = vec![RatFunc::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic gcd over ℚ(q).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &RatFunc::from_int(k as i64))
                .collect(),
        )
    }

    /// No repeated factor over the algebraic closure (characteristic 0).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        self.coeffs.iter().rev().fold(RatFunc::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `p(c·t)`
    pub fn rescale_variable(&self, c: &RatFunc) -> UniPoly {
        let mut pow = RatFunc::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow = &pow * c;
        }
        UniPoly::new(out)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// The same polynomial as a one-variable `MPoly` in `name`.
    pub fn to_mpoly(&self, name: &str) -> MPoly {
        let v = vars(&[name]);
        MPoly::from_terms(
            &v,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::new(vec![k as u32]), c.clone())),
        )
    }

    /// Reads a polynomial in the single variable of `p`.
    pub fn from_mpoly(p: &MPoly) -> UniPoly {
        assert_eq!(p.nvars(), 1, "expected a univariate polynomial");
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut v = vec![RatFunc::zero(); deg + 1];
        for (m, c) in p.terms() {
            v[m.exponents()[0] as usize] = c.clone();
        }
        UniPoly::new(v)
    }

    pub fn display_in(&self, name: &str) -> String {
        self.to_mpoly(name).to_string()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl BareissRing for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        UniPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UniPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UniPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        self.scale(&-RatFunc::one())
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(r.is_zero(), "inexact division in fraction-free elimination");
        q
    }
}

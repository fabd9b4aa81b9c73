use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::Monomial;
use crate::coeffs::RatFunc;

/// Shared, ordered variable names of a polynomial ring.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// Sparse polynomial over ℚ(q). Terms are keyed by degrevlex-ordered monomials,
/// so the last map entry is the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: RatFunc) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, RatFunc::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), i, 1), RatFunc::one())
    }

    pub fn term(vars: &Vars, mon: Monomial, c: RatFunc) -> Self {
        assert_eq!(mon.nvars(), vars.len(), "monomial arity must match the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mon, c);
        }
        MPoly { vars: vars.clone(), terms }
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, RatFunc)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(Monomial::is_one)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> RatFunc {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(RatFunc::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter().rev()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn terms_mut(&mut self) -> &mut BTreeMap<Monomial, RatFunc> {
        &mut self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * mon * self`
    pub fn mul_term(&self, mon: &Monomial, c: &RatFunc) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mon), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one(&self.vars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// True when every coefficient lies in ℚ.
    pub fn is_q_free(&self) -> bool {
        self.terms.values().all(RatFunc::is_constant)
    }

    /// Moves the polynomial into a ring with variables `target`, sending
    /// variable `i` to `target[mapping[i]]`.
    pub fn embed(&self, target: &Vars, mapping: &[usize]) -> MPoly {
        assert_eq!(mapping.len(), self.nvars());
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[mapping[i]] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Substitutes polynomials (in a common target ring) for each variable.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    fn check_ring(&self, other: &MPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials live in different rings: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = MPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-RatFunc::one())
    }
}

/// Canonical text: degrevlex-descending terms, explicit `*` and `^`,
/// e.g. `x^4 - 16*q^2*x^2`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (negative, mag) = c.signed_parts();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let atomic = c.is_atomic();
            let wrapped = if atomic { mag.clone() } else { format!("({mag})") };
            if m.is_one() {
                f.write_str(&wrapped)?;
            } else if mag == "1" {
                write!(f, "{}", m.display(&self.vars))?;
            } else {
                write!(f, "{wrapped}*{}", m.display(&self.vars))?;
            }
        }
        Ok(())
    }
}

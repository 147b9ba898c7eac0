//! Sparse Laurent polynomials in x_1..x_n over the scalar field.
//!
//! Exponent vectors live in Z^n; a weight lambda is stored as the monomial
//! e^lambda = x^lambda. The map is kept in lexicographic key order, which is
//! also the serialization order, and zero coefficients are never stored, so
//! structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::scalars::{GeneratorSet, Scalar};

pub type ExpVec = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    gens: GeneratorSet,
    terms: BTreeMap<ExpVec, Scalar>,
}

impl LaurentPoly {
    pub fn zero(n: usize, gens: &GeneratorSet) -> LaurentPoly {
        LaurentPoly {
            n,
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, gens: &GeneratorSet) -> LaurentPoly {
        LaurentPoly::monomial(n, gens, vec![0; n], Scalar::one(gens))
    }

    pub fn monomial(n: usize, gens: &GeneratorSet, exps: ExpVec, coeff: Scalar) -> LaurentPoly {
        assert_eq!(exps.len(), n, "exponent vector has wrong rank");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly {
            n,
            gens: gens.clone(),
            terms,
        }
    }

    pub fn constant(n: usize, gens: &GeneratorSet, c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(n, gens, vec![0; n], c)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.gens))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.n])
    }

    fn insert_add(&mut self, exps: ExpVec, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = LaurentPoly::zero(self.n, &self.gens);
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                let c = c1.mul(c2);
                if c.is_zero() {
                    continue;
                }
                let e: ExpVec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, c);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n, &self.gens);
        }
        LaurentPoly {
            n: self.n,
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Multiplies by the monomial x^shift.
    pub fn mul_monomial(&self, shift: &[i32], coeff: &Scalar) -> LaurentPoly {
        assert_eq!(shift.len(), self.n);
        let mut out = LaurentPoly::zero(self.n, &self.gens);
        for (e, c) in &self.terms {
            let ne: ExpVec = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            let nc = c.mul(coeff);
            if !nc.is_zero() {
                out.terms.insert(ne, nc);
            }
        }
        out
    }

    /// The involution x_i -> 1/x_i (e^lambda -> e^{-lambda}). Coefficients
    /// are untouched.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Applies x_i -> scale_i * x_i^{sigma_i} with sigma_i = -1 where
    /// `flip[i]` holds. Scales must be nonzero (they get raised to the
    /// original, possibly negative, exponents).
    pub fn substitute_monomial(&self, scales: &[Scalar], flips: &[bool]) -> LaurentPoly {
        assert_eq!(scales.len(), self.n);
        assert_eq!(flips.len(), self.n);
        for s in scales {
            assert!(!s.is_zero(), "monomial substitution scale is zero");
        }
        let mut out = LaurentPoly::zero(self.n, &self.gens);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = vec![0i32; self.n];
            for i in 0..self.n {
                if e[i] != 0 {
                    coeff = coeff.mul(&scales[i].pow(e[i] as i64));
                }
                ne[i] = if flips[i] { -e[i] } else { e[i] };
            }
            out.insert_add(ne, coeff);
        }
        out
    }

    /// Evaluates at one nonzero scalar per variable.
    pub fn eval_points(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.n);
        let mut acc = Scalar::zero(&self.gens);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..self.n {
                if e[i] != 0 {
                    term = term.mul(&values[i].pow(e[i] as i64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The principal specialization x_i = t^{n-i} * base.
    pub fn principal_specialize(&self, base: &Scalar) -> Scalar {
        let t = Scalar::t(&self.gens);
        let values: Vec<Scalar> = (0..self.n)
            .map(|i| t.pow((self.n - 1 - i) as i64).mul(base))
            .collect();
        self.eval_points(&values)
    }

    fn min_exponents(&self) -> ExpVec {
        let mut m = vec![i32::MAX; self.n];
        for e in self.terms.keys() {
            for i in 0..self.n {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    /// Leading term under graded lex (total degree, then lex on exponents).
    fn leading(&self) -> Option<(&ExpVec, &Scalar)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let ta: i64 = a.iter().map(|&x| x as i64).sum();
            let tb: i64 = b.iter().map(|&x| x as i64).sum();
            ta.cmp(&tb).then_with(|| a.cmp(b))
        })
    }

    /// Exact division; `None` when `other` does not divide `self`. Both
    /// operands are shifted into the polynomial cone first; over a field the
    /// bottom graded slice of a product is the product of the bottom slices,
    /// so when the quotient exists it lands back in the cone.
    pub fn exact_divide(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!other.is_zero(), "division by the zero Laurent polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.n, &self.gens));
        }
        let mf = self.min_exponents();
        let mg = other.min_exponents();
        let neg = |v: &[i32]| -> ExpVec { v.iter().map(|x| -x).collect() };
        let one = Scalar::one(&self.gens);
        let mut rem = self.mul_monomial(&neg(&mf), &one);
        let g = other.mul_monomial(&neg(&mg), &one);
        let (glead_e, glead_c) = {
            let (e, c) = g.leading().expect("nonzero divisor");
            (e.clone(), c.clone())
        };
        let glead_c_inv = glead_c.recip().expect("leading coefficient nonzero");
        let mut quot = LaurentPoly::zero(self.n, &self.gens);
        while !rem.is_zero() {
            let (rlead_e, rlead_c) = {
                let (e, c) = rem.leading().expect("nonzero remainder");
                (e.clone(), c.clone())
            };
            let qe: ExpVec = rlead_e.iter().zip(&glead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = rlead_c.mul(&glead_c_inv);
            quot.insert_add(qe.clone(), qc.clone());
            rem = rem.sub(&g.mul_monomial(&qe, &qc));
        }
        // net shift: x^{mf - mg}
        let shift: ExpVec = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Some(quot.mul_monomial(&shift, &one))
    }

    /// Serialization: rank, scalar generator names, then monomial entries in
    /// lexicographic order of the exponent vector.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e, c.to_json()]))
            .collect();
        json!({
            "rank": self.n,
            "generators": self.gens.keys().collect::<Vec<_>>(),
            "terms": entries,
        })
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut s = format!("\\left({}\\right)", c.latex());
            for (i, &ei) in e.iter().enumerate() {
                if ei == 1 {
                    s.push_str(&format!(" x_{{{}}}", i + 1));
                } else if ei != 0 {
                    s.push_str(&format!(" x_{{{}}}^{{{}}}", i + 1, ei));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 1 {
                    write!(f, "*x{}", i + 1)?;
                } else if ei != 0 {
                    write!(f, "*x{}^{}", i + 1, ei)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> GeneratorSet {
        GeneratorSet::core()
    }

    fn x(n: usize, i: usize, e: i32) -> LaurentPoly {
        let g = gens();
        let mut v = vec![0; n];
        v[i] = e;
        LaurentPoly::monomial(n, &g, v, Scalar::one(&g))
    }

    #[test]
    fn ring_identities() {
        let g = gens();
        let a = x(2, 0, 1).add(&x(2, 1, -1));
        let zero = a.sub(&a);
        assert!(zero.is_zero());
        let one = LaurentPoly::one(2, &g);
        assert_eq!(a.mul(&one), a);
        // (x1 + 1/x2)(x1 - 1/x2) = x1^2 - 1/x2^2
        let b = x(2, 0, 1).sub(&x(2, 1, -1));
        let prod = a.mul(&b);
        assert_eq!(prod, x(2, 0, 2).sub(&x(2, 1, -2)));
    }

    #[test]
    fn bar_is_an_involution() {
        let g = gens();
        let f = x(3, 0, 2).add(&x(3, 2, -1)).add(&LaurentPoly::one(3, &g));
        assert_eq!(f.bar().bar(), f);
        assert_eq!(f.bar().coeff(&[-2, 0, 0]), Scalar::one(&g));
    }

    #[test]
    fn constant_term_extraction() {
        let g = gens();
        let q = Scalar::q(&g);
        let f = x(2, 0, 1)
            .mul(&x(2, 0, -1))
            .mul_scalar(&q)
            .add(&x(2, 1, 3));
        assert_eq!(f.constant_term(), q);
        assert!(x(2, 0, 1).constant_term().is_zero());
    }

    #[test]
    fn monomial_substitution() {
        let g = gens();
        let t = Scalar::t(&g);
        // f = x1 + x1^{-1}; x1 -> t/x1 gives t/x1 + x1/t
        let f = x(1, 0, 1).add(&x(1, 0, -1));
        let sub = f.substitute_monomial(&[t.clone()], &[true]);
        let expected = x(1, 0, -1)
            .mul_scalar(&t)
            .add(&x(1, 0, 1).mul_scalar(&t.recip().unwrap()));
        assert_eq!(sub, expected);
    }

    #[test]
    fn exact_division_round_trip() {
        let g = gens();
        let q = Scalar::q(&g);
        // f = (1 - x1 x2^{-1})(1 + q x2), divide back out both factors
        let a = LaurentPoly::one(2, &g).sub(&LaurentPoly::monomial(
            2,
            &g,
            vec![1, -1],
            Scalar::one(&g),
        ));
        let b = LaurentPoly::one(2, &g).add(&x(2, 1, 1).mul_scalar(&q));
        let f = a.mul(&b);
        assert_eq!(f.exact_divide(&a).unwrap(), b);
        assert_eq!(f.exact_divide(&b).unwrap(), a);
        assert_eq!(f.exact_divide(&f).unwrap(), LaurentPoly::one(2, &g));
    }

    #[test]
    fn inexact_division_detected() {
        let g = gens();
        let a = LaurentPoly::one(2, &g).sub(&x(2, 0, 1));
        let b = LaurentPoly::one(2, &g).sub(&x(2, 1, 1));
        assert!(a.exact_divide(&b).is_none());
        let f = a.mul(&b).add(&LaurentPoly::one(2, &g));
        assert!(f.exact_divide(&a).is_none());
    }

    #[test]
    fn principal_specialization() {
        let g = gens();
        let t = Scalar::t(&g);
        let one = Scalar::one(&g);
        // m_{(1)} = x1 + x2 at x_i = t^{n-i}: t + 1
        let m1 = x(2, 0, 1).add(&x(2, 1, 1));
        assert_eq!(m1.principal_specialize(&one), t.add(&one));
        // with base T^{1/2}: (t + 1) T^{1/2}
        let half_t = Scalar::var(&g, "sT");
        assert_eq!(
            m1.principal_specialize(&half_t),
            t.add(&one).mul(&half_t)
        );
        // negative exponents invert the base: x1^{-1} at n=1, base T -> 1/T
        let f = x(1, 0, -1);
        let cap_t = Scalar::cap_t(&g);
        assert_eq!(
            f.principal_specialize(&cap_t),
            cap_t.recip().unwrap()
        );
    }

    #[test]
    fn json_terms_sorted_lexicographically() {
        let g = gens();
        let f = x(2, 1, 1).add(&x(2, 0, 1)).add(&x(2, 0, -1));
        let v = f.to_json();
        let terms = v["terms"].as_array().unwrap();
        let exps: Vec<Vec<i64>> = terms
            .iter()
            .map(|t| {
                t[0].as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_i64().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(exps, vec![vec![-1, 0], vec![0, 1], vec![1, 0]]);
    }
}

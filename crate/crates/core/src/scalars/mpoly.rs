//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Monomials are exponent tuples relative to a [`GeneratorSet`]; the
//! canonical order is graded-lexicographic (total degree first, then
//! lexicographic on the tuple). The map is kept sorted, no zero coefficient
//! is stored, and the leading term is the maximal key.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use super::generators::GeneratorSet;

/// Exponent tuple with graded-lexicographic ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn zero(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn quotient(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    debug_assert!(a >= b);
                    a - b
                })
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MPoly {
    gens: GeneratorSet,
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero(gens: &GeneratorSet) -> Self {
        MPoly {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: &GeneratorSet) -> Self {
        MPoly::constant(gens, BigRational::one())
    }

    pub fn constant(gens: &GeneratorSet, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::zero(gens.len()), c);
        }
        MPoly {
            gens: gens.clone(),
            terms,
        }
    }

    pub fn from_int(gens: &GeneratorSet, c: i64) -> Self {
        MPoly::constant(gens, BigRational::from_integer(BigInt::from(c)))
    }

    /// The monomial `gen^exp` for a generator index.
    pub fn gen_pow(gens: &GeneratorSet, var: usize, exp: u16) -> Self {
        assert!(var < gens.len(), "generator index out of range");
        let mut mono = Mono::zero(gens.len());
        mono.0[var] = exp;
        let mut terms = BTreeMap::new();
        terms.insert(mono, BigRational::one());
        MPoly {
            gens: gens.clone(),
            terms,
        }
    }

    pub fn from_terms(gens: &GeneratorSet, it: impl IntoIterator<Item = (Mono, BigRational)>) -> Self {
        let mut p = MPoly::zero(gens);
        for (m, c) in it {
            assert_eq!(m.0.len(), gens.len(), "exponent tuple length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.total() == 0 && c.is_one())
                .unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.total()).unwrap_or(0)
    }

    fn add_term(&mut self, mono: Mono, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &MPoly) {
        assert!(
            self.gens.same_as(&other.gens),
            "polynomials over different generator sets: {} vs {}",
            self.gens,
            other.gens
        );
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = MPoly::zero(&self.gens);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        // Iterate the smaller factor on the outside.
        let (small, large) = if self.nterms() <= other.nterms() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.checked_mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_rational(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.gens);
        }
        MPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono) -> MPoly {
        MPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.checked_mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.gens);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    pub fn divide_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        self.assert_compatible(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero(&self.gens));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.gens);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.quotient(&dm);
            let qc = rc / &dc;
            // rem -= divisor * qc * x^qm
            for (m, c) in &divisor.terms {
                let prod = m.checked_mul(&qm);
                let delta = -(c * &qc);
                match rem.terms.entry(prod) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Per-variable minimum exponent over all terms (the monomial content).
    pub fn min_exponents(&self) -> Mono {
        let n = self.gens.len();
        let mut min = match self.terms.keys().next() {
            Some(m) => m.clone(),
            None => return Mono::zero(n),
        };
        for m in self.terms.keys() {
            for i in 0..n {
                if m.0[i] < min.0[i] {
                    min.0[i] = m.0[i];
                }
            }
        }
        min
    }

    /// Divides out a monomial that is known to divide every term.
    pub fn shift_down(&self, mono: &Mono) -> MPoly {
        MPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.quotient(mono), c.clone()))
                .collect(),
        }
    }

    /// Rational content: the signed factor `c` with `self = c * primitive`,
    /// where the primitive part has coprime integer coefficients and a
    /// positive leading coefficient. Content of 0 is 0.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let inv = c.recip();
        self.mul_rational(&inv)
    }

    /// Maximal exponent of one variable.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        let n = self.gens.len();
        let mut present = vec![false; n];
        for m in self.terms.keys() {
            for i in 0..n {
                if m.0[i] > 0 {
                    present[i] = true;
                }
            }
        }
        (0..n).filter(|&i| present[i]).collect()
    }

    /// Dense coefficient list of `self` viewed as univariate in `var`; the
    /// coefficients are polynomials over the same generator set with the
    /// `var` exponent zeroed out. Index = power of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(&self.gens); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut base = m.clone();
            base.0[var] = 0;
            out[e].add_term(base, c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`]: `sum_i coeffs[i] * var^i`.
    pub fn from_coeffs_in(gens: &GeneratorSet, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(gens);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                debug_assert_eq!(m.0[var], 0);
                let mut mono = m.clone();
                mono.0[var] = u16::try_from(e).expect("monomial exponent overflow");
                out.add_term(mono, k.clone());
            }
        }
        out
    }

    /// Exact evaluation at a full assignment of rational values.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.gens.len(), "assignment length mismatch");
        let n = self.gens.len();
        // Per-variable power tables.
        let mut tables: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for v in 0..n {
            let d = self.degree_in(v) as usize;
            let mut tab = Vec::with_capacity(d + 1);
            tab.push(BigRational::one());
            for _ in 0..d {
                let next = tab.last().unwrap() * &values[v];
                tab.push(next);
            }
            tables.push(tab);
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in 0..n {
                let e = m.0[v] as usize;
                if e > 0 {
                    term *= &tables[v][e];
                }
            }
            acc += term;
        }
        acc
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.gens.same_as(&other.gens) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

fn fmt_coeff_mono(
    f: &mut fmt::Formatter<'_>,
    gens: &GeneratorSet,
    mono: &Mono,
    coeff: &BigRational,
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let abs = coeff.abs();
    if !abs.is_one() || mono.total() == 0 {
        parts.push(abs.to_string());
    }
    for (i, &e) in mono.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let g = gens.get(i);
        if g.halved {
            if e % 2 == 0 {
                let k = e / 2;
                if k == 1 {
                    parts.push(g.symbol.clone());
                } else {
                    parts.push(format!("{}^{}", g.symbol, k));
                }
            } else {
                parts.push(format!("{}^({}/2)", g.symbol, e));
            }
        } else if e == 1 {
            parts.push(g.symbol.clone());
        } else {
            parts.push(format!("{}^{}", g.symbol, e));
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_coeff_mono(f, &self.gens, m, c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(gens: &GeneratorSet) -> MPoly {
        MPoly::gen_pow(gens, 0, 2)
    }

    #[test]
    fn graded_lex_order() {
        // total degree dominates, then lexicographic
        let a = Mono(vec![2, 0]);
        let b = Mono(vec![0, 3]);
        assert!(a < b);
        let c = Mono(vec![1, 1]);
        assert!(c < a); // same total, lex: (1,1) < (2,0)
    }

    #[test]
    fn arithmetic_and_normal_form() {
        let gens = GeneratorSet::core();
        let one = MPoly::one(&gens);
        let q = q(&gens);
        let p = one.sub(&q); // 1 - q
        let s = p.add(&q.sub(&MPoly::one(&gens))); // (1-q)+(q-1) = 0
        assert!(s.is_zero());

        let q2 = q.pow(2);
        let f = MPoly::one(&gens).sub(&q2); // 1 - q^2
        let g = MPoly::one(&gens).sub(&q); // 1 - q
        let h = f.divide_exact(&g).unwrap();
        assert_eq!(h, MPoly::one(&gens).add(&q)); // 1 + q
    }

    #[test]
    fn non_exact_division_detected() {
        let gens = GeneratorSet::core();
        let q = q(&gens);
        let f = MPoly::one(&gens).sub(&q.pow(2)); // 1 - q^2
        let g = MPoly::from_int(&gens, 2).sub(&q); // 2 - q
        assert!(f.divide_exact(&g).is_none());
    }

    #[test]
    fn content_and_primitive() {
        let gens = GeneratorSet::core();
        let q = q(&gens);
        // -4q + 2 -> content -2, primitive 2q - 1
        let p = q.mul_rational(&BigRational::from_integer((-4).into()))
            .add(&MPoly::from_int(&gens, 2));
        let c = p.content();
        assert_eq!(c, BigRational::from_integer((-2).into()));
        let prim = p.primitive_part();
        assert!(prim.leading().unwrap().1.is_positive());
        assert_eq!(prim.mul_rational(&c), p);
    }

    #[test]
    fn eval_power_tables() {
        let gens = GeneratorSet::core();
        // 1 - q at sq = 1/2 -> 1 - 1/4 = 3/4
        let p = MPoly::one(&gens).sub(&q(&gens));
        let half = BigRational::new(1.into(), 2.into());
        let v = p.eval(&[half, BigRational::one(), BigRational::one()]);
        assert_eq!(v, BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn univariate_views_roundtrip() {
        let gens = GeneratorSet::core();
        let q = q(&gens);
        let t = MPoly::gen_pow(&gens, 1, 2);
        let p = q.mul(&t).add(&t.pow(2)).add(&MPoly::one(&gens));
        let coeffs = p.coeffs_in(1);
        let back = MPoly::from_coeffs_in(&gens, 1, &coeffs);
        assert_eq!(back, p);
    }
}

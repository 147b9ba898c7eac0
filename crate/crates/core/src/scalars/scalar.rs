//! Reduced rational functions over a generator set.
//!
//! A [`Scalar`] is a fraction of two [`MPoly`] values kept in a unique
//! normal form: numerator and denominator share no polynomial factor, the
//! denominator has coprime integer coefficients, and its leading coefficient
//! under the graded-lexicographic order is positive. Equality is therefore
//! plain structural equality, which the verification harness relies on.
//!
//! Fraction arithmetic uses the classical gcd-limiting schemes (the additive
//! `gcd(b, d)` split and the multiplicative cross-gcds), so the expensive
//! polynomial gcd only ever sees inputs that are already close to coprime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use serde_json::{json, Value};

use super::gcd::poly_gcd;
use super::generators::GeneratorSet;
use super::mpoly::MPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    /// Division by the zero scalar.
    DivisionByZero,
    /// A denominator vanished at the requested assignment; the sample is
    /// degenerate and the caller should pick another point.
    DegenerateSample,
    /// A generator occurring in the value was not assigned.
    MissingAssignment(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::DegenerateSample => {
                write!(f, "denominator vanishes at the assignment (degenerate sample)")
            }
            ScalarError::MissingAssignment(k) => {
                write!(f, "no value assigned to generator {}", k)
            }
        }
    }
}

impl std::error::Error for ScalarError {}

#[derive(Clone, Debug)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Scalar {
    /// Builds the reduced normal form of `num / den`. Panics when `den` is
    /// the zero polynomial (callers guard divisions).
    pub fn ratio(num: MPoly, den: MPoly) -> Scalar {
        assert!(!den.is_zero(), "scalar denominator is zero");
        if num.is_zero() {
            let gens = num.gens().clone();
            return Scalar {
                num,
                den: MPoly::one(&gens),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divide_exact(&g).expect("gcd divides numerator"),
                den.divide_exact(&g).expect("gcd divides denominator"),
            )
        };
        // Scale so the denominator is primitive with positive leading
        // coefficient; the rational content moves to the numerator.
        let c = den.content();
        if !c.is_one() {
            let inv = c.recip();
            num = num.mul_rational(&inv);
            den = den.mul_rational(&inv);
        }
        Scalar { num, den }
    }

    pub fn from_poly(p: MPoly) -> Scalar {
        let gens = p.gens().clone();
        Scalar {
            num: p,
            den: MPoly::one(&gens),
        }
    }

    pub fn zero(gens: &GeneratorSet) -> Scalar {
        Scalar::from_poly(MPoly::zero(gens))
    }

    pub fn one(gens: &GeneratorSet) -> Scalar {
        Scalar::from_poly(MPoly::one(gens))
    }

    pub fn from_int(gens: &GeneratorSet, c: i64) -> Scalar {
        Scalar::from_poly(MPoly::from_int(gens, c))
    }

    pub fn from_rational(gens: &GeneratorSet, c: BigRational) -> Scalar {
        Scalar::from_poly(MPoly::constant(gens, c))
    }

    pub fn rational(gens: &GeneratorSet, num: i64, den: i64) -> Scalar {
        Scalar::from_rational(
            gens,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    /// The generator `key` raised to an integer power (negative allowed).
    pub fn var_pow(gens: &GeneratorSet, key: &str, exp: i64) -> Scalar {
        let idx = gens
            .index_of(key)
            .unwrap_or_else(|| panic!("unknown generator {}", key));
        let mag = u16::try_from(exp.unsigned_abs()).expect("generator exponent overflow");
        let p = MPoly::gen_pow(gens, idx, mag);
        if exp >= 0 {
            Scalar::from_poly(p)
        } else {
            Scalar {
                num: MPoly::one(gens),
                den: p,
            }
        }
    }

    pub fn var(gens: &GeneratorSet, key: &str) -> Scalar {
        Scalar::var_pow(gens, key, 1)
    }

    /// q = sq^2 over a set containing the core generator `sq`.
    pub fn q(gens: &GeneratorSet) -> Scalar {
        Scalar::var_pow(gens, "sq", 2)
    }

    /// t = st^2.
    pub fn t(gens: &GeneratorSet) -> Scalar {
        Scalar::var_pow(gens, "st", 2)
    }

    /// T = sT^2.
    pub fn cap_t(gens: &GeneratorSet) -> Scalar {
        Scalar::var_pow(gens, "sT", 2)
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.num.gens()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.add(&other.num));
        }
        let g = poly_gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Scalar::zero(self.gens());
            }
            let den = self.den.mul(&other.den);
            return Scalar { num, den };
        }
        let b1 = self.den.divide_exact(&g).expect("gcd divides");
        let d1 = other.den.divide_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&other.num.mul(&b1));
        if t.is_zero() {
            return Scalar::zero(self.gens());
        }
        let h = poly_gcd(&t, &g);
        if h.is_one() {
            Scalar {
                num: t,
                den: b1.mul(&other.den),
            }
        } else {
            let num = t.divide_exact(&h).expect("gcd divides");
            let den = b1.mul(&other.den.divide_exact(&h).expect("gcd divides"));
            // h is primitive positive, so the denominator sign is preserved
            Scalar { num, den }
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero(self.gens());
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.mul(&other.num));
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let a = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.divide_exact(&g1).expect("gcd divides")
        };
        let c = if g2.is_one() {
            other.num.clone()
        } else {
            other.num.divide_exact(&g2).expect("gcd divides")
        };
        let b = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.divide_exact(&g2).expect("gcd divides")
        };
        let d = if g1.is_one() {
            other.den.clone()
        } else {
            other.den.divide_exact(&g1).expect("gcd divides")
        };
        Scalar {
            num: a.mul(&c),
            den: b.mul(&d),
        }
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let c = self.num.content();
        let inv = c.recip();
        Ok(Scalar {
            num: self.den.mul_rational(&inv),
            den: self.num.mul_rational(&inv),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power; negative exponents invert. Panics on `0^e` with e < 0.
    pub fn pow(&self, exp: i64) -> Scalar {
        if exp == 0 {
            return Scalar::one(self.gens());
        }
        let base = if exp < 0 {
            self.recip().expect("zero scalar raised to a negative power")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(self.gens());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Exact evaluation at one rational value per generator, in set order.
    pub fn eval(&self, values: &[BigRational]) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(ScalarError::DegenerateSample);
        }
        Ok(self.num.eval(values) / d)
    }

    /// Evaluation from (key, value) pairs; every generator occurring in the
    /// value must be covered.
    pub fn eval_by_key(&self, assignment: &[(&str, BigRational)]) -> Result<BigRational, ScalarError> {
        let gens = self.gens();
        let mut values = vec![BigRational::zero(); gens.len()];
        let mut covered = vec![false; gens.len()];
        for (key, v) in assignment {
            if let Some(i) = gens.index_of(key) {
                values[i] = v.clone();
                covered[i] = true;
            }
        }
        for i in self.num.vars_present() {
            if !covered[i] {
                return Err(ScalarError::MissingAssignment(gens.get(i).key.clone()));
            }
        }
        for i in self.den.vars_present() {
            if !covered[i] {
                return Err(ScalarError::MissingAssignment(gens.get(i).key.clone()));
            }
        }
        self.eval(&values)
    }

    /// Substitutes a scalar (over `target`) for every generator. Returns an
    /// error when the substituted denominator vanishes identically.
    pub fn substitute(
        &self,
        target: &GeneratorSet,
        images: &[Scalar],
    ) -> Result<Scalar, ScalarError> {
        assert_eq!(images.len(), self.gens().len(), "one image per generator");
        let num = poly_substitute(&self.num, target, images);
        let den = poly_substitute(&self.den, target, images);
        if den.is_zero() {
            return Err(ScalarError::DegenerateSample);
        }
        num.try_div(&den)
    }

    /// Substitution by key: generators not mentioned map to themselves in
    /// the target set (they must exist there by the same key).
    pub fn substitute_by_key(
        &self,
        target: &GeneratorSet,
        map: &[(&str, Scalar)],
    ) -> Result<Scalar, ScalarError> {
        let gens = self.gens();
        let mut images = Vec::with_capacity(gens.len());
        'outer: for i in 0..gens.len() {
            let key = &gens.get(i).key;
            for (k, v) in map {
                if k == key {
                    images.push(v.clone());
                    continue 'outer;
                }
            }
            images.push(Scalar::var(target, key));
        }
        self.substitute(target, &images)
    }

    /// Canonical serialization: generator names, then monomial entries in
    /// the canonical order, integers as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "num": poly_record(&self.num),
            "den": poly_record(&self.den),
        })
    }

    /// LaTeX rendering (fractions, caret exponents with braces).
    pub fn latex(&self) -> String {
        if self.den.is_one() {
            poly_latex(&self.num, false)
        } else {
            format!(
                "\\frac{{{}}}{{{}}}",
                poly_latex(&self.num, false),
                poly_latex(&self.den, false)
            )
        }
    }
}

pub(crate) fn poly_record(p: &MPoly) -> Value {
    let names: Vec<Value> = p.gens().keys().map(|k| Value::String(k.to_string())).collect();
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!([
                m.0.iter().map(|&e| e as u64).collect::<Vec<u64>>(),
                c.numer().to_string(),
                c.denom().to_string(),
            ])
        })
        .collect();
    json!({ "generators": names, "terms": terms })
}

fn poly_latex(p: &MPoly, _parens: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let gens = p.gens();
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (i, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c < &&BigRational::zero();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let abs = if neg { -(*c).clone() } else { (*c).clone() };
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.total() == 0 {
            if abs.denom().is_one() {
                factors.push(abs.numer().to_string());
            } else {
                factors.push(format!("\\tfrac{{{}}}{{{}}}", abs.numer(), abs.denom()));
            }
        }
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = gens.get(v);
            if g.halved {
                if e == 2 {
                    factors.push(g.symbol.clone());
                } else if e % 2 == 0 {
                    factors.push(format!("{}^{{{}}}", g.symbol, e / 2));
                } else {
                    factors.push(format!("{}^{{{}/2}}", g.symbol, e));
                }
            } else if e == 1 {
                factors.push(g.symbol.clone());
            } else {
                factors.push(format!("{}^{{{}}}", g.symbol, e));
            }
        }
        out.push_str(&factors.join(" "));
    }
    out
}

fn poly_substitute(p: &MPoly, target: &GeneratorSet, images: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero(target);
    for (m, c) in p.terms() {
        let mut term = Scalar::from_rational(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                term = term.mul(&images[i].pow(e as i64));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// The q-Pochhammer symbol `(x; q)_k = prod_{i=0}^{k-1} (1 - x q^i)`.
pub fn qpoch(x: &Scalar, q: &Scalar, k: usize) -> Scalar {
    let gens = x.gens();
    let one = Scalar::one(gens);
    let mut acc = one.clone();
    let mut xq = x.clone();
    for _ in 0..k {
        acc = acc.mul(&one.sub(&xq));
        if acc.is_zero() {
            return acc;
        }
        xq = xq.mul(q);
    }
    acc
}

/// Product of Pochhammers with a shared base and length.
pub fn qpoch_multi(xs: &[Scalar], q: &Scalar, k: usize) -> Scalar {
    match xs.first() {
        None => panic!("qpoch_multi needs at least one argument or a generator set"),
        Some(first) => {
            let mut acc = Scalar::one(first.gens());
            for x in xs {
                acc = acc.mul(&qpoch(x, q, k));
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> GeneratorSet {
        GeneratorSet::core()
    }

    #[test]
    fn additive_inverse_cancels() {
        let g = gens();
        let one = Scalar::one(&g);
        let q = Scalar::q(&g);
        let s = one.sub(&q).add(&q.sub(&one));
        assert!(s.is_zero());
    }

    #[test]
    fn exact_factor_cancellation() {
        let g = gens();
        let one = Scalar::one(&g);
        let q = Scalar::q(&g);
        let r = one.sub(&q.pow(2)).try_div(&one.sub(&q)).unwrap();
        assert_eq!(r, one.add(&q));
    }

    #[test]
    fn multiplicative_inverse() {
        let g = gens();
        let one = Scalar::one(&g);
        let q = Scalar::q(&g);
        let t = Scalar::t(&g);
        let a = one.sub(&t).try_div(&one.sub(&q)).unwrap();
        let b = one.sub(&q).try_div(&one.sub(&t)).unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let g = gens();
        let one = Scalar::one(&g);
        assert_eq!(
            one.try_div(&Scalar::zero(&g)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn eval_simple() {
        let g = gens();
        let one = Scalar::one(&g);
        let q = Scalar::q(&g);
        let half = BigRational::new(1.into(), 2.into());
        let v = one
            .sub(&q)
            .eval_by_key(&[("sq", half.clone())])
            .unwrap();
        assert_eq!(v, BigRational::new(3.into(), 4.into()));

        assert_eq!(
            Scalar::zero(&g).eval_by_key(&[]).unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn eval_ratio_by_hand() {
        // (1-t)/(1-q) at sq = 1/2, st = 1/3 -> (8/9)/(3/4) = 32/27
        let g = gens();
        let one = Scalar::one(&g);
        let s = one.sub(&Scalar::t(&g)).try_div(&one.sub(&Scalar::q(&g))).unwrap();
        let v = s
            .eval_by_key(&[
                ("sq", BigRational::new(1.into(), 2.into())),
                ("st", BigRational::new(1.into(), 3.into())),
            ])
            .unwrap();
        assert_eq!(v, BigRational::new(32.into(), 27.into()));
    }

    #[test]
    fn eval_missing_assignment() {
        let g = gens();
        let s = Scalar::t(&g);
        assert!(matches!(
            s.eval_by_key(&[("sq", BigRational::one())]),
            Err(ScalarError::MissingAssignment(k)) if k == "st"
        ));
    }

    #[test]
    fn eval_degenerate_denominator() {
        let g = gens();
        let one = Scalar::one(&g);
        let s = one.try_div(&one.sub(&Scalar::q(&g))).unwrap();
        assert_eq!(
            s.eval_by_key(&[("sq", BigRational::one())]),
            Err(ScalarError::DegenerateSample)
        );
    }

    #[test]
    fn qpoch_basics() {
        let g = gens();
        let one = Scalar::one(&g);
        let q = Scalar::q(&g);
        let x = Scalar::t(&g); // any symbol works as the argument
        assert!(qpoch(&x, &q, 0).is_one());
        let expected = one.sub(&q).mul(&one.sub(&q.pow(2)));
        assert_eq!(qpoch(&q, &q, 2), expected);
        for k in 1..5 {
            assert!(qpoch(&one, &q, k).is_zero());
        }
    }

    #[test]
    fn qpoch_multi_basics() {
        let g = gens();
        let q = Scalar::q(&g);
        let one = Scalar::one(&g);
        assert_eq!(qpoch_multi(&[q.clone()], &q, 1), one.sub(&q));
        let two = qpoch_multi(&[q.clone(), q.clone()], &q, 1);
        assert_eq!(two, one.sub(&q).pow(2));
    }

    #[test]
    fn qpoch_splitting_law() {
        // (x;q)_{m+k} = (x;q)_m (x q^m; q)_k, symbolic in x
        let g = GeneratorSet::q_with(&["x"]);
        let q = Scalar::q(&g);
        let x = Scalar::var(&g, "x");
        for m in 0..=8usize {
            for k in 0..=8usize {
                if m + k > 10 {
                    continue;
                }
                let lhs = qpoch(&x, &q, m + k);
                let rhs = qpoch(&x, &q, m).mul(&qpoch(&x.mul(&q.pow(m as i64)), &q, k));
                assert_eq!(lhs, rhs, "splitting law at m={} k={}", m, k);
            }
        }
    }

    #[test]
    fn normal_form_is_unique() {
        let g = gens();
        let one = Scalar::one(&g);
        let q = Scalar::q(&g);
        let t = Scalar::t(&g);
        // (1-t)/(1-q) built two ways
        let a = one.sub(&t).try_div(&one.sub(&q)).unwrap();
        let b = one
            .sub(&t)
            .mul(&one.add(&q))
            .try_div(&one.sub(&q.pow(2)))
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num(), b.num());
        assert_eq!(a.den(), b.den());
        // denominator of the normal form is primitive, positive leading
        assert!(a.den().leading().unwrap().1 > &BigRational::zero());
    }

    #[test]
    fn substitution_degenerates_to_error() {
        let g = gens();
        let one = Scalar::one(&g);
        let s = one.try_div(&one.sub(&Scalar::cap_t(&g))).unwrap();
        // T -> 1 makes the denominator vanish identically
        let r = s.substitute_by_key(&g, &[("sT", Scalar::one(&g))]);
        assert_eq!(r, Err(ScalarError::DegenerateSample));
    }

    #[test]
    fn substitution_specializes() {
        let g = gens();
        let one = Scalar::one(&g);
        // (1-T)/(1-t) at T = t^2 -> 1 + t
        let s = one
            .sub(&Scalar::cap_t(&g))
            .try_div(&one.sub(&Scalar::t(&g)))
            .unwrap();
        let r = s
            .substitute_by_key(&g, &[("sT", Scalar::var_pow(&g, "st", 2))])
            .unwrap();
        assert_eq!(r, one.add(&Scalar::t(&g)));
    }

    #[test]
    fn canonical_json_shape() {
        let g = gens();
        let one = Scalar::one(&g);
        let s = one.sub(&Scalar::q(&g));
        let v = s.to_json();
        assert_eq!(v["den"]["terms"][0][1], "1");
        let names: Vec<&str> = v["num"]["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap())
            .collect();
        assert_eq!(names, vec!["sq", "st", "sT"]);
    }
}

//! Polynomial GCD over the rationals.
//!
//! Fraction reduction calls this constantly, so the common case (coprime
//! inputs) must exit fast. The strategy:
//!
//! 1. strip monomial and rational content,
//! 2. a modular evaluation probe per shared variable — evaluating all other
//!    variables at random points mod a word-size prime can only enlarge the
//!    gcd degree, so a degree-0 image certifies that the variable is absent
//!    from the gcd,
//! 3. if every shared variable is certified absent, the gcd is the monomial
//!    content alone; otherwise try the evaluation-reconstruction heuristic
//!    (integer gcd at a point beyond the coefficient heights, lifted back by
//!    balanced digits, certified by trial division and a coprime-cofactor
//!    probe), falling back to a primitive pseudo-remainder sequence in the
//!    variable with the smallest probed gcd degree.
//!
//! The result is primitive with positive leading coefficient, so it is the
//! canonical associate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, ToPrimitive};

use super::mpoly::{MPoly, Mono};

/// Word-size prime for the evaluation probe (2^64 - 2^32 + 1).
const PROBE_PRIME: u64 = 0xffff_ffff_0000_0001;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PROBE_PRIME as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % PROBE_PRIME as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= PROBE_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, PROBE_PRIME - 2)
}

fn rational_mod(c: &BigRational) -> Option<u64> {
    let p = BigInt::from(PROBE_PRIME);
    let num = c.numer().mod_floor(&p).to_u64()?;
    let den = c.denom().mod_floor(&p).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mulmod(num, invmod(den)))
}

/// Deterministic generator for probe points.
struct ProbeRng(u64);

impl ProbeRng {
    fn next(&mut self) -> u64 {
        // splitmix64 step
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn point(&mut self) -> u64 {
        // small nonzero points keep the modular powers cheap
        2 + self.next() % ((1 << 20) - 2)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn univ_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lb_inv = invmod(b[db]);
        while a.len() > db {
            let da = a.len() - 1;
            let factor = mulmod(a[da], lb_inv);
            if factor != 0 {
                for i in 0..=db {
                    let sub = mulmod(factor, b[i]);
                    a[da - db + i] = addmod(a[da - db + i], PROBE_PRIME - sub);
                }
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        usize::MAX // both vanished; caller treats as inconclusive
    } else {
        a.len() - 1
    }
}

/// Evaluates everything except `var` at the given points mod p; returns the
/// dense univariate image, or None when a coefficient denominator hits p.
fn eval_mod_univariate(p: &MPoly, var: usize, points: &[u64]) -> Option<Vec<u64>> {
    let deg = p.degree_in(var) as usize;
    let mut out = vec![0u64; deg + 1];
    for (mono, coeff) in p.terms() {
        let mut val = rational_mod(coeff)?;
        for (i, &e) in mono.0.iter().enumerate() {
            if i == var || e == 0 {
                continue;
            }
            val = mulmod(val, powmod(points[i], e as u64));
        }
        let idx = mono.0[var] as usize;
        out[idx] = addmod(out[idx], val);
    }
    Some(out)
}

/// Fixed probe seed; the probe must behave identically across runs.
const PROBE_SEED: u64 = 0x5eed_5eed_5eed_5eed;

/// Certified degree of `var` in gcd(f, g), or None when the probe stays
/// inconclusive. A return of Some(0) is a proof (the image gcd degree never
/// undershoots the true one when leading coefficients survive); positive
/// values are only hints used to pick the main variable.
fn probe_var(f: &MPoly, g: &MPoly, var: usize) -> Option<usize> {
    let df = f.degree_in(var) as usize;
    let dg = g.degree_in(var) as usize;
    let mut rng = ProbeRng(PROBE_SEED ^ (var as u64).wrapping_mul(0x9e3779b9));
    for _ in 0..4 {
        let n = f.gens().len();
        let points: Vec<u64> = (0..n).map(|_| rng.point()).collect();
        let fi = match eval_mod_univariate(f, var, &points) {
            Some(v) => v,
            None => continue,
        };
        let gi = match eval_mod_univariate(g, var, &points) {
            Some(v) => v,
            None => continue,
        };
        // Leading coefficients must survive, otherwise the image gcd degree
        // may undershoot and the certificate is void.
        if fi.len() != df + 1 || gi.len().checked_sub(1) != Some(dg) || fi[df] == 0 || gi[dg] == 0 {
            continue;
        }
        let d = univ_gcd_degree(fi, gi);
        if d != usize::MAX {
            return Some(d);
        }
    }
    None
}

/// Max absolute numerator over the coefficients; inputs here are primitive,
/// so denominators are 1.
fn height(p: &MPoly) -> BigInt {
    p.terms()
        .map(|(_, c)| c.numer().abs())
        .max()
        .unwrap_or_else(|| BigInt::from(0))
}

/// Substitute one variable by a big integer, collecting like monomials.
fn eval_var_big(p: &MPoly, var: usize, xi: &BigInt) -> MPoly {
    let gens = p.gens().clone();
    MPoly::from_terms(
        &gens,
        p.terms().map(|(m, c)| {
            let mut m2 = m.clone();
            let e = m2.0[var];
            m2.0[var] = 0;
            let scaled = if e == 0 {
                c.clone()
            } else {
                c * BigRational::from(xi.pow(e as u32))
            };
            (m2, scaled)
        }),
    )
}

/// Split an integer-coefficient polynomial as `digit + xi * rest` with the
/// digit coefficients balanced in (-xi/2, xi/2].
fn balanced_split(p: &MPoly, xi: &BigInt) -> (MPoly, MPoly) {
    let gens = p.gens().clone();
    let mut digit = Vec::new();
    let mut rest = Vec::new();
    for (m, c) in p.terms() {
        let n = c.numer();
        let mut r = n.mod_floor(xi);
        if &r * 2 > *xi {
            r -= xi;
        }
        let q = (n - &r) / xi;
        if r != BigInt::from(0) {
            digit.push((m.clone(), BigRational::from(r)));
        }
        if q != BigInt::from(0) {
            rest.push((m.clone(), BigRational::from(q)));
        }
    }
    (
        MPoly::from_terms(&gens, digit),
        MPoly::from_terms(&gens, rest),
    )
}

/// One pass of the evaluation heuristic at a given retry level. A `Some`
/// result divides both inputs but is not yet known to be the full gcd.
fn heu_attempt(f: &MPoly, g: &MPoly, attempt: u32) -> Option<MPoly> {
    let gens = f.gens().clone();
    let var = f
        .vars_present()
        .into_iter()
        .chain(g.vars_present())
        .max();
    let var = match var {
        Some(v) => v,
        None => {
            // integer base case
            let a = f.as_constant()?.numer().clone();
            let b = g.as_constant()?.numer().clone();
            return Some(MPoly::constant(&gens, BigRational::from(a.gcd(&b))));
        }
    };
    let hf = height(f);
    let hg = height(g);
    let mut xi = hf.min(hg) * 2 + 2;
    for _ in 0..attempt {
        xi = (&xi * BigInt::from(73794)) / BigInt::from(27011) + 1;
    }
    let fe = eval_var_big(f, var, &xi);
    let ge = eval_var_big(g, var, &xi);
    let h = heu_attempt(&fe, &ge, attempt)?;
    // lift h back through the xi-adic digits
    let dmax = f.degree_in(var).min(g.degree_in(var)) as usize;
    let mut digits: Vec<MPoly> = Vec::new();
    let mut rest = h;
    while !rest.is_zero() {
        if digits.len() > dmax {
            return None;
        }
        let (d, q) = balanced_split(&rest, &xi);
        digits.push(d);
        rest = q;
    }
    if digits.is_empty() {
        return None;
    }
    let cand = MPoly::from_coeffs_in(&gens, var, &digits).primitive_part();
    if f.divide_exact(&cand).is_some() && g.divide_exact(&cand).is_some() {
        Some(cand)
    } else {
        None
    }
}

/// Evaluation-reconstruction gcd for primitive integer-coefficient inputs.
/// The certified divisor is grown until the probe proves the cofactors
/// coprime, so a `Some` answer is the true gcd.
fn heu_gcd(f: &MPoly, g: &MPoly) -> Option<MPoly> {
    let gens = f.gens().clone();
    let mut acc = MPoly::one(&gens);
    let mut fr = f.clone();
    let mut gr = g.clone();
    'grow: loop {
        let vf = fr.vars_present();
        let shared: Vec<usize> = gr
            .vars_present()
            .into_iter()
            .filter(|v| vf.contains(v))
            .collect();
        let mut coprime = true;
        for &v in &shared {
            match probe_var(&fr, &gr, v) {
                Some(0) => {}
                _ => {
                    coprime = false;
                    break;
                }
            }
        }
        if coprime {
            return Some(acc.primitive_part());
        }
        for attempt in 0..5 {
            if let Some(d) = heu_attempt(&fr, &gr, attempt) {
                if d.as_constant().is_some() {
                    // probe says nontrivial but the heuristic disagrees;
                    // let the remainder sequence settle it
                    return None;
                }
                fr = fr.divide_exact(&d).expect("certified divisor");
                gr = gr.divide_exact(&d).expect("certified divisor");
                acc = acc.mul(&d);
                continue 'grow;
            }
        }
        return None;
    }
}

/// Content of a coefficient list under gcd, with early exit at 1.
fn content_of(coeffs: &[MPoly]) -> MPoly {
    let gens = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.gens().clone());
    let gens = match gens {
        Some(g) => g,
        None => return coeffs[0].clone(),
    };
    let mut acc = MPoly::zero(&gens);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, c);
        if acc.is_one() {
            return acc;
        }
    }
    acc
}

/// Pseudo-remainder of a by b in `var` (coefficients as dense vectors).
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    loop {
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() <= db {
            return r;
        }
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        // r = lb*r - lead * x^{dr-db} * b
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for i in 0..=db {
            r[dr - db + i] = r[dr - db + i].sub(&lead.mul(&b[i]));
        }
        debug_assert!(r[dr].is_zero());
    }
}

/// Divides out the content over `var` and the rational content, leaving the
/// input primitive as a polynomial in `var`.
fn primitive_wrt(p: &MPoly, var: usize) -> MPoly {
    let cont = content_of(&p.coeffs_in(var));
    if cont.is_one() {
        return p.primitive_part();
    }
    p.divide_exact(&cont)
        .expect("content must divide")
        .primitive_part()
}

/// Primitive pseudo-remainder sequence; inputs must be primitive in `var`.
fn prs_gcd(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let gens = f.gens().clone();
    let (mut a, mut b) = if f.degree_in(var) >= g.degree_in(var) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    loop {
        let r_vec = pseudo_rem(&a.coeffs_in(var), &b.coeffs_in(var));
        let r = MPoly::from_coeffs_in(&gens, var, &r_vec);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(var) == 0 {
            // nonzero remainder free of var: the gcd has degree 0 in var,
            // and the inputs are primitive in var
            return MPoly::one(&gens);
        }
        a = b;
        b = primitive_wrt(&r, var);
    }
}

/// GCD of two polynomials, returned primitive (coprime integer coefficients)
/// with positive leading coefficient. `poly_gcd(0, 0) = 0`.
pub fn poly_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    let gens = f.gens().clone();
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return MPoly::one(&gens);
    }
    // monomial content
    let mf = f.min_exponents();
    let mg = g.min_exponents();
    let common = Mono(
        mf.0.iter()
            .zip(&mg.0)
            .map(|(a, b)| *a.min(b))
            .collect::<Vec<u16>>(),
    );
    let f1 = f.shift_down(&mf).primitive_part();
    let g1 = g.shift_down(&mg).primitive_part();
    let mono_part = |core: MPoly| -> MPoly {
        if common.total() == 0 {
            core
        } else {
            core.mul_mono(&common)
        }
    };
    if f1.as_constant().is_some() || g1.as_constant().is_some() {
        return mono_part(MPoly::one(&gens));
    }
    if f1 == g1 {
        return mono_part(f1);
    }
    // nested products are the norm here (one denominator extends the other),
    // and divisibility settles those without any gcd machinery
    if f1.nterms() <= g1.nterms() {
        if g1.divide_exact(&f1).is_some() {
            return mono_part(f1);
        }
    } else if f1.divide_exact(&g1).is_some() {
        return mono_part(g1);
    }
    let vf = f1.vars_present();
    let vg = g1.vars_present();
    let shared: Vec<usize> = vf.iter().copied().filter(|v| vg.contains(v)).collect();
    if shared.is_empty() {
        return mono_part(MPoly::one(&gens));
    }
    // probe each shared variable
    let mut best: Option<(usize, usize)> = None; // (probed degree, var)
    let mut all_zero = true;
    for &v in &shared {
        match probe_var(&f1, &g1, v) {
            Some(0) => {}
            Some(d) => {
                all_zero = false;
                if best.map(|(bd, _)| d < bd).unwrap_or(true) {
                    best = Some((d, v));
                }
            }
            None => {
                all_zero = false;
                let d = usize::MAX - 1;
                if best.map(|(bd, _)| d < bd).unwrap_or(true) {
                    best = Some((d, v));
                }
            }
        }
    }
    if all_zero {
        return mono_part(MPoly::one(&gens));
    }
    if let Some(h) = heu_gcd(&f1, &g1) {
        let out = mono_part(h);
        debug_assert!(f.divide_exact(&out).is_some(), "gcd must divide f");
        debug_assert!(g.divide_exact(&out).is_some(), "gcd must divide g");
        return out;
    }
    let var = best.unwrap().1;
    // split off contents over the main variable, recurse on both parts
    let fc = content_of(&f1.coeffs_in(var));
    let gc = content_of(&g1.coeffs_in(var));
    let fp = f1.divide_exact(&fc).expect("content must divide");
    let gp = g1.divide_exact(&gc).expect("content must divide");
    let cont_gcd = poly_gcd(&fc, &gc);
    let core = prs_gcd(&fp, &gp, var).mul(&cont_gcd).primitive_part();
    let out = mono_part(core);
    debug_assert!(f.divide_exact(&out).is_some(), "gcd must divide f");
    debug_assert!(g.divide_exact(&out).is_some(), "gcd must divide g");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GeneratorSet;

    fn gens() -> GeneratorSet {
        GeneratorSet::core()
    }

    fn q(g: &GeneratorSet) -> MPoly {
        MPoly::gen_pow(g, 0, 2)
    }

    fn t(g: &GeneratorSet) -> MPoly {
        MPoly::gen_pow(g, 1, 2)
    }

    #[test]
    fn gcd_of_known_product() {
        let g = gens();
        let one = MPoly::one(&g);
        let a = one.sub(&q(&g)); // 1-q
        let b = one.add(&q(&g)); // 1+q
        let c = one.sub(&t(&g)); // 1-t
        let f1 = a.mul(&b).mul(&c);
        let f2 = a.mul(&a).mul(&b);
        let d = poly_gcd(&f1, &f2);
        // canonical associate of (1-q)(1+q) = 1-q^2 has positive leading: q^2-1
        assert_eq!(d, a.mul(&b).neg());
        assert!(f1.divide_exact(&d).is_some());
        assert!(f2.divide_exact(&d).is_some());
    }

    #[test]
    fn coprime_exits_via_probe() {
        let g = gens();
        let one = MPoly::one(&g);
        let f1 = one.sub(&q(&g));
        let f2 = one.sub(&t(&g));
        assert!(poly_gcd(&f1, &f2).is_one());
    }

    #[test]
    fn monomial_content_is_kept() {
        let g = gens();
        let one = MPoly::one(&g);
        let q = q(&g);
        // q^2(1-q) vs q(1+q): gcd = q
        let f1 = q.pow(2).mul(&one.sub(&q));
        let f2 = q.mul(&one.add(&q));
        let d = poly_gcd(&f1, &f2);
        assert_eq!(d, q);
    }

    #[test]
    fn multivariate_shared_factor() {
        let g = gens();
        let one = MPoly::one(&g);
        let shared = one.sub(&q(&g).mul(&t(&g))); // 1 - qt
        let f1 = shared.mul(&one.add(&q(&g)));
        let f2 = shared.mul(&one.add(&t(&g))).mul(&shared);
        let d = poly_gcd(&f1, &f2);
        // canonical associate: qt - 1
        assert_eq!(d, shared.neg());
    }

    #[test]
    fn gcd_with_zero_and_constants() {
        let g = gens();
        let z = MPoly::zero(&g);
        let f = q(&g).mul_rational(&num::BigRational::new(4.into(), 3.into()));
        assert_eq!(poly_gcd(&z, &f), q(&g)); // primitive associate
        let c = MPoly::from_int(&g, 7);
        assert!(poly_gcd(&c, &f).is_one());
        assert!(poly_gcd(&z, &z).is_zero());
    }
}

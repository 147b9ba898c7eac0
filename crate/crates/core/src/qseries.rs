//! Terminating basic hypergeometric series and the identity layer built on
//! them: the two-parameter series transformations, their converses, and the
//! classical summation formulas used as independent oracles.
//!
//! Every series here carries an explicit termination certificate (the index
//! m for which some upper parameter is q^{-m}); nothing is inferred from the
//! shape of the parameters. All checks are exact: symbolic ones compare
//! normal forms of rational functions, sampled ones compare rationals.

use std::fmt;

use crate::scalars::{qpoch, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSeriesError {
    /// A lower-parameter Pochhammer vanished at or before the termination
    /// index; the series value is undefined.
    PoleInSeries,
    /// A prefactor or argument hit a zero denominator at the chosen point;
    /// the caller should redraw the sample.
    Degenerate,
}

impl fmt::Display for QSeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeriesError::PoleInSeries => write!(f, "pole in series before termination"),
            QSeriesError::Degenerate => write!(f, "degenerate evaluation point"),
        }
    }
}

impl std::error::Error for QSeriesError {}

impl From<ScalarError> for QSeriesError {
    fn from(_: ScalarError) -> QSeriesError {
        QSeriesError::Degenerate
    }
}

/// A terminating {r+1}phi_r series.
#[derive(Clone, Debug)]
pub struct PhiSeries {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub q: Scalar,
    pub z: Scalar,
    /// Termination certificate: the series is summed for i = 0..=m because
    /// some upper parameter equals q^{-m}. Checked at construction.
    pub termination: usize,
}

impl PhiSeries {
    pub fn new(
        upper: Vec<Scalar>,
        lower: Vec<Scalar>,
        q: Scalar,
        z: Scalar,
        termination: usize,
    ) -> PhiSeries {
        assert_eq!(
            upper.len(),
            lower.len() + 1,
            "series must have one more upper than lower parameter"
        );
        let witness = q.pow(-(termination as i64));
        assert!(
            upper.iter().any(|a| *a == witness),
            "termination certificate: no upper parameter equals q^-m"
        );
        PhiSeries {
            upper,
            lower,
            q,
            z,
            termination,
        }
    }
}

/// Exact value of a terminating series: the sum of the first m+1 terms,
/// computed by running ratios.
pub fn phi_eval(s: &PhiSeries) -> Result<Scalar, QSeriesError> {
    let gens = s.q.gens();
    let one = Scalar::one(gens);
    let mut total = one.clone();
    let mut term = one.clone();
    let mut qi = one.clone();
    for _ in 0..s.termination {
        // running ratio from term i to term i+1; qi tracks q^i
        let mut num = s.z.clone();
        for a in &s.upper {
            num = num.mul(&one.sub(&a.mul(&qi)));
        }
        let mut den = one.sub(&s.q.mul(&qi));
        for b in &s.lower {
            den = den.mul(&one.sub(&b.mul(&qi)));
        }
        if den.is_zero() {
            return Err(QSeriesError::PoleInSeries);
        }
        term = term.mul(&num.try_div(&den)?);
        if term.is_zero() {
            break;
        }
        total = total.add(&term);
        qi = qi.mul(&s.q);
    }
    Ok(total)
}

/// Convenience: "x" repeated Pochhammer ratio helpers used throughout the
/// identity layer.
fn ratio(a: &Scalar, b: &Scalar) -> Result<Scalar, QSeriesError> {
    Ok(a.try_div(b)?)
}

/// (u;q)_r / (q;q)_r.
fn poch_over_qfact(u: &Scalar, q: &Scalar, r: usize) -> Result<Scalar, QSeriesError> {
    ratio(&qpoch(u, q, r), &qpoch(q, q, r))
}

/// The q-binomial theorem as a power series identity in a fresh variable:
/// (t u;q)_inf / (u;q)_inf = sum_r (t;q)_r/(q;q)_r u^r, verified for the
/// coefficients of u^0..u^n. The infinite products are truncated; the
/// truncation error has q-valuation beyond 2(M+1) in sq, which is what the
/// coefficient comparison allows for.
pub fn oracle_q_binomial(t: &Scalar, q: &Scalar, n: usize) -> bool {
    let gens = t.gens();
    let m = n + 2;
    let a = useries::poch_linear(t, q, m + 1, n);
    let b = useries::poch_linear(&Scalar::one(gens), q, m + 1, n);
    let binv = match useries::recip(&b, n) {
        Some(v) => v,
        None => return false,
    };
    let series = useries::mul(&a, &binv, n);
    let sq_idx = gens.index_of("sq").expect("q-series over a q generator set");
    for (r, coeff) in series.iter().enumerate() {
        let expected = match poch_over_qfact(t, q, r) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let diff = coeff.sub(&expected);
        if diff.is_zero() {
            continue;
        }
        // truncation residue: must vanish to q-order M+1
        if diff.den().min_exponents().0[sq_idx] != 0 {
            return false;
        }
        if (diff.num().min_exponents().0[sq_idx] as usize) < 2 * (m + 1) {
            return false;
        }
    }
    true
}

/// Truncated power series in an implicit variable u, coefficients exact
/// scalars; index r is the coefficient of u^r.
pub(crate) mod useries {
    use super::Scalar;

    /// (x u; q)_m as a u-series mod u^{n+1}: the product of m linear factors
    /// (1 - x q^i u).
    pub fn poch_linear(x: &Scalar, q: &Scalar, m: usize, n: usize) -> Vec<Scalar> {
        let gens = x.gens();
        let mut out = vec![Scalar::zero(gens); n + 1];
        out[0] = Scalar::one(gens);
        let mut xq = x.clone();
        for _ in 0..m {
            // multiply by (1 - xq * u)
            for r in (1..=n).rev() {
                let lower = out[r - 1].mul(&xq).neg();
                out[r] = out[r].add(&lower);
            }
            xq = xq.mul(q);
        }
        out
    }

    pub fn mul(a: &[Scalar], b: &[Scalar], n: usize) -> Vec<Scalar> {
        let gens = a[0].gens();
        let mut out = vec![Scalar::zero(gens); n + 1];
        for i in 0..=n.min(a.len() - 1) {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i).min(b.len() - 1) {
                out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
            }
        }
        out
    }

    /// Reciprocal of a series with invertible constant term.
    pub fn recip(b: &[Scalar], n: usize) -> Option<Vec<Scalar>> {
        let gens = b[0].gens();
        let c0 = b[0].recip().ok()?;
        let mut out = vec![Scalar::zero(gens); n + 1];
        out[0] = c0.clone();
        for r in 1..=n {
            let mut acc = Scalar::zero(gens);
            for s in 1..=r.min(b.len() - 1) {
                acc = acc.add(&b[s].mul(&out[r - s]));
            }
            out[r] = acc.mul(&c0).neg();
        }
        Some(out)
    }
}

/// q-Chu-Vandermonde: 2phi1[q^-n, b; c; q, c q^n / b] = (c/b;q)_n / (c;q)_n.
pub fn oracle_chu_vandermonde(
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    n: usize,
) -> Result<bool, QSeriesError> {
    let z = c.mul(&q.pow(n as i64)).try_div(b)?;
    let s = PhiSeries::new(
        vec![q.pow(-(n as i64)), b.clone()],
        vec![c.clone()],
        q.clone(),
        z,
        n,
    );
    let lhs = phi_eval(&s)?;
    let rhs = ratio(&qpoch(&c.try_div(b)?, q, n), &qpoch(c, q, n))?;
    Ok(lhs == rhs)
}

/// q-Saalschutz: 3phi2[q^-n, a, b; c, a b q^{1-n}/c; q, q]
///             = (c/a, c/b;q)_n / (c, c/ab;q)_n.
pub fn oracle_saalschutz(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    n: usize,
) -> Result<bool, QSeriesError> {
    let ab = a.mul(b);
    let d2 = ab.mul(&q.pow(1 - n as i64)).try_div(c)?;
    let s = PhiSeries::new(
        vec![q.pow(-(n as i64)), a.clone(), b.clone()],
        vec![c.clone(), d2],
        q.clone(),
        q.clone(),
        n,
    );
    let lhs = phi_eval(&s)?;
    let rhs = qpoch(&c.try_div(a)?, q, n)
        .mul(&qpoch(&c.try_div(b)?, q, n))
        .try_div(&qpoch(c, q, n).mul(&qpoch(&c.try_div(&ab)?, q, n)))?;
    Ok(lhs == rhs)
}

/// Terminating very-well-poised 6phi5, with a = s^2 so the well-poised
/// square roots are exact:
/// 6phi5[a, qs, -qs, b, c, q^-n; s, -s, aq/b, aq/c, aq^{n+1}; q, aq^{n+1}/bc]
///   = (aq, aq/bc;q)_n / (aq/b, aq/c;q)_n.
pub fn oracle_vwp_6phi5(
    s_root: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    n: usize,
) -> Result<bool, QSeriesError> {
    let a = s_root.mul(s_root);
    let aq = a.mul(q);
    let z = aq.mul(&q.pow(n as i64)).try_div(&b.mul(c))?;
    let series = PhiSeries::new(
        vec![
            a.clone(),
            q.mul(s_root),
            q.mul(s_root).neg(),
            b.clone(),
            c.clone(),
            q.pow(-(n as i64)),
        ],
        vec![
            s_root.clone(),
            s_root.neg(),
            aq.try_div(b)?,
            aq.try_div(c)?,
            aq.mul(&q.pow(n as i64)),
        ],
        q.clone(),
        z,
        n,
    );
    let lhs = phi_eval(&series)?;
    let rhs = qpoch(&aq, q, n)
        .mul(&qpoch(&aq.try_div(&b.mul(c))?, q, n))
        .try_div(&qpoch(&aq.try_div(b)?, q, n).mul(&qpoch(&aq.try_div(c)?, q, n)))?;
    Ok(lhs == rhs)
}

/// Watson's transformation of a terminating very-well-poised 8phi7 into a
/// balanced 4phi3 (again a = s^2):
/// 8phi7[a, qs, -qs, b, c, d, e, q^-N; s, -s, aq/b, aq/c, aq/d, aq/e,
///       aq^{N+1}; q, a^2 q^{N+2}/bcde]
///   = (aq, aq/de;q)_N / (aq/d, aq/e;q)_N
///     * 4phi3[q^-N, d, e, aq/bc; aq/b, aq/c, de q^-N / a; q, q].
pub fn oracle_watson(
    s_root: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    e: &Scalar,
    q: &Scalar,
    n: usize,
) -> Result<bool, QSeriesError> {
    let a = s_root.mul(s_root);
    let aq = a.mul(q);
    let z = a
        .mul(&a)
        .mul(&q.pow(n as i64 + 2))
        .try_div(&b.mul(c).mul(d).mul(e))?;
    let series = PhiSeries::new(
        vec![
            a.clone(),
            q.mul(s_root),
            q.mul(s_root).neg(),
            b.clone(),
            c.clone(),
            d.clone(),
            e.clone(),
            q.pow(-(n as i64)),
        ],
        vec![
            s_root.clone(),
            s_root.neg(),
            aq.try_div(b)?,
            aq.try_div(c)?,
            aq.try_div(d)?,
            aq.try_div(e)?,
            aq.mul(&q.pow(n as i64)),
        ],
        q.clone(),
        z,
        n,
    );
    let lhs = phi_eval(&series)?;
    let de = d.mul(e);
    let phi43 = PhiSeries::new(
        vec![
            q.pow(-(n as i64)),
            d.clone(),
            e.clone(),
            aq.try_div(&b.mul(c))?,
        ],
        vec![
            aq.try_div(b)?,
            aq.try_div(c)?,
            de.mul(&q.pow(-(n as i64))).try_div(&a)?,
        ],
        q.clone(),
        q.clone(),
        n,
    );
    let rhs = qpoch(&aq, q, n)
        .mul(&qpoch(&aq.try_div(&de)?, q, n))
        .try_div(&qpoch(&aq.try_div(d)?, q, n).mul(&qpoch(&aq.try_div(e)?, q, n)))?
        .mul(&phi_eval(&phi43)?);
    Ok(lhs == rhs)
}

/// Left side of the two-parameter transformation:
/// (u;q)_r/(q;q)_r * 2phi1[q^-r, ux; q^{1-r}/ux; q, qv/u^2 x].
pub fn theorem1_lhs(
    r: usize,
    u: &Scalar,
    v: &Scalar,
    x: &Scalar,
    q: &Scalar,
) -> Result<Scalar, QSeriesError> {
    let ux = u.mul(x);
    let z = q.mul(v).try_div(&u.mul(u).mul(x))?;
    let s = PhiSeries::new(
        vec![q.pow(-(r as i64)), ux.clone()],
        vec![q.pow(1 - r as i64).try_div(&ux)?],
        q.clone(),
        z,
        r,
    );
    Ok(poch_over_qfact(u, q, r)?.mul(&phi_eval(&s)?))
}

/// Right side: the sum over i <= r/2 of the relabeled series against the
/// lower-triangular connection coefficients.
pub fn theorem1_rhs(
    r: usize,
    u: &Scalar,
    v: &Scalar,
    x: &Scalar,
    y: &Scalar,
    q: &Scalar,
) -> Result<Scalar, QSeriesError> {
    let gens = u.gens();
    let mut total = Scalar::zero(gens);
    for i in 0..=(r / 2) {
        let m = r - 2 * i;
        let inner = theorem1_lhs(m, u, v, y, q)?;
        let coeff = y
            .pow(i as i64)
            .mul(&v.pow(i as i64))
            .mul(&qpoch(&x.try_div(y)?, q, i))
            .try_div(&qpoch(q, q, i))?
            .mul(&qpoch(&u.mul(&q.pow(m as i64)), q, 2 * i))
            .try_div(
                &qpoch(&u.mul(x).mul(&q.pow((r - i) as i64)), q, i)
                    .mul(&qpoch(&u.mul(y).mul(&q.pow((m + 1) as i64)), q, i)),
            )?;
        total = total.add(&inner.mul(&coeff));
    }
    Ok(total)
}

pub fn theorem1_check(
    r: usize,
    u: &Scalar,
    v: &Scalar,
    x: &Scalar,
    y: &Scalar,
    q: &Scalar,
) -> Result<bool, QSeriesError> {
    Ok(theorem1_lhs(r, u, v, x, q)? == theorem1_rhs(r, u, v, x, y, q)?)
}

/// H_r from its defining sum:
/// (u;q)_r/(q;q)_r H_r = sum_i a^{r-i} (u;q)_{r-i}/(q;q)_{r-i}
///   * 2phi1[q^{i-r}, v; q^{1+i-r}/v; q, q/v^2a^2]
///   * (x, uq^{r-i}, v^2 q^{2r-i+1};q)_i / (q, vq^{r-i+1}, x v^2 q^{2r-i};q)_i.
pub fn theorem2_h_sum(
    r: usize,
    u: &Scalar,
    v: &Scalar,
    x: &Scalar,
    a: &Scalar,
    q: &Scalar,
) -> Result<Scalar, QSeriesError> {
    let gens = u.gens();
    let z = q.try_div(&v.mul(v).mul(a).mul(a))?;
    let mut total = Scalar::zero(gens);
    for i in 0..=r {
        let m = r - i;
        let inner = PhiSeries::new(
            vec![q.pow(-(m as i64)), v.clone()],
            vec![q.pow(1 - m as i64).try_div(v)?],
            q.clone(),
            z.clone(),
            m,
        );
        let v2 = v.mul(v);
        let num = qpoch(x, q, i)
            .mul(&qpoch(&u.mul(&q.pow(m as i64)), q, i))
            .mul(&qpoch(&v2.mul(&q.pow((2 * r - i + 1) as i64)), q, i));
        let den = qpoch(q, q, i)
            .mul(&qpoch(&v.mul(&q.pow((m + 1) as i64)), q, i))
            .mul(&qpoch(&x.mul(&v2).mul(&q.pow((2 * r - i) as i64)), q, i));
        let term = a
            .pow(m as i64)
            .mul(&poch_over_qfact(u, q, m)?)
            .mul(&phi_eval(&inner)?)
            .mul(&num.try_div(&den)?);
        total = total.add(&term);
    }
    total.try_div(&poch_over_qfact(u, q, r)?).map_err(Into::into)
}

/// The closed form of H_r: a balanced 4phi3 against a fully factored
/// prefactor. Takes sq = q^{1/2} and squares it internally.
pub fn theorem2_h_closed(
    r: usize,
    v: &Scalar,
    x: &Scalar,
    a: &Scalar,
    sq: &Scalar,
) -> Result<Scalar, QSeriesError> {
    let q = sq.mul(sq);
    let gens = v.gens();
    let one = Scalar::one(gens);
    let v2 = v.mul(v);
    let xv = x.mul(v);
    let xv2 = x.mul(&v2);
    let vsq = v.mul(sq);
    let phi = PhiSeries::new(
        vec![
            q.pow(-(r as i64)),
            xv2.mul(&q.pow(r as i64)),
            a.mul(v).neg(),
            one.try_div(a)?.neg(),
        ],
        vec![vsq.clone(), vsq.neg(), xv.neg()],
        q.clone(),
        q.clone(),
        r,
    );
    let pref = one
        .neg()
        .try_div(v)?
        .pow(r as i64)
        .mul(&qpoch(&vsq, &q, r))
        .mul(&qpoch(&vsq.neg(), &q, r))
        .mul(&qpoch(&xv.neg(), &q, r))
        .mul(&qpoch(&xv2, &q, r))
        .try_div(&qpoch(&xv2, &q, 2 * r))?;
    Ok(pref.mul(&phi_eval(&phi)?))
}

/// Both sides of the H_r identity at one point (or symbolically).
pub fn theorem2_h(
    r: usize,
    u: &Scalar,
    v: &Scalar,
    x: &Scalar,
    a: &Scalar,
    sq: &Scalar,
) -> Result<(Scalar, Scalar), QSeriesError> {
    let q = sq.mul(sq);
    Ok((
        theorem2_h_sum(r, u, v, x, a, &q)?,
        theorem2_h_closed(r, v, x, a, sq)?,
    ))
}

/// The converse expansion: a^r (u;q)_r/(q;q)_r 2phi1[q^-r, v; q^{1-r}/v;
/// q, q/v^2a^2] as a sum of H_{r-i} (closed form) against its coefficients.
pub fn theorem3_check(
    r: usize,
    u: &Scalar,
    v: &Scalar,
    x: &Scalar,
    a: &Scalar,
    sq: &Scalar,
) -> Result<bool, QSeriesError> {
    let q = sq.mul(sq);
    let gens = u.gens();
    let one = Scalar::one(gens);
    let z = q.try_div(&v.mul(v).mul(a).mul(a))?;
    let lhs_phi = PhiSeries::new(
        vec![q.pow(-(r as i64)), v.clone()],
        vec![q.pow(1 - r as i64).try_div(v)?],
        q.clone(),
        z,
        r,
    );
    let lhs = a
        .pow(r as i64)
        .mul(&poch_over_qfact(u, &q, r)?)
        .mul(&phi_eval(&lhs_phi)?);

    let v2 = v.mul(v);
    let mut rhs = Scalar::zero(gens);
    for i in 0..=r {
        let m = r - i;
        let h = theorem2_h_closed(m, v, x, a, sq)?;
        let num = qpoch(&one.try_div(x)?, &q, i)
            .mul(&qpoch(&u.mul(&q.pow(m as i64)), &q, i))
            .mul(&qpoch(&v2.mul(&q.pow((2 * m + 1) as i64)), &q, i));
        let den = qpoch(&q, &q, i)
            .mul(&qpoch(&v.mul(&q.pow((m + 1) as i64)), &q, i))
            .mul(&qpoch(&x.mul(&v2).mul(&q.pow((2 * m + 1) as i64)), &q, i));
        let edge = one
            .sub(&v2.mul(&q.pow(2 * r as i64)))
            .try_div(&one.sub(&v2.mul(&q.pow((2 * r - i) as i64))))?;
        let term = poch_over_qfact(u, &q, m)?
            .mul(&h)
            .mul(&x.pow(i as i64))
            .mul(&num.try_div(&den)?)
            .mul(&edge);
        rhs = rhs.add(&term);
    }
    Ok(lhs == rhs)
}

/// 2phi1[q^-r, v; q^{1-r}/v; q, q/v^2a^2]
///   = (av)^{-r} (v^2;q)_r/(v;q)_r
///     * 4phi3[q^-r, v^2 q^r, av, 1/a; vq^{1/2}, -vq^{1/2}, -v; q, q].
pub fn lemma7_check(
    r: usize,
    v: &Scalar,
    a: &Scalar,
    sq: &Scalar,
) -> Result<bool, QSeriesError> {
    let q = sq.mul(sq);
    let gens = v.gens();
    let one = Scalar::one(gens);
    let z = q.try_div(&v.mul(v).mul(a).mul(a))?;
    let lhs_phi = PhiSeries::new(
        vec![q.pow(-(r as i64)), v.clone()],
        vec![q.pow(1 - r as i64).try_div(v)?],
        q.clone(),
        z,
        r,
    );
    let lhs = phi_eval(&lhs_phi)?;
    let v2 = v.mul(v);
    let vsq = v.mul(sq);
    let rhs_phi = PhiSeries::new(
        vec![
            q.pow(-(r as i64)),
            v2.mul(&q.pow(r as i64)),
            a.mul(v),
            one.try_div(a)?,
        ],
        vec![vsq.clone(), vsq.neg(), v.neg()],
        q.clone(),
        q.clone(),
        r,
    );
    let rhs = a
        .mul(v)
        .pow(-(r as i64))
        .mul(&qpoch(&v2, &q, r))
        .try_div(&qpoch(v, &q, r))?
        .mul(&phi_eval(&rhs_phi)?);
    Ok(lhs == rhs)
}

/// The balanced 4phi3 = 4phi3 transformation behind the H_r closed form:
/// 4phi3[q^-n, a^2, qa, b; a, qa^2/b, q^{1+n}a^2; q, q^{1+n}a/b]
///   = (qa^2, -1;q)_n / (q^{1/2}a, -q^{1/2}a;q)_n
///     * 4phi3[q^-n, -qa/b, q^{1/2}a, -q^{1/2}a; -q^{1-n}, qa^2/b, -qa; q, q].
pub fn lemma9_check(
    n: usize,
    a: &Scalar,
    b: &Scalar,
    sq: &Scalar,
) -> Result<bool, QSeriesError> {
    let q = sq.mul(sq);
    let a2 = a.mul(a);
    let qa = q.mul(a);
    let qa2b = q.mul(&a2).try_div(b)?;
    let lhs_phi = PhiSeries::new(
        vec![q.pow(-(n as i64)), a2.clone(), qa.clone(), b.clone()],
        vec![a.clone(), qa2b.clone(), a2.mul(&q.pow((n + 1) as i64))],
        q.clone(),
        q.pow((n + 1) as i64).mul(a).try_div(b)?,
        n,
    );
    let lhs = phi_eval(&lhs_phi)?;
    let gens = a.gens();
    let one = Scalar::one(gens);
    let sqa = sq.mul(a);
    let rhs_phi = PhiSeries::new(
        vec![
            q.pow(-(n as i64)),
            qa.try_div(b)?.neg(),
            sqa.clone(),
            sqa.neg(),
        ],
        vec![q.pow(1 - n as i64).neg(), qa2b, qa.neg()],
        q.clone(),
        q.clone(),
        n,
    );
    let rhs = qpoch(&q.mul(&a2), &q, n)
        .mul(&qpoch(&one.neg(), &q, n))
        .try_div(&qpoch(&sqa, &q, n).mul(&qpoch(&sqa.neg(), &q, n)))?
        .mul(&phi_eval(&rhs_phi)?);
    Ok(lhs == rhs)
}

//! Root data for the families B_n, C_n, D_n in the standard coordinates.
//!
//! Weights that index monomials are integer vectors (`Vec<i32>`, matching
//! Laurent exponents). Vectors that may have half-integer coordinates (the
//! minuscule weight of C_n and the deformed rho vectors) are stored doubled,
//! as "half units" (`Vec<i64>`), so all bookkeeping stays in integers; the
//! doubling cancels against the square-root generators sq, st, sT.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::laurent::LaurentPoly;
use crate::scalars::{GeneratorSet, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RsType {
    B,
    C,
    D,
}

impl RsType {
    pub fn parse(s: &str) -> Option<RsType> {
        match s {
            "B" | "b" => Some(RsType::B),
            "C" | "c" => Some(RsType::C),
            "D" | "d" => Some(RsType::D),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RsType::B => "B",
            RsType::C => "C",
            RsType::D => "D",
        }
    }
}

impl fmt::Display for RsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Which deformation parameter a root carries: `Pair` roots e_i +- e_j take
/// t, `Axis` roots (e_i for B, 2e_i for C) take T.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthClass {
    Pair,
    Axis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<i32>,
    pub class: LengthClass,
}

/// One coordinate of a deformed rho vector: the value is
/// (t_half/2) k + (T_half/2) K, recorded through the exponents it
/// contributes, q^{coordinate} = t^{t_half/2} T^{T_half/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoCoord {
    pub t_half: i64,
    pub cap_t_half: i64,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    rs_type: RsType,
    n: usize,
    positive: Vec<Root>,
    /// D only: when set, dominance compares the magnitude of the last
    /// coordinate, identifying a spin weight with its mirror. Off by
    /// default: the cone order keeps the two incomparable.
    pub d_dominance_abs: bool,
}

impl RootSystem {
    pub fn build(rs_type: RsType, n: usize) -> RootSystem {
        assert!(n >= 2, "rank must be at least 2");
        let mut positive = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut plus = vec![0i32; n];
                plus[i] = 1;
                plus[j] = 1;
                let mut minus = vec![0i32; n];
                minus[i] = 1;
                minus[j] = -1;
                positive.push(Root {
                    coords: minus,
                    class: LengthClass::Pair,
                });
                positive.push(Root {
                    coords: plus,
                    class: LengthClass::Pair,
                });
            }
        }
        match rs_type {
            RsType::B => {
                for i in 0..n {
                    let mut v = vec![0i32; n];
                    v[i] = 1;
                    positive.push(Root {
                        coords: v,
                        class: LengthClass::Axis,
                    });
                }
            }
            RsType::C => {
                for i in 0..n {
                    let mut v = vec![0i32; n];
                    v[i] = 2;
                    positive.push(Root {
                        coords: v,
                        class: LengthClass::Axis,
                    });
                }
            }
            RsType::D => {}
        }
        let expected = match rs_type {
            RsType::B | RsType::C => n * n,
            RsType::D => n * (n - 1),
        };
        assert_eq!(positive.len(), expected);
        RootSystem {
            rs_type,
            n,
            positive,
            d_dominance_abs: false,
        }
    }

    pub fn rs_type(&self) -> RsType {
        self.rs_type
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// All roots, positives followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut out = self.positive.clone();
        for r in &self.positive {
            out.push(Root {
                coords: r.coords.iter().map(|x| -x).collect(),
                class: r.class,
            });
        }
        out
    }

    pub fn weyl_order(&self) -> u128 {
        let fact: u128 = (1..=self.n as u128).product();
        match self.rs_type {
            RsType::B | RsType::C => (1u128 << self.n) * fact,
            RsType::D => (1u128 << (self.n - 1)) * fact,
        }
    }

    /// Orbit of a half-unit vector under the Weyl group: closure under the
    /// simple reflections, returned sorted.
    pub fn weyl_orbit_half(&self, v: &[i64]) -> Vec<Vec<i64>> {
        assert_eq!(v.len(), self.n);
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.to_vec());
        queue.push_back(v.to_vec());
        while let Some(w) = queue.pop_front() {
            let mut images: Vec<Vec<i64>> = Vec::new();
            for i in 0..self.n - 1 {
                let mut u = w.clone();
                u.swap(i, i + 1);
                images.push(u);
            }
            match self.rs_type {
                RsType::B | RsType::C => {
                    let mut u = w.clone();
                    u[self.n - 1] = -u[self.n - 1];
                    images.push(u);
                }
                RsType::D => {
                    let mut u = w.clone();
                    let a = u[self.n - 2];
                    let b = u[self.n - 1];
                    u[self.n - 2] = -b;
                    u[self.n - 1] = -a;
                    images.push(u);
                }
            }
            for u in images {
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn weyl_orbit(&self, w: &[i32]) -> Vec<Vec<i32>> {
        let half: Vec<i64> = w.iter().map(|&x| 2 * x as i64).collect();
        self.weyl_orbit_half(&half)
            .into_iter()
            .map(|v| v.iter().map(|&x| (x / 2) as i32).collect())
            .collect()
    }

    /// The monomial symmetric function m_lambda = sum over the orbit of
    /// e^mu, each with coefficient one.
    pub fn orbit_sum(&self, lambda: &[i32], gens: &GeneratorSet) -> LaurentPoly {
        let mut m = LaurentPoly::zero(self.n, gens);
        let one = Scalar::one(gens);
        for mu in self.weyl_orbit(lambda) {
            m = m.add(&LaurentPoly::monomial(self.n, gens, mu, one.clone()));
        }
        m
    }

    pub fn is_dominant(&self, w: &[i32]) -> bool {
        assert_eq!(w.len(), self.n);
        for i in 0..self.n - 1 {
            if w[i] < w[i + 1] {
                return false;
            }
        }
        match self.rs_type {
            RsType::B | RsType::C => w[self.n - 1] >= 0,
            RsType::D => w[self.n - 2] >= w[self.n - 1].abs(),
        }
    }

    /// The dominance (root cone) order on dominant weights: mu <= lambda
    /// iff lambda - mu is a nonnegative integer combination of positive
    /// roots, tested through the dual cone and the root lattice.
    pub fn dominance_leq(&self, mu: &[i32], lambda: &[i32]) -> bool {
        assert_eq!(mu.len(), self.n);
        assert_eq!(lambda.len(), self.n);
        if self.rs_type == RsType::D && self.d_dominance_abs {
            let mut m2 = mu.to_vec();
            m2[self.n - 1] = -m2[self.n - 1];
            let base = Self {
                d_dominance_abs: false,
                ..self.clone()
            };
            return base.dominance_leq(mu, lambda) || base.dominance_leq(&m2, lambda);
        }
        let d: Vec<i64> = lambda
            .iter()
            .zip(mu)
            .map(|(a, b)| (*a - *b) as i64)
            .collect();
        let mut s = 0i64;
        let mut partial = Vec::with_capacity(self.n);
        for x in &d {
            s += x;
            partial.push(s);
        }
        match self.rs_type {
            RsType::B => partial.iter().all(|&p| p >= 0),
            RsType::C => {
                partial[..self.n - 1].iter().all(|&p| p >= 0)
                    && partial[self.n - 1] >= 0
                    && partial[self.n - 1] % 2 == 0
            }
            RsType::D => {
                let dn = d[self.n - 1];
                let s_head = partial[self.n - 2];
                partial[..self.n.saturating_sub(2)].iter().all(|&p| p >= 0)
                    && s_head - dn >= 0
                    && s_head + dn >= 0
                    && (s_head + dn) % 2 == 0
            }
        }
    }

    /// All dominant weights mu <= lambda, sorted so every weight precedes
    /// the weights below it (coordinate sum descending, then lexicographic
    /// descending, a linear extension of the dominance order).
    pub fn lower_dominant_set(&self, lambda: &[i32]) -> Vec<Vec<i32>> {
        assert!(self.is_dominant(lambda), "top weight must be dominant");
        let bound = lambda.iter().map(|&x| x.abs()).max().unwrap_or(0);
        let mut out: Vec<Vec<i32>> = Vec::new();
        let mut stack: Vec<Vec<i32>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == self.n {
                if self.dominance_leq(&prefix, lambda) {
                    out.push(prefix);
                }
                continue;
            }
            let hi = if prefix.is_empty() {
                bound
            } else {
                prefix[prefix.len() - 1]
            };
            let last = prefix.len() == self.n - 1;
            for v in 0..=hi {
                let mut next = prefix.clone();
                next.push(v);
                stack.push(next);
                if last && v > 0 && self.rs_type == RsType::D {
                    let mut neg = prefix.clone();
                    neg.push(-v);
                    stack.push(neg);
                }
            }
        }
        out.sort_by(|a, b| {
            let sa: i64 = a.iter().map(|&x| x as i64).sum();
            let sb: i64 = b.iter().map(|&x| x as i64).sum();
            sb.cmp(&sa).then_with(|| b.cmp(a))
        });
        out
    }

    /// The deformed half sum rho_k; coordinate i is (n-i)k + c K with c
    /// depending on the family (K is the parameter of the Axis roots).
    pub fn rho(&self) -> Vec<RhoCoord> {
        (0..self.n)
            .map(|i| {
                let t_half = 2 * (self.n - 1 - i) as i64;
                let cap_t_half = match self.rs_type {
                    RsType::B => 1,
                    RsType::C => 2,
                    RsType::D => 0,
                };
                RhoCoord { t_half, cap_t_half }
            })
            .collect()
    }

    /// The dual vector rho_k^*: same t part, K attached through the coroot
    /// normalization (K/2 for C, K for B, absent for D). The principal
    /// specialization point is q^{rho_k^*}.
    pub fn rho_star(&self) -> Vec<RhoCoord> {
        (0..self.n)
            .map(|i| {
                let t_half = 2 * (self.n - 1 - i) as i64;
                let cap_t_half = match self.rs_type {
                    RsType::B => 2,
                    RsType::C => 1,
                    RsType::D => 0,
                };
                RhoCoord { t_half, cap_t_half }
            })
            .collect()
    }

    /// The base of the principal specialization x_i = t^{n-i} base, i.e.
    /// q^{(rho_k^*)_n}: T for B, T^{1/2} for C, 1 for D.
    pub fn principal_base(&self, gens: &GeneratorSet) -> Scalar {
        match self.rs_type {
            RsType::B => Scalar::cap_t(gens),
            RsType::C => Scalar::var(gens, "sT"),
            RsType::D => Scalar::one(gens),
        }
    }

    /// The minuscule weight driving the shift operator, in half units:
    /// e_1 for B and D, (e_1 + .. + e_n)/2 for C. Pairings with every
    /// positive root lie in {0, 1}.
    pub fn minuscule_pi_half(&self) -> Vec<i64> {
        let mut pi = vec![0i64; self.n];
        match self.rs_type {
            RsType::B | RsType::D => pi[0] = 2,
            RsType::C => pi.iter_mut().for_each(|x| *x = 1),
        }
        for r in &self.positive {
            let p = root_pairing_half(&pi, r);
            assert!(p == 0 || p == 1, "weight is not minuscule");
        }
        pi
    }

    pub fn pi_orbit_half(&self) -> Vec<Vec<i64>> {
        self.weyl_orbit_half(&self.minuscule_pi_half())
    }

    /// |Stab(pi)| = |W| / |W pi|.
    pub fn pi_stabilizer_order(&self) -> u128 {
        let orbit = self.pi_orbit_half().len() as u128;
        let w = self.weyl_order();
        assert_eq!(w % orbit, 0);
        w / orbit
    }
}

/// Exact pairing <v, root> for a half-unit vector v.
pub fn root_pairing_half(v_half: &[i64], root: &Root) -> i64 {
    let dot: i64 = v_half
        .iter()
        .zip(&root.coords)
        .map(|(a, &b)| a * b as i64)
        .sum();
    assert!(dot % 2 == 0, "pairing is not integral");
    dot / 2
}

/// sq exponent of q^{<mu, tau>} for an integer weight mu and a half-unit
/// vector tau: the doubling of tau cancels the square root of q.
pub fn weight_pairing_sq_exp(mu: &[i32], tau_half: &[i64]) -> i64 {
    mu.iter().zip(tau_half).map(|(&a, &b)| a as i64 * b).sum()
}

/// (st, sT) exponents of q^{<v, rho_k>} for a half-unit vector v.
pub fn rho_pairing_exps(v_half: &[i64], rho: &[RhoCoord]) -> (i64, i64) {
    let mut t2 = 0i64;
    let mut cap2 = 0i64;
    for (v, r) in v_half.iter().zip(rho) {
        t2 += v * r.t_half;
        cap2 += v * r.cap_t_half;
    }
    assert!(t2 % 2 == 0 && cap2 % 2 == 0, "rho pairing not half-integral");
    (t2 / 2, cap2 / 2)
}

/// The scalar q^{<v, rho>} from the exponents above.
pub fn rho_pairing_scalar(gens: &GeneratorSet, v_half: &[i64], rho: &[RhoCoord]) -> Scalar {
    let (st_e, ct_e) = rho_pairing_exps(v_half, rho);
    Scalar::var_pow(gens, "st", st_e).mul(&Scalar::var_pow(gens, "sT", ct_e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_and_weyl_orders() {
        for n in 2..=4usize {
            let b = RootSystem::build(RsType::B, n);
            let c = RootSystem::build(RsType::C, n);
            let d = RootSystem::build(RsType::D, n);
            assert_eq!(b.positive_roots().len(), n * n);
            assert_eq!(c.positive_roots().len(), n * n);
            assert_eq!(d.positive_roots().len(), n * (n - 1));
            // a vector with distinct magnitudes has trivial stabilizer
            let generic: Vec<i32> = (0..n).map(|i| (n - i) as i32 * 3).collect();
            assert_eq!(b.weyl_orbit(&generic).len() as u128, b.weyl_order());
            assert_eq!(d.weyl_orbit(&generic).len() as u128, d.weyl_order());
        }
    }

    #[test]
    fn d_orbit_preserves_sign_parity() {
        let d = RootSystem::build(RsType::D, 2);
        let orbit = d.weyl_orbit(&[1, 1]);
        assert_eq!(orbit, vec![vec![-1, -1], vec![1, 1]]);
        let orbit2 = d.weyl_orbit(&[1, 0]);
        assert_eq!(orbit2.len(), 4);

        let d3 = RootSystem::build(RsType::D, 3);
        // no zero entries: only even sign flips, 4 * 6 = 24 vectors
        assert_eq!(d3.weyl_orbit(&[3, 2, 1]).len(), 24);
        // a zero coordinate frees the ambient sign
        assert_eq!(d3.weyl_orbit(&[2, 1, 0]).len(), 24);
    }

    #[test]
    fn minuscule_orbit_sizes() {
        for n in 2..=4usize {
            let b = RootSystem::build(RsType::B, n);
            let c = RootSystem::build(RsType::C, n);
            let d = RootSystem::build(RsType::D, n);
            assert_eq!(b.pi_orbit_half().len(), 2 * n);
            assert_eq!(c.pi_orbit_half().len(), 1 << n);
            assert_eq!(d.pi_orbit_half().len(), 2 * n);
            // stabilizer orders multiply back to |W|
            assert_eq!(
                b.pi_stabilizer_order() * 2 * n as u128,
                b.weyl_order()
            );
        }
    }

    #[test]
    fn dominance_hand_cases() {
        let c2 = RootSystem::build(RsType::C, 2);
        assert!(c2.dominance_leq(&[1, 1], &[2, 0]));
        assert!(!c2.dominance_leq(&[2, 0], &[1, 1]));
        // parity: the root lattice of C has even coordinate sum
        assert!(!c2.dominance_leq(&[0, 0], &[1, 0]));
        assert!(c2.dominance_leq(&[0, 0], &[2, 0]));

        let b2 = RootSystem::build(RsType::B, 2);
        assert!(b2.dominance_leq(&[1, 0], &[2, 0]));
        assert!(b2.dominance_leq(&[0, 0], &[1, 0]));
        assert!(!b2.dominance_leq(&[1, 1], &[1, 0]));

        let d3 = RootSystem::build(RsType::D, 3);
        assert!(d3.dominance_leq(&[1, 1, 1], &[3, 0, 0]));
        assert!(d3.dominance_leq(&[1, 1, -1], &[3, 0, 0]));
        // the two spin-adjacent weights are incomparable
        assert!(!d3.dominance_leq(&[1, 1, -1], &[1, 1, 1]));
        assert!(!d3.dominance_leq(&[1, 1, 1], &[1, 1, -1]));
        assert!(!d3.dominance_leq(&[1, 1, 1], &[2, 0, 0]));
        assert!(d3.dominance_leq(&[0, 0, 0], &[2, 0, 0]));

        let mut d3_abs = RootSystem::build(RsType::D, 3);
        d3_abs.d_dominance_abs = true;
        assert!(d3_abs.dominance_leq(&[1, 1, -1], &[1, 1, 1]));
    }

    #[test]
    fn lower_sets_are_sorted_linear_extensions() {
        let c2 = RootSystem::build(RsType::C, 2);
        assert_eq!(
            c2.lower_dominant_set(&[2, 0]),
            vec![vec![2, 0], vec![1, 1], vec![0, 0]]
        );
        let b2 = RootSystem::build(RsType::B, 2);
        assert_eq!(
            b2.lower_dominant_set(&[2, 0]),
            vec![vec![2, 0], vec![1, 1], vec![1, 0], vec![0, 0]]
        );
        let d3 = RootSystem::build(RsType::D, 3);
        let set = d3.lower_dominant_set(&[3, 0, 0]);
        assert_eq!(
            set,
            vec![
                vec![3, 0, 0],
                vec![2, 1, 0],
                vec![1, 1, 1],
                vec![1, 1, -1],
                vec![1, 0, 0]
            ]
        );
        // every listed weight is below the top and the order extends dominance
        for s in set.iter() {
            assert!(d3.dominance_leq(s, &[3, 0, 0]));
        }
        for (i, a) in set.iter().enumerate() {
            for b in set.iter().skip(i + 1) {
                assert!(!d3.dominance_leq(a, b) || a == b);
            }
        }
    }

    #[test]
    fn rho_coordinates() {
        let b2 = RootSystem::build(RsType::B, 2);
        assert_eq!(
            b2.rho(),
            vec![
                RhoCoord { t_half: 2, cap_t_half: 1 },
                RhoCoord { t_half: 0, cap_t_half: 1 }
            ]
        );
        let c2 = RootSystem::build(RsType::C, 2);
        assert_eq!(
            c2.rho(),
            vec![
                RhoCoord { t_half: 2, cap_t_half: 2 },
                RhoCoord { t_half: 0, cap_t_half: 2 }
            ]
        );
        let d3 = RootSystem::build(RsType::D, 3);
        assert_eq!(d3.rho()[0], RhoCoord { t_half: 4, cap_t_half: 0 });
        assert_eq!(d3.rho(), d3.rho_star());
    }

    #[test]
    fn pairing_helpers() {
        let c2 = RootSystem::build(RsType::C, 2);
        let pi = c2.minuscule_pi_half();
        assert_eq!(pi, vec![1, 1]);
        for r in c2.positive_roots() {
            let p = root_pairing_half(&pi, r);
            assert!(p == 0 || p == 1);
        }
        // <mu, pi> for mu = (2, 0): q-exponent 2 * 1 = sq^2 = q
        assert_eq!(weight_pairing_sq_exp(&[2, 0], &pi), 2);
        // <pi, rho> for C2: rho = (k + K, K), pairing = (k + 2K)/2
        let (st_e, ct_e) = rho_pairing_exps(&pi, &c2.rho());
        assert_eq!((st_e, ct_e), (1, 2));
    }
}

//! Case classification of (q, p) and the homotopy of K(F_q) completed at p.

use serde::{Deserialize, Serialize};

use crate::algebra::{PoincareSeries, Presentation};
use crate::error::{EngineError, Result};
use crate::fp::{is_prime, PrimeField};

/// Arithmetic data attached to a pair (q, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub q: u64,
    pub p: u32,
    /// Multiplicative order of q modulo p.
    pub r: u32,
    /// p-adic valuation of q^r − 1.
    pub v: u32,
    /// (p − 1) / r.
    pub k: u32,
    pub case: u8,
}

impl CaseParams {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("classify only accepts primes")
    }

    /// |x| = 2r − 1.
    pub fn x_degree(&self) -> u32 {
        2 * self.r - 1
    }

    /// |y| = 2r.
    pub fn y_degree(&self) -> u32 {
        2 * self.r
    }
}

fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            return (n == 1).then_some(d);
        }
        d += 1;
    }
    Some(q)
}

fn pow_mod(mut b: u128, mut e: u64, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// v_p(q^n − 1) for q ≡ 1 modulo p after raising to the n-th power, found by
/// testing q^n ≡ 1 modulo increasing powers of p.
pub fn valuation_of_power_minus_one(q: u64, n: u64, p: u32) -> Result<u32> {
    let p = p as u128;
    let mut m = 0;
    let mut modulus = p;
    while pow_mod(q as u128, n, modulus) == 1 {
        m += 1;
        modulus = match modulus.checked_mul(p) {
            Some(x) if x < 1u128 << 63 => x,
            _ => return Err(EngineError::Precondition(format!("v_p({q}^{n} − 1) exceeds the supported range"))),
        };
    }
    Ok(m)
}

/// Classifies (q, p) into one of the four cases.
pub fn classify(q: u64, p: u32) -> Result<CaseParams> {
    if !is_prime(p as u64) || p < 5 {
        return Err(EngineError::Precondition(format!("p = {p} must be a prime ≥ 5")));
    }
    if prime_power_base(q).is_none() {
        return Err(EngineError::Precondition(format!("q = {q} is not a prime power")));
    }
    if q % p as u64 == 0 {
        return Err(EngineError::Precondition(format!("p = {p} divides q = {q}")));
    }
    let qm = q % p as u64;
    let mut r = 1;
    let mut acc = qm;
    while acc != 1 {
        acc = acc * qm % p as u64;
        r += 1;
    }
    let v = valuation_of_power_minus_one(q, r as u64, p)?;
    let k = (p - 1) / r;
    let case = match (r == p - 1, v == 1) {
        (true, true) => 1,
        (true, false) => 2,
        (false, false) => 3,
        (false, true) => 4,
    };
    Ok(CaseParams { q, p, r, v, k, case })
}

/// One homotopy group of K(F_q) completed at p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", content = "exponent", rename_all = "snake_case")]
pub enum HomotopyGroup {
    Zero,
    /// Z_p.
    Integers,
    /// Z/p^m with m ≥ 1.
    Cyclic(u32),
}

/// π_n for 0 ≤ n ≤ D: Z_p in degree 0 and Z/p^{v_p(q^i − 1)} in degree 2i − 1.
pub fn homotopy(params: &CaseParams, max_degree: u32) -> Result<Vec<HomotopyGroup>> {
    (0..=max_degree)
        .map(|n| {
            if n == 0 {
                return Ok(HomotopyGroup::Integers);
            }
            if n % 2 == 0 {
                return Ok(HomotopyGroup::Zero);
            }
            let i = (n + 1) / 2;
            match valuation_of_power_minus_one(params.q, i as u64, params.p)? {
                0 => Ok(HomotopyGroup::Zero),
                m => Ok(HomotopyGroup::Cyclic(m)),
            }
        })
        .collect()
}

/// (dim coker p, dim ker p) on π_n after tensoring with F_p.
fn mod_p_pieces(g: HomotopyGroup) -> (usize, usize) {
    match g {
        HomotopyGroup::Zero => (0, 0),
        HomotopyGroup::Integers => (1, 0),
        HomotopyGroup::Cyclic(_) => (1, 1),
    }
}

/// V(0)_n K = coker(p on π_n) ⊕ ker(p on π_{n−1}).
pub fn v0_of_k(params: &CaseParams, max_degree: u32) -> Result<PoincareSeries> {
    let pi = homotopy(params, max_degree)?;
    let dims = (0..=max_degree as usize)
        .map(|n| mod_p_pieces(pi[n]).0 + if n > 0 { mod_p_pieces(pi[n - 1]).1 } else { 0 })
        .collect();
    Ok(PoincareSeries::new(dims))
}

/// A basis class of V(0)_*K: x^ε y^j in degree ε(2r − 1) + 2rj.
fn v0_label(params: &CaseParams, n: u32) -> Option<(u32, u32)> {
    let (dx, dy) = (params.x_degree(), params.y_degree());
    if n % dy == 0 {
        Some((0, n / dy))
    } else if n >= dx && (n - dx) % dy == 0 {
        Some((1, (n - dx) / dy))
    } else {
        None
    }
}

/// V(1)_n K = coker(v on V(0)_n) ⊕ ker(v on V(0)_{n−2p+1}), where
/// v: Σ^{2p−2}V(0)_*K → V(0)_*K multiplies by y^k.
pub fn v1_of_k(params: &CaseParams, max_degree: u32) -> Result<PoincareSeries> {
    let v0 = v0_of_k(params, max_degree)?;
    let shift = 2 * params.p - 2;
    // Rank of v from degree n − shift into degree n. A class x^ε y^j goes to
    // x^ε y^{j+k}, which is the basis class in the target degree when both
    // spaces are nonzero.
    let rank_into = |n: u32| -> usize {
        if n < shift || v0.get(n - shift) == 0 || v0.get(n) == 0 {
            return 0;
        }
        let (e, j) = v0_label(params, n - shift).expect("nonzero V(0) degree has a label");
        usize::from(v0_label(params, n) == Some((e, j + params.k)))
    };
    let dims = (0..=max_degree)
        .map(|n| {
            let coker = v0.get(n) - rank_into(n);
            let ker = if n > shift {
                v0.get(n - 1 - shift) - rank_into(n - 1)
            } else {
                0
            };
            coker + ker
        })
        .collect();
    Ok(PoincareSeries::new(dims))
}

/// E(x) ⊗ P(y) with |x| = 2r − 1, |y| = 2r.
pub fn v0_presentation(params: &CaseParams) -> Result<Presentation> {
    Presentation::builder(params.field()).ext("x", params.x_degree()).poly("y", params.y_degree()).build()
}

/// E(x) ⊗ P_k(y).
pub fn v1_presentation(params: &CaseParams) -> Result<Presentation> {
    let b = Presentation::builder(params.field()).ext("x", params.x_degree());
    if params.k > 1 {
        b.truncated("y", params.y_degree(), params.k).build()
    } else {
        b.build()
    }
}

/// One row of the Bockstein table: the V(0) class in `degree` = 2ri supports
/// a Bockstein differential d^{page} with page = v_p(q^{ri} − 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BocksteinRow {
    pub degree: u32,
    pub page: u32,
}

/// The even V(0) classes of positive degree ≤ D and their Bockstein pages.
/// The class in degree 0 is a permanent cycle and is not listed.
pub fn bockstein_torsion_table(params: &CaseParams, max_degree: u32) -> Result<Vec<BocksteinRow>> {
    let dy = params.y_degree();
    (1..=max_degree / dy)
        .map(|i| {
            let page = valuation_of_power_minus_one(params.q, (params.r * i) as u64, params.p)?;
            Ok(BocksteinRow { degree: dy * i, page })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn reference_pairs() {
        let got: Vec<_> = [(2, 5), (7, 5), (49, 5), (4, 5)]
            .iter()
            .map(|&(q, p)| {
                let c = classify(q, p).unwrap();
                (c.r, c.v, c.case)
            })
            .collect();
        assert_eq!(got, vec![(4, 1, 1), (4, 2, 2), (2, 2, 3), (2, 1, 4)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(classify(10, 5).is_err());
        assert!(classify(6, 5).is_err());
        assert!(classify(2, 3).is_err());
        assert!(classify(3, 9).is_err());
    }

    #[test]
    fn order_depends_only_on_q_mod_p() {
        for q in [2u64, 3, 4, 7, 8, 9, 11, 13, 16, 17, 19, 23, 27, 29, 31, 32, 37, 41, 43, 47, 49] {
            for p in [5u32, 7, 11, 13] {
                let Ok(c) = classify(q, p) else { continue };
                let reduced = q % p as u64;
                // Reduce to a residue that is itself a prime power, else skip.
                if let Ok(d) = classify(reduced, p) {
                    assert_eq!(c.r, d.r, "q={q} p={p}");
                }
                assert_eq!((p - 1) % c.r, 0);
                assert!(c.v >= 1);
            }
        }
    }

    #[test]
    fn v0_table() {
        let c = classify(2, 5).unwrap();
        let dims = v0_of_k(&c, 16).unwrap();
        assert_eq!(dims.nonzero_degrees(), vec![0, 7, 8, 15, 16]);
        let c = classify(49, 5).unwrap();
        assert_eq!(v0_of_k(&c, 8).unwrap().nonzero_degrees(), vec![0, 3, 4, 7, 8]);
    }

    #[test]
    fn v1_table() {
        let c = classify(2, 5).unwrap();
        assert_eq!(v1_of_k(&c, 40).unwrap().nonzero_degrees(), vec![0, 7]);
        let c = classify(49, 5).unwrap();
        assert_eq!(v1_of_k(&c, 8).unwrap().nonzero_degrees(), vec![0, 3, 4, 7]);
        let c = classify(7, 5).unwrap();
        assert_eq!(v1_of_k(&c, 20).unwrap().get(8), 0);
    }

    #[test]
    fn long_exact_sequences_match_presentations() {
        for (q, p) in [(2, 5), (7, 5), (49, 5), (4, 5), (3, 7), (2, 7)] {
            let c = classify(q, p).unwrap();
            let a0 = Algebra::new(v0_presentation(&c).unwrap(), 60).unwrap();
            let a1 = Algebra::new(v1_presentation(&c).unwrap(), 60).unwrap();
            assert_eq!(v0_of_k(&c, 60).unwrap(), a0.poincare(), "q={q} p={p}");
            assert_eq!(v1_of_k(&c, 60).unwrap(), a1.poincare(), "q={q} p={p}");
        }
    }

    #[test]
    fn bockstein_pages_follow_lifting_the_exponent() {
        // v_p(q^{rj} − 1) = v + v_p(j) for odd p.
        for (q, p) in [(2u64, 5u32), (7, 5), (49, 5), (4, 5)] {
            let c = classify(q, p).unwrap();
            for row in bockstein_torsion_table(&c, 120).unwrap() {
                let mut j = row.degree / c.y_degree();
                let mut vj = 0;
                while j % p == 0 {
                    j /= p;
                    vj += 1;
                }
                assert_eq!(row.page, c.v + vj, "q={q} degree {}", row.degree);
            }
        }
        let t = bockstein_torsion_table(&classify(7, 5).unwrap(), 8).unwrap();
        assert_eq!(t, vec![BocksteinRow { degree: 8, page: 2 }]);
        let t = bockstein_torsion_table(&classify(2, 5).unwrap(), 8).unwrap();
        assert_eq!(t, vec![BocksteinRow { degree: 8, page: 1 }]);
    }

    #[test]
    fn torsion_orders() {
        // 7^4 − 1 = 2400 = 2^5·3·5^2.
        let c = classify(7, 5).unwrap();
        let pi = homotopy(&c, 8).unwrap();
        assert_eq!(pi[7], HomotopyGroup::Cyclic(2));
        assert_eq!(pi[5], HomotopyGroup::Zero);
        assert_eq!(pi[0], HomotopyGroup::Integers);
    }
}

//! Elimination over small prime fields and rational reconstruction.
//!
//! Nothing in here is trusted on its own: residues only propose candidate
//! rational values, and the caller checks every candidate exactly over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;

/// The 64 largest primes below 2^31. Products of two residues fit in a `u64`.
pub(crate) const PRIMES: [u64; 64] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497,
    2147483489, 2147483477, 2147483423, 2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
    2147483237, 2147483179, 2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943, 2147482937, 2147482921,
    2147482877, 2147482873, 2147482867, 2147482859, 2147482819, 2147482817, 2147482811, 2147482801,
    2147482763, 2147482739, 2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
    2147482591, 2147482583, 2147482577, 2147482507, 2147482501, 2147482481, 2147482417, 2147482409,
    2147482367, 2147482361, 2147482349, 2147482343, 2147482327, 2147482291, 2147482273, 2147482237,
];

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if t < 0 {
        (t + p as i64) as u64
    } else {
        t as u64
    }
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational in Z/p, or `None` when p divides the denominator.
pub(crate) fn scalar_mod(x: &Scalar, p: u64) -> Option<u64> {
    let den = bigint_mod(x.denom(), p);
    if den == 0 {
        return None;
    }
    let num = bigint_mod(x.numer(), p);
    Some(num * inv_mod(den, p) % p)
}

/// Row echelon form over Z/p, built one row at a time.
///
/// Stored rows are normalized (leading entry 1) and have zeros left of their
/// lead, which is all the incremental reduction needs.
pub(crate) struct ModEchelon {
    p: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    leads: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    sources: Vec<usize>,
}

impl ModEchelon {
    pub(crate) fn new(p: u64, ncols: usize) -> Self {
        Self {
            p,
            ncols,
            rows: Vec::new(),
            leads: Vec::new(),
            pivot_row: vec![None; ncols],
            sources: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the current rows; keeps it if it is independent.
    pub(crate) fn insert(&mut self, mut row: Vec<u64>, source: usize) -> bool {
        let p = self.p;
        for c in 0..self.ncols {
            let v = row[c];
            if v == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let f = p - v;
                    let pivot = &self.rows[r];
                    for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                        if *y != 0 {
                            *x = (*x + f * y) % p;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(v, p);
                    for x in row[c..].iter_mut() {
                        *x = *x * inv % p;
                    }
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(row);
                    self.leads.push(c);
                    self.sources.push(source);
                    return true;
                }
            }
        }
        false
    }

    /// Finishes the reduction: returns rows sorted by lead, fully reduced,
    /// along with their leads and the indices of the source rows kept.
    pub(crate) fn into_reduced(self) -> ReducedMod {
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.leads[r]);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(order.len());
        let mut leads = Vec::with_capacity(order.len());
        let mut sources = Vec::with_capacity(order.len());
        let mut taken: Vec<Option<Vec<u64>>> = self.rows.into_iter().map(Some).collect();
        for &r in &order {
            rows.push(taken[r].take().expect("each row taken once"));
            leads.push(self.leads[r]);
            sources.push(self.sources[r]);
        }
        for i in (0..rows.len()).rev() {
            let lead = leads[i];
            let (above, rest) = rows.split_at_mut(i);
            let pivot = &rest[0];
            for s in above.iter_mut() {
                let v = s[lead];
                if v == 0 {
                    continue;
                }
                let f = p - v;
                for (x, y) in s[lead..].iter_mut().zip(&pivot[lead..]) {
                    if *y != 0 {
                        *x = (*x + f * y) % p;
                    }
                }
            }
        }
        ReducedMod { rows, leads, sources }
    }
}

pub(crate) struct ReducedMod {
    pub(crate) rows: Vec<Vec<u64>>,
    pub(crate) leads: Vec<usize>,
    pub(crate) sources: Vec<usize>,
}

/// Rational reconstruction of `r mod m` with numerator and denominator
/// bounded by `sqrt(m / 2)`.
pub(crate) fn rational_reconstruct_u64(r: u64, m: u64) -> Option<(i64, u64)> {
    let bound = ((m / 2) as f64).sqrt() as i64;
    let (mut r0, mut r1) = (m as i64, r as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if num.gcd(&den) != 1 {
        return None;
    }
    Some((num, den as u64))
}

pub(crate) fn rational_reconstruct_big(r: &BigInt, m: &BigInt) -> Option<Scalar> {
    let half: BigInt = m / 2;
    let bound = half.sqrt();
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let next_r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, next_r);
        let next_t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, next_t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Scalar::new(r1, t1))
}

/// Chinese remaindering of residues against their primes.
pub(crate) fn crt(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(r, p) in residues {
        // x + m * t ≡ r (mod p)
        let xm = bigint_mod(&x, p);
        let mm = bigint_mod(&m, p);
        let diff = (r + p - xm) % p;
        let t = diff * inv_mod(mm, p) % p;
        x += &m * BigInt::from(t);
        m *= BigInt::from(p);
    }
    (x, m)
}

/// Recovers a rational from its residues. The single-prime reconstruction is
/// tried first and accepted only if every other residue agrees with it.
pub(crate) fn reconstruct(residues: &[(u64, u64)]) -> Option<Scalar> {
    if residues.iter().all(|&(r, _)| r == 0) {
        return Some(Scalar::zero());
    }
    let (r0, p0) = residues[0];
    if let Some((a, b)) = rational_reconstruct_u64(r0, p0) {
        let consistent = residues[1..].iter().all(|&(r, p)| {
            let a_mod = (a.rem_euclid(p as i64)) as u64;
            a_mod == (b % p) * r % p
        });
        if consistent {
            return Some(Scalar::new(BigInt::from(a), BigInt::from(b)));
        }
    }
    let (x, m) = crt(residues);
    let value = rational_reconstruct_big(&x, &m)?;
    // The reconstruction must reproduce every residue.
    let ok = residues.iter().all(|&(r, p)| scalar_mod(&value, p) == Some(r));
    ok.then_some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_roundtrips() {
        let p = PRIMES[0];
        for a in [1u64, 2, 3, 12345, p - 1] {
            assert_eq!(a * inv_mod(a, p) % p, 1);
        }
    }

    #[test]
    fn small_rationals_reconstruct_from_one_prime() {
        for (n, d) in [(0, 1), (3, 2), (-7, 5), (1, 3), (-32000, 32001)] {
            let x = q(n, d);
            let res: Vec<(u64, u64)> = PRIMES[..2]
                .iter()
                .map(|&p| (scalar_mod(&x, p).unwrap(), p))
                .collect();
            assert_eq!(reconstruct(&res), Some(x));
        }
    }

    #[test]
    fn large_rationals_need_several_primes() {
        let x = Scalar::new(
            BigInt::parse_bytes(b"-123456789012345678901234567", 10).unwrap(),
            BigInt::parse_bytes(b"98765432109876543", 10).unwrap(),
        );
        let res: Vec<(u64, u64)> = PRIMES[..8]
            .iter()
            .map(|&p| (scalar_mod(&x, p).unwrap(), p))
            .collect();
        assert_eq!(reconstruct(&res), Some(x));
    }

    #[test]
    fn denominator_divisible_by_prime_has_no_image() {
        let p = PRIMES[3];
        let x = Scalar::new(BigInt::one(), BigInt::from(p));
        assert_eq!(scalar_mod(&x, p), None);
    }

    #[test]
    fn echelon_detects_dependence() {
        let p = PRIMES[0];
        let mut e = ModEchelon::new(p, 3);
        assert!(e.insert(vec![1, 2, 3], 0));
        assert!(!e.insert(vec![2, 4, 6], 1));
        assert!(e.insert(vec![0, 1, 1], 2));
        let red = e.into_reduced();
        assert_eq!(red.leads, vec![0, 1]);
        assert_eq!(red.rows[0], vec![1, 0, 1]);
        assert_eq!(red.sources, vec![0, 2]);
    }
}

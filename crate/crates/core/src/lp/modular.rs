//! Exact solutions of sparse rational linear systems by elimination modulo
//! word-sized primes and rational reconstruction.
//!
//! The output is a guess: callers check it against the rational system
//! before trusting it. More primes are combined until a guess checks out.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Largest primes below 2^61, 2^62, 2^63 and 2^64.
const PRIMES: [u64; 4] = [2305843009213693951, 4611686018427387847, 9223372036854775783, 18446744073709551557];

/// One equation `Σ coeffs = rhs`.
pub(crate) type Equation = (Vec<(usize, Rational)>, Rational);

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn big_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// `v mod p`, or `None` when the denominator vanishes mod `p`.
fn rational_mod(v: &Rational, p: u64) -> Option<u64> {
    let d = big_mod(&v.denom(), p);
    (d != 0).then(|| mul(big_mod(&v.numer(), p), inv(d, p), p))
}

/// `row -= f · pivot` on sorted sparse rows.
fn axpy(row: &[(usize, u64)], f: u64, pivot: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, sub(0, mul(f, pivot[j].1, p), p)));
            j += 1;
        } else {
            let v = sub(row[i].1, mul(f, pivot[j].1, p), p);
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Some solution mod `p` with free unknowns set to zero. The right-hand
/// side is stored as column `nvars`.
fn solve_mod(eqs: &[Equation], nvars: usize, p: u64) -> Option<Vec<u64>> {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; nvars];
    for (coeffs, rhs) in eqs {
        let mut row: Vec<(usize, u64)> = Vec::with_capacity(coeffs.len() + 1);
        for (j, a) in coeffs {
            let v = rational_mod(a, p)?;
            if v != 0 {
                row.push((*j, v));
            }
        }
        row.sort_unstable_by_key(|e| e.0);
        row.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = add(a.1, b.1, p);
                true
            } else {
                false
            }
        });
        row.retain(|e| e.1 != 0);
        let r = rational_mod(rhs, p)?;
        if r != 0 {
            row.push((nvars, r));
        }
        loop {
            match row.first() {
                None => break,
                Some(&(c, _)) if c == nvars => return None,
                Some(&(c, v)) => match &pivots[c] {
                    Some(pv) => row = axpy(&row, v, pv, p),
                    None => {
                        let s = inv(v, p);
                        pivots[c] = Some(row.iter().map(|&(j, x)| (j, mul(x, s, p))).collect());
                        break;
                    }
                },
            }
        }
    }
    let mut x = vec![0u64; nvars];
    for c in (0..nvars).rev() {
        if let Some(pv) = &pivots[c] {
            let mut v = 0;
            for &(j, a) in &pv[1..] {
                if j == nvars {
                    v = add(v, a, p);
                } else {
                    v = sub(v, mul(a, x[j], p), p);
                }
            }
            x[c] = v;
        }
    }
    Some(x)
}

/// The fraction `r/s` with `r ≡ u·s (mod m)` and `|r|, s ≤ √(m/2)`.
fn reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (s0, s1) = (s1.clone(), &s0 - &q * &s1);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    let (num, den) = if s1.sign() == Sign::Minus { (-r1, -s1) } else { (r1, s1) };
    Some(Rational::from_big(num_rational::BigRational::new(num, den)))
}

fn satisfies(eqs: &[Equation], x: &[Rational]) -> bool {
    eqs.iter().all(|(coeffs, rhs)| coeffs.iter().map(|(j, a)| a * &x[*j]).sum::<Rational>() == *rhs)
}

/// A rational solution of `eqs`, checked exactly, or `None` when the
/// system looks inconsistent or the entries outgrow the primes.
pub(crate) fn solve_rational(eqs: &[Equation], nvars: usize) -> Option<Vec<Rational>> {
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); nvars];
    for &p in &PRIMES {
        let x = solve_mod(eqs, nvars, p)?;
        let pb = BigInt::from(p);
        // Chinese remaindering of the new residues into the running ones.
        let m_inv = BigInt::from(inv(big_mod(&modulus, p), p));
        for (acc, &xi) in residues.iter_mut().zip(&x) {
            let diff = (BigInt::from(xi) - &*acc).mod_floor(&pb);
            *acc += &modulus * ((diff * &m_inv).mod_floor(&pb));
        }
        modulus *= &pb;
        let guess: Option<Vec<Rational>> = residues.iter().map(|u| reconstruct(u, &modulus)).collect();
        if let Some(g) = guess {
            if satisfies(eqs, &g) {
                return Some(g);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn small_system() {
        // x + y = 1, x − y = 1/3.
        let eqs = vec![(vec![(0, q(1, 1)), (1, q(1, 1))], q(1, 1)), (vec![(0, q(1, 1)), (1, q(-1, 1))], q(1, 3))];
        assert_eq!(solve_rational(&eqs, 2).unwrap(), vec![q(2, 3), q(1, 3)]);
    }

    #[test]
    fn redundant_and_inconsistent() {
        let mut eqs = vec![(vec![(0, q(2, 7))], q(1, 5)), (vec![(0, q(4, 7))], q(2, 5))];
        assert_eq!(solve_rational(&eqs, 1).unwrap(), vec![q(7, 10)]);
        eqs.push((vec![(0, q(1, 1))], q(1, 1)));
        assert_eq!(solve_rational(&eqs, 1), None);
    }

    #[test]
    fn large_denominators_need_several_primes() {
        let big = Rational::from_big(num_rational::BigRational::new(
            BigInt::from(3u64).pow(70u32),
            BigInt::from(7u64).pow(40u32),
        ));
        let eqs = vec![(vec![(0, q(1, 1))], big.clone())];
        assert_eq!(solve_rational(&eqs, 1).unwrap(), vec![big]);
    }

    #[test]
    fn reconstruction_of_negative_fraction() {
        let p = BigInt::from(PRIMES[0]);
        let u = BigInt::from(rational_mod(&q(-5, 12), PRIMES[0]).unwrap());
        assert_eq!(reconstruct(&u, &p).unwrap(), q(-5, 12));
    }
}

//! Arithmetic in GF(p^e).
//!
//! Elements are residues of GF(p)[x] modulo a fixed monic irreducible
//! polynomial of degree e. The modulus is chosen deterministically: the
//! lexicographically least irreducible candidate, comparing coefficient
//! vectors low-degree-first, so two runs (or two implementations) agree on
//! every element index.
//!
//! Publicly an element is a dense coefficient vector ([`Fe`]); internally
//! the field keeps full Cayley tables and hands out compact indices
//! ([`El`], the integer Σ cᵢ·pⁱ that also serializes into reports). Fields
//! here are tiny (q ≤ 81 in every verification run), so tables cost
//! nothing and keep the geometry layers allocation-free.

use crate::{Error, Result};

/// Compact element handle: the index Σ cᵢ·pⁱ of a residue, 0 ≤ index < q.
pub type El = u8;

/// Largest supported field size; indices must fit in [`El`].
pub const MAX_Q: u64 = 256;

/// Dense coefficient view of a field element, low degree first, length e.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fe {
    pub coeffs: Vec<u64>,
}

/// A finite field GF(p^e) with precomputed operation tables.
#[derive(Clone)]
pub struct Field {
    p: u64,
    e: usize,
    q: u64,
    modulus: Vec<u64>,
    add: Vec<El>,
    mul: Vec<El>,
    neg: Vec<El>,
    inv: Vec<El>,
    frob1: Vec<El>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds GF(p^e) with the canonical least modulus.
    ///
    /// # Errors
    /// Rejects non-prime p, zero degree, and q > [`MAX_Q`].
    pub fn new(p: u64, e: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::DegreeZero);
        }
        let q = p.checked_pow(e as u32).unwrap_or(u64::MAX);
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = least_irreducible(p, e);
        let qz = q as usize;

        let mut add = vec![0 as El; qz * qz];
        let mut mul = vec![0 as El; qz * qz];
        let mut neg = vec![0 as El; qz];
        for a in 0..q {
            let ca = digits(a, p, e);
            let cn: Vec<u64> = ca.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = pack(&cn, p) as El;
            for b in a..q {
                let cb = digits(b, p, e);
                let cs: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                let s = pack(&cs, p) as El;
                add[(a * q + b) as usize] = s;
                add[(b * q + a) as usize] = s;
                let prod = poly_rem(&poly_mul(&ca, &cb, p), &modulus, p);
                let m = pack(&prod, p) as El;
                mul[(a * q + b) as usize] = m;
                mul[(b * q + a) as usize] = m;
            }
        }

        let mut inv = vec![0 as El; qz];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as El;
                    break;
                }
            }
            debug_assert!(inv[a as usize] != 0, "no inverse found; modulus reducible?");
        }

        let mut field = Field { p, e, q, modulus, add, mul, neg, inv, frob1: Vec::new() };
        field.frob1 = (0..q).map(|a| field.pow(a as El, p)).collect();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low degree first, length e+1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> El {
        0
    }

    pub fn one(&self) -> El {
        1
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = El> {
        (0..self.q).map(|a| a as El)
    }

    pub fn add(&self, a: El, b: El) -> El {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: El) -> El {
        self.neg[a as usize]
    }

    pub fn mul(&self, a: El, b: El) -> El {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    /// # Errors
    /// Zero has no inverse.
    pub fn inv(&self, a: El) -> Result<El> {
        if a == 0 {
            return Err(Error::ZeroInverse(self.q));
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: El, mut k: u64) -> El {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// a ↦ a^(p^k), the k-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: El, k: usize) -> El {
        let mut x = a;
        for _ in 0..(k % self.e) {
            x = self.frob1[x as usize];
        }
        x
    }

    /// Coefficient view of an element index.
    pub fn fe(&self, a: El) -> Fe {
        Fe { coeffs: digits(a as u64, self.p, self.e) }
    }

    /// Index of a coefficient vector (entries are reduced mod p).
    pub fn index(&self, fe: &Fe) -> Result<El> {
        if fe.coeffs.len() != self.e {
            return Err(Error::FieldMismatch);
        }
        let reduced: Vec<u64> = fe.coeffs.iter().map(|&c| c % self.p).collect();
        Ok(pack(&reduced, self.p) as El)
    }

    /// Exhaustive field-axiom check over all pairs and triples.
    pub fn verify_axioms(&self) -> std::result::Result<(), AxiomFailure> {
        let q = self.q as usize;
        for a in 0..q as u64 {
            let a = a as El;
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(AxiomFailure { law: "identity", witness: vec![a] });
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(AxiomFailure { law: "additive inverse", witness: vec![a] });
            }
            if a != 0 {
                let i = self.inv(a).expect("nonzero");
                if self.mul(a, i) != 1 {
                    return Err(AxiomFailure { law: "multiplicative inverse", witness: vec![a] });
                }
            }
        }
        for a in 0..q as u64 {
            for b in 0..q as u64 {
                let (a, b) = (a as El, b as El);
                if self.add(a, b) != self.add(b, a) {
                    return Err(AxiomFailure { law: "additive commutativity", witness: vec![a, b] });
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(AxiomFailure {
                        law: "multiplicative commutativity",
                        witness: vec![a, b],
                    });
                }
            }
        }
        for a in 0..q as u64 {
            for b in 0..q as u64 {
                for c in 0..q as u64 {
                    let (a, b, c) = (a as El, b as El, c as El);
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(AxiomFailure {
                            law: "additive associativity",
                            witness: vec![a, b, c],
                        });
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(AxiomFailure {
                            law: "multiplicative associativity",
                            witness: vec![a, b, c],
                        });
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(AxiomFailure { law: "distributivity", witness: vec![a, b, c] });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A violated field law together with the offending elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub law: &'static str,
    pub witness: Vec<El>,
}

/// Base-p digits of an index, low place first, fixed width e.
fn digits(mut a: u64, p: u64, e: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(e);
    for _ in 0..e {
        out.push(a % p);
        a /= p;
    }
    out
}

fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of a modulo a monic divisor, trimmed to deg(divisor) coefficients.
fn poly_rem(a: &[u64], divisor: &[u64], p: u64) -> Vec<u64> {
    let d = divisor.len() - 1;
    let mut rem = a.to_vec();
    while rem.len() > d {
        let lead = *rem.last().expect("nonempty");
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + (p - lead % p) % p * c) % p;
            }
        }
        rem.pop();
    }
    rem.resize(d, 0);
    rem
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// True when the monic polynomial has no monic divisor of degree 1..=deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = digits(code, p, d);
            div.push(1);
            if is_zero(&poly_rem(f, &div, p)) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree e over GF(p), low-degree-first order.
fn least_irreducible(p: u64, e: usize) -> Vec<u64> {
    let count = p.pow(e as u32);
    // Candidate ranked by its coefficient tuple (c₀,…,c_{e−1}) compared
    // low-degree-first, so c₀ is the most significant digit of the code.
    for code in 0..count {
        let mut big = digits(code, p, e);
        big.reverse();
        let mut f = big;
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime powers p^e ≤ max as (p, e) pairs, ascending by value.
pub fn prime_powers(max: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for p in 2..=max {
        if !is_prime(p) {
            continue;
        }
        let mut v = p;
        let mut e = 1;
        while v <= max {
            out.push((p, e));
            match v.checked_mul(p) {
                Some(next) => v = next,
                None => break,
            }
            e += 1;
        }
    }
    out.sort_by_key(|&(p, e)| p.pow(e as u32));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_modulus_is_x() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_modulus_and_generator_square() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // g = residue of x has index 2; g·g = g+1 has index 3.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.frobenius(2, 1), 3);
    }

    #[test]
    fn least_moduli_frozen() {
        // Independently derived by listing monic candidates in
        // low-degree-first order and root/divisor scanning by hand.
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]); // x²+1
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]); // x³+x²+1
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]); // x⁴+x³+1
    }

    #[test]
    fn gf9_modulus_is_least_by_root_scan() {
        // Oracle: over GF(3), a quadratic is irreducible iff it has no root.
        // Scan the 9 monic quadratics in canonical order; the production
        // modulus must be the first rootless one.
        let mut first = None;
        'outer: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                let has_root = (0..3u64).any(|x| (x * x + c1 * x + c0) % 3 == 0);
                if !has_root {
                    first = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(Field::new(3, 2).unwrap().modulus(), first.unwrap().as_slice());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::DegreeZero);
        assert!(Field::new(2, 9).is_err());
    }

    #[test]
    fn inverse_of_zero_reported() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.inv(0).unwrap_err(), Error::ZeroInverse(5));
    }

    #[test]
    fn gf9_frobenius_is_additive() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let lhs = f.pow(f.add(a, b), 3);
                let rhs = f.add(f.pow(a, 3), f.pow(b, 3));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gf16_frobenius_composition() {
        let f = Field::new(2, 4).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(a, 1), 1), f.frobenius(a, 2));
            assert_eq!(f.frobenius(a, 4), a);
        }
    }

    #[test]
    fn frobenius_order_divides_degree() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 4)] {
            let f = Field::new(p, e).unwrap();
            // Order of frobenius(·,1) as a permutation divides e.
            let mut order = 1;
            let mut current: Vec<El> = f.elements().map(|a| f.frobenius(a, 1)).collect();
            while current.iter().enumerate().any(|(i, &x)| x != i as El) {
                current = current.iter().map(|&a| f.frobenius(a, 1)).collect();
                order += 1;
                assert!(order <= e);
            }
            assert_eq!(e % order, 0);
        }
    }

    #[test]
    fn axioms_hold_up_to_81() {
        for (p, e) in prime_powers(81) {
            let f = Field::new(p, e).unwrap();
            assert!(f.verify_axioms().is_ok(), "axioms failed in GF({})", f.q());
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.index(&f.fe(a)).unwrap(), a);
        }
    }

    #[test]
    fn prime_power_list() {
        let pp = prime_powers(16);
        assert_eq!(pp, vec![(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]);
    }
}

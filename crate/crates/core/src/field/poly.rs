//! Dense polynomials over the prime field GF(q), lowest coefficient first.
//!
//! These helpers back modulus selection (irreducibility testing) and
//! inversion in the extension field. They are not part of the public API.

pub(crate) fn mul_mod_q(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub(crate) fn pow_mod_q(mut base: u32, mut exp: u64, q: u32) -> u32 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_q(acc, base, q);
        }
        base = mul_mod_q(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse in GF(q); `a` must be nonzero mod q.
pub(crate) fn inv_mod_q(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    pow_mod_q(a, q as u64 - 2, q)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(out)
}

fn mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % q as u64;
        }
    }
    trim(acc.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn div_rem(a: &[u32], b: &[u32], q: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv_mod_q(*b.last().unwrap(), q);
    let mut quot = vec![0u32; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = mul_mod_q(*rem.last().unwrap(), lead_inv, q);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let t = mul_mod_q(c, bi, q);
            rem[shift + i] = (rem[shift + i] + q - t) % q;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn rem(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    div_rem(a, b, q).1
}

pub(crate) fn mul_rem(a: &[u32], b: &[u32], modulus: &[u32], q: u32) -> Vec<u32> {
    rem(&mul(a, b, q), modulus, q)
}

pub(crate) fn pow_rem(base: &[u32], mut exp: u64, modulus: &[u32], q: u32) -> Vec<u32> {
    let mut acc = rem(&[1], modulus, q);
    let mut base = rem(base, modulus, q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_rem(&acc, &base, modulus, q);
        }
        base = mul_rem(&base, &base, modulus, q);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm.
pub(crate) fn inv_rem(a: &[u32], modulus: &[u32], q: u32) -> Option<Vec<u32>> {
    let (mut r0, mut r1) = (trim(modulus.to_vec()), rem(a, modulus, q));
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quot, r2) = div_rem(&r0, &r1, q);
        let s2 = sub(&s0, &mul(&quot, &s1, q), q);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant iff gcd(a, modulus) = 1
    if r0.len() != 1 {
        return None;
    }
    let scale = inv_mod_q(r0[0], q);
    Some(trim(s0.iter().map(|&c| mul_mod_q(c, scale, q)).collect()))
}

/// Rabin's test: a monic `f` of degree p is irreducible over GF(q) iff
/// x^(q^p) = x mod f and gcd(x^(q^(p/r)) - x, f) = 1 for every prime r | p.
pub(crate) fn is_irreducible(f: &[u32], q: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let p = f.len() - 1;
    if p == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob_powers[j] = x^(q^j) mod f
    let mut frob_powers = Vec::with_capacity(p + 1);
    let mut cur = rem(&x, &f, q);
    frob_powers.push(cur.clone());
    for _ in 0..p {
        cur = pow_rem(&cur, q as u64, &f, q);
        frob_powers.push(cur.clone());
    }
    if frob_powers[p] != rem(&x, &f, q) {
        return false;
    }
    prime_factors(p).into_iter().all(|r| {
        let h = sub(&frob_powers[p / r], &x, q);
        gcd(&h, &f, q).len() == 1
    })
}

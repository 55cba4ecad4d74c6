//! Dense polynomials over F_p, lowest coefficient first, no trailing zeros.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` by a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = mul_mod(r[d], lead_inv, p);
        for i in 0..=dm {
            let s = d - dm + i;
            r[s] = (r[s] + p - mul_mod(c, m[i], p)) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^e) mod m`.
fn frobenius_power_of_x(m: &[u64], p: u64, e: u32) -> Poly {
    let mut x = rem(&[0, 1], m, p);
    for _ in 0..e {
        // raise to the p-th power by square-and-multiply
        let mut acc: Poly = vec![1];
        let mut base = x.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            k >>= 1;
        }
        x = acc;
    }
    x
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
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

/// Rabin's irreducibility test for a monic `m` of degree `k ≥ 1`.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = (m.len() - 1) as u64;
    if k == 1 {
        return true;
    }
    // both sides already reduced, since k ≥ 2
    if !sub(&frobenius_power_of_x(m, p, k as u32), &[0, 1], p).is_empty() {
        return false;
    }
    prime_factors(k).into_iter().all(|r| {
        let h = sub(&frobenius_power_of_x(m, p, (k / r) as u32), &[0, 1], p);
        gcd(m, &h, p).len() == 1
    })
}

//! Structure-blind reference implementations on machine integers: trial
//! division, gcd counting, and plain divisor sums. Nothing here touches the
//! library's factorization, catalog, or transform code.

#![allow(dead_code)]

use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n % p == 0 {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn mu(n: u64) -> i128 {
    let f = factor(n);
    if f.iter().any(|&(_, a)| a > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn phi(n: u64) -> i128 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as i128
}

pub fn omega(n: u64) -> i128 {
    factor(n).len() as i128
}

pub fn big_omega(n: u64) -> i128 {
    factor(n).iter().map(|&(_, a)| a as i128).sum()
}

pub fn sigma(k: u32, n: u64) -> i128 {
    divisors(n).iter().map(|&d| (d as i128).pow(k)).sum()
}

pub fn liouville(n: u64) -> i128 {
    if big_omega(n) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Catalog values by name, computed from definitions.
pub fn by_name(name: &str, n: u64) -> i128 {
    match name {
        "eps" => (n == 1) as i128,
        "one" => 1,
        "id" => n as i128,
        "mu" => mu(n),
        "phi" => phi(n),
        "omega" => omega(n),
        "big_omega" => big_omega(n),
        "liouville" => liouville(n),
        "sigma_0" => sigma(0, n),
        "sigma_1" => sigma(1, n),
        "sigma_2" => sigma(2, n),
        "sopfr" => factor(n).iter().map(|&(p, a)| (p * a as u64) as i128).sum(),
        other => panic!("no oracle for {other}"),
    }
}

/// `Φ_f(n)` by peeling one prime power at a time with
/// `Φ(p^a·r) = p^a·Φ(r) + r·f(p^a)`, `Φ(1) = 0`.
pub fn transform(f: &dyn Fn(u64) -> i128, n: u64) -> i128 {
    let Some(&(p, a)) = factor(n).first() else {
        return 0;
    };
    let q = p.pow(a);
    let r = n / q;
    q as i128 * transform(f, r) + r as i128 * f(q)
}

pub fn convolve(f: &dyn Fn(u64) -> i128, g: &dyn Fn(u64) -> i128, n: u64) -> i128 {
    divisors(n).iter().map(|&d| f(d) * g(n / d)).sum()
}

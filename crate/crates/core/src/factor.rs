//! Prime factorization: single integers by trial division with a Pollard-rho
//! fallback, and whole ranges through a smallest-prime-factor sieve.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division covers every prime below this limit before rho takes over.
pub const TRIAL_LIMIT: u32 = 1_000_000;

/// A prime power `p^alpha` with `alpha >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u64,
    alpha: u32,
}

impl PrimePower {
    pub fn new(p: u64, alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::Domain(format!("exponent of {p} must be at least 1")));
        }
        if !is_prime_u64(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(PrimePower { p, alpha })
    }

    pub(crate) fn new_unchecked(p: u64, alpha: u32) -> Self {
        debug_assert!(alpha >= 1);
        PrimePower { p, alpha }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn value(&self) -> BigUint {
        BigUint::from(self.p).pow(self.alpha)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.alpha)
        }
    }
}

/// Canonical factorization of a positive integer: prime powers sorted by
/// strictly increasing prime, whose product is `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization { n: BigUint::one(), factors: Vec::new() }
    }

    /// The factorization of the single prime power `p^alpha`.
    pub fn prime_power(p: u64, alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Ok(Factorization::one());
        }
        Ok(Factorization::from_sorted(vec![PrimePower::new(p, alpha)?]))
    }

    pub(crate) fn prime_power_unchecked(p: u64, alpha: u32) -> Self {
        if alpha == 0 {
            Factorization::one()
        } else {
            Factorization::from_sorted(vec![PrimePower::new_unchecked(p, alpha)])
        }
    }

    /// Builds a factorization from `(p, alpha)` pairs in any order. Zero
    /// exponents are dropped; repeated primes and non-primes are rejected.
    pub fn from_prime_powers<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u32)>,
    {
        let mut factors = Vec::new();
        for (p, alpha) in pairs {
            if alpha > 0 {
                factors.push(PrimePower::new(p, alpha)?);
            }
        }
        factors.sort();
        if factors.windows(2).any(|w| w[0].p == w[1].p) {
            return Err(Error::Domain("repeated prime in factorization".into()));
        }
        Ok(Factorization::from_sorted(factors))
    }

    /// `factors` must already be canonical.
    pub(crate) fn from_sorted(factors: Vec<PrimePower>) -> Self {
        let n = factors.iter().fold(BigUint::one(), |acc, pp| acc * pp.value());
        Factorization { n, factors }
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.n.to_u64()
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|pp| pp.alpha as u64).sum()
    }

    /// The exponent of `p` in `n`, zero when `p` does not divide `n`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.part(p).map_or(0, |pp| pp.alpha)
    }

    /// The exact prime-power part `p^alpha || n`, if `p | n`.
    pub fn part(&self, p: u64) -> Option<PrimePower> {
        self.factors.binary_search_by_key(&p, |pp| pp.p).ok().map(|i| self.factors[i])
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|pp| pp.alpha == 1)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// `n / p^alpha` where `p^alpha || n`; `n` itself when `p` does not divide it.
    pub fn without(&self, p: u64) -> Factorization {
        Factorization::from_sorted(self.factors.iter().copied().filter(|pp| pp.p != p).collect())
    }

    /// Splits off the smallest prime-power part. The two pieces are coprime.
    pub fn split_first(&self) -> Option<(PrimePower, Factorization)> {
        let (first, rest) = self.factors.split_first()?;
        Some((*first, Factorization::from_sorted(rest.to_vec())))
    }

    pub fn is_coprime_to(&self, other: &Factorization) -> bool {
        self.factors.iter().all(|pp| other.part(pp.p).is_none())
    }

    /// Factorization of the product `self * other`.
    pub fn multiply(&self, other: &Factorization) -> Factorization {
        let found = self.factors.iter().chain(&other.factors).map(|pp| (pp.p, pp.alpha)).collect();
        merge_found(found)
    }

    /// Number of divisors, `prod (alpha_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|pp| pp.alpha as u64 + 1).product()
    }

    /// Every factorized pair `(d, n/d)` with `d | n`, in mixed-radix order of
    /// the exponent vector of `d`.
    pub fn divisor_pairs(&self) -> DivisorPairs<'_> {
        DivisorPairs { base: self, exps: vec![0; self.factors.len()], done: false }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{pp}")?;
        }
        Ok(())
    }
}

/// Iterator over complementary divisor pairs; see [`Factorization::divisor_pairs`].
pub struct DivisorPairs<'a> {
    base: &'a Factorization,
    exps: Vec<u32>,
    done: bool,
}

impl Iterator for DivisorPairs<'_> {
    type Item = (Factorization, Factorization);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut d = Vec::new();
        let mut rest = Vec::new();
        for (pp, &e) in self.base.factors.iter().zip(&self.exps) {
            if e > 0 {
                d.push(PrimePower::new_unchecked(pp.p, e));
            }
            if e < pp.alpha {
                rest.push(PrimePower::new_unchecked(pp.p, pp.alpha - e));
            }
        }
        // advance the mixed-radix counter
        self.done = true;
        for (e, pp) in self.exps.iter_mut().zip(&self.base.factors) {
            if *e < pp.alpha {
                *e += 1;
                self.done = false;
                break;
            }
            *e = 0;
        }
        Some((Factorization::from_sorted(d), Factorization::from_sorted(rest)))
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(f: &Factorization) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = f.divisor_pairs().map(|(d, _)| d.n).collect();
    out.sort();
    out
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Canonical factorization of `n >= 1`.
///
/// Trial division by every prime below [`TRIAL_LIMIT`] settles all
/// `n < 10^12`; larger cofactors go through Miller-Rabin and Pollard-Brent
/// rho. Prime factors must fit in 64 bits.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    if let Some(small) = n.to_u64() {
        return factorize_u64(small);
    }
    let mut rem = n.clone();
    let mut found: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rem {
            break;
        }
        let mut alpha = 0;
        loop {
            let (q, r) = rem.div_rem(&p_big);
            if !r.is_zero() {
                break;
            }
            rem = q;
            alpha += 1;
        }
        if alpha > 0 {
            found.push((p as u64, alpha));
        }
        if let Some(small) = rem.to_u64() {
            let tail = factorize_u64(small)?;
            found.extend(tail.factors.iter().map(|pp| (pp.p, pp.alpha)));
            rem = BigUint::one();
            break;
        }
    }
    if !rem.is_one() {
        let mut primes = Vec::new();
        split_large(rem, &mut primes)?;
        for p in primes {
            found.push((p, 1));
        }
    }
    Ok(merge_found(found))
}

/// [`factorize`] for machine-word `n`.
pub fn factorize_u64(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let mut rem = n;
    let mut found = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rem {
            break;
        }
        if rem % p == 0 {
            let mut alpha = 0;
            while rem % p == 0 {
                rem /= p;
                alpha += 1;
            }
            found.push((p, alpha));
        }
    }
    if rem > 1 {
        let limit = TRIAL_LIMIT as u64;
        if rem < limit * limit || is_prime_u64(rem) {
            found.push((rem, 1));
        } else {
            let mut primes = Vec::new();
            split_large(BigUint::from(rem), &mut primes)?;
            found.extend(primes.into_iter().map(|p| (p, 1)));
        }
    }
    Ok(merge_found(found))
}

fn merge_found(mut found: Vec<(u64, u32)>) -> Factorization {
    found.sort_unstable();
    let mut factors: Vec<PrimePower> = Vec::with_capacity(found.len());
    for (p, alpha) in found {
        match factors.last_mut() {
            Some(last) if last.p == p => last.alpha += alpha,
            _ => factors.push(PrimePower::new_unchecked(p, alpha)),
        }
    }
    Factorization::from_sorted(factors)
}

/// Splits a cofactor with no prime factor below [`TRIAL_LIMIT`] into primes,
/// pushing each prime once per multiplicity.
fn split_large(n: BigUint, out: &mut Vec<u64>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        let p = n.to_u64().ok_or_else(|| Error::Domain(format!("prime factor {n} does not fit in 64 bits")))?;
        out.push(p);
        return Ok(());
    }
    let d = pollard_brent(&n)?;
    let cofactor = &n / &d;
    split_large(d, out)?;
    split_large(cofactor, out)
}

fn pollard_brent(n: &BigUint) -> Result<BigUint> {
    const BATCH: usize = 128;
    const MAX_STEPS: usize = 1 << 22;
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigUint::from(2u32), 1usize, BigUint::one());
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigUint::one();
        let mut steps = 0;
        while g.is_one() && steps < MAX_STEPS {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            steps += r;
            r *= 2;
        }
        if &g == n {
            // batch overshot; walk back one step at a time
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Ok(g);
        }
    }
    Err(Error::Resource(format!("Pollard rho found no factor of {n}")))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over the first twelve prime bases: deterministic below
/// 3.3·10^24, probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest-prime-factor table over `0..=bound`. Immutable once built.
#[derive(Clone, Debug)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    /// Sieve of Eratosthenes recording the first prime to strike each entry,
    /// `O(N log log N)`.
    pub fn build(bound: u64) -> Result<SpfTable> {
        if bound < 2 {
            return Err(Error::Domain(format!("sieve bound must be at least 2, got {bound}")));
        }
        if bound >= u32::MAX as u64 {
            return Err(Error::Resource(format!("sieve bound {bound} exceeds 32-bit table entries")));
        }
        let len = bound as usize + 1;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(len).map_err(|e| Error::Resource(format!("sieve of {bound} entries: {e}")))?;
        spf.resize(len, 0);
        for i in 2..len {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let mut j = i.saturating_mul(i);
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        Ok(SpfTable { spf })
    }

    pub fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Smallest prime factor of `k` for `2 <= k <= bound`.
    pub fn spf(&self, k: u64) -> Option<u64> {
        if k < 2 {
            return None;
        }
        self.spf.get(k as usize).map(|&p| p as u64)
    }

    pub fn is_prime(&self, k: u64) -> bool {
        self.spf(k) == Some(k)
    }

    /// Factorization of `1 <= n <= bound` by repeated smallest-factor lookup.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        if n > self.bound() {
            return Err(Error::OutOfRange { n, bound: self.bound() });
        }
        let mut rem = n as usize;
        let mut factors: Vec<PrimePower> = Vec::new();
        while rem > 1 {
            let p = self.spf[rem];
            let mut alpha = 0;
            while rem % p as usize == 0 {
                rem /= p as usize;
                alpha += 1;
            }
            factors.push(PrimePower::new_unchecked(p as u64, alpha));
        }
        Ok(Factorization::from_sorted(factors))
    }

    /// Primes up to the bound, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.bound()).filter(|&k| self.is_prime(k))
    }
}

/// `build_spf`: sieve up to `bound`.
pub fn build_spf(bound: u64) -> Result<SpfTable> {
    SpfTable::build(bound)
}

/// `factorize_batch`: factorization through a prebuilt table.
pub fn factorize_batch(table: &SpfTable, n: u64) -> Result<Factorization> {
    table.factorize(n)
}

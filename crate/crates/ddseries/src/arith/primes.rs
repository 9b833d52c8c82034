/// Primes `p ≤ b` in increasing order (sieve of Eratosthenes).
pub fn primes_up_to(b: u64) -> Vec<u64> {
    if b < 2 {
        return Vec::new();
    }
    let n = b as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(if n > 10 {
        (1.3 * n as f64 / (n as f64).ln()) as usize
    } else {
        4
    });
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Distinct prime divisors by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `sf[n]` is true iff `n` is squarefree, for `0 < n ≤ b` (`sf[0]` is false).
pub fn squarefree_sieve(b: u64) -> Vec<bool> {
    let n = b as usize;
    let mut sf = vec![true; n + 1];
    sf[0] = false;
    let mut p = 2usize;
    while p * p <= n {
        let q = p * p;
        let mut j = q;
        while j <= n {
            sf[j] = false;
            j += q;
        }
        p += 1;
    }
    sf
}

/// Smallest-prime-factor table.
#[derive(Clone, Debug)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(b: u64) -> Self {
        let n = b as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfTable { spf }
    }

    pub fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf(n) == n
    }

    /// Prime factorization as `(p, e)` pairs with increasing `p`.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf(n);
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

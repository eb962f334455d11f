//! Euler's totient, by trial division for single values and by sieve for
//! scans.

/// phi(n) via trial-division factorization. Requires `n >= 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "totient needs a positive argument");
    let mut remaining = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= remaining {
        if remaining % p == 0 {
            while remaining % p == 0 {
                remaining /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if remaining > 1 {
        result -= result / remaining;
    }
    result
}

/// All totient values `phi(0..=limit)` in one pass (`phi(0)` is set to 0).
pub fn totient_sieve(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            let mut m = p;
            while m <= limit {
                phi[m] -= phi[m] / p as u64;
                m += p;
            }
        }
    }
    if limit >= 1 {
        phi[0] = 0;
    }
    phi
}

/// Every `n <= bound` with `phi(n) = 2`, in increasing order.
pub fn phi_equals_two_solutions(bound: usize) -> Vec<u64> {
    totient_sieve(bound)
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == 2)
        .map(|(n, _)| n as u64)
        .collect()
}

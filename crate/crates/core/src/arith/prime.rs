//! Deterministic primality and general factorization of `u64` values.
//!
//! Small factors come out by trial division; what remains is split with
//! Brent's variant of Pollard's rho, with Miller-Rabin deciding when a
//! cofactor is prime. The witness set below is deterministic for all 64-bit
//! inputs.

use num_integer::Integer;

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial division handles every factor below this bound.
const TRIAL_BOUND: u64 = 1 << 10;

#[inline]
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

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
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

/// Finds a nontrivial factor of an odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    for c in 1.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut g = 1;
        let mut r = 1u64;
        let mut q = 1u64;
        const BATCH: u64 = 64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // The batched product collapsed; step back one at a time.
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("some rho polynomial always splits a composite")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization of `n` as ascending `(prime, exponent)` pairs.
/// Returns an empty list for `n <= 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    let push = |out: &mut Vec<(u64, u32)>, p: u64| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };
    while n % 2 == 0 {
        push(&mut out, 2);
        n /= 2;
    }
    let mut p = 3;
    while p < TRIAL_BOUND && p * p <= n {
        while n % p == 0 {
            push(&mut out, p);
            n /= p;
        }
        p += 2;
    }
    if n == 1 {
        return out;
    }
    if p * p > n {
        push(&mut out, n);
        return out;
    }
    let mut rest = Vec::new();
    split_into(n, &mut rest);
    rest.sort_unstable();
    for q in rest {
        push(&mut out, q);
    }
    out
}

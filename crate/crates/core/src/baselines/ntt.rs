//! Cyclic polynomial multiplication mod (x^r - 1, n) on dense u64
//! coefficient vectors.
//!
//! The congruence loop of the AKS test squares degree-r polynomials tens of
//! thousands of times, so the convolution runs as a number-theoretic
//! transform over two fixed 62-bit primes with the exact product recovered by
//! CRT and reduced mod n. A schoolbook path remains for small vectors and as
//! the independent check the NTT is tested against.

use crate::numtheory::powmod_u64;

/// 29 * 2^57 + 1, primitive root 3.
const P1: u64 = 4179340454199820289;
const G1: u64 = 3;
/// 27 * 2^56 + 1, primitive root 5.
const P2: u64 = 1945555039024054273;
const G2: u64 = 5;

/// Montgomery arithmetic for a fixed odd modulus.
#[derive(Debug, Clone, Copy)]
struct Mont {
    p: u64,
    /// -p^-1 mod 2^64
    ninv: u64,
    /// 2^128 mod p
    r2: u64,
}

// `to_mont`/`from_mont` convert a value into and out of the Montgomery
// domain; the conventional names stay despite taking &self.
#[allow(clippy::wrong_self_convention)]
impl Mont {
    fn new(p: u64) -> Self {
        // Newton iteration for p^-1 mod 2^64.
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        debug_assert_eq!(p.wrapping_mul(inv), 1);
        let r = (u128::from(u64::MAX) + 1) % u128::from(p);
        let r2 = (r * r % u128::from(p)) as u64;
        Mont { p, ninv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let t2 = ((t + u128::from(m) * u128::from(self.p)) >> 64) as u64;
        if t2 >= self.p {
            t2 - self.p
        } else {
            t2
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(u128::from(a) * u128::from(b))
    }

    #[inline]
    fn to_mont(&self, x: u64) -> u64 {
        self.mul(x, self.r2)
    }

    #[inline]
    fn from_mont(&self, x: u64) -> u64 {
        self.redc(u128::from(x))
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        // base in Montgomery form.
        let mut acc = self.to_mont(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Transform plan for one prime: per-level twiddle tables for a DIF forward
/// pass (natural -> bit-reversed) and a DIT inverse pass (bit-reversed ->
/// natural); convolution never needs the permutation itself.
struct NttPlan {
    mont: Mont,
    len: usize,
    forward: Vec<u64>,
    inverse: Vec<u64>,
    len_inv: u64,
}

impl NttPlan {
    fn new(p: u64, g: u64, len: usize) -> Self {
        debug_assert!(len.is_power_of_two());
        let mont = Mont::new(p);
        let root = powmod_u64(g, (p - 1) / len as u64, p);
        let root_m = mont.to_mont(root);
        let root_inv_m = mont.pow(root_m, p - 2);
        // Level with half-size h uses omega^(len/(2h))^i for i < h; store the
        // tables back to back, largest h first (total len - 1 entries).
        let mut forward = Vec::with_capacity(len);
        let mut inverse = Vec::with_capacity(len);
        let mut h = len / 2;
        while h >= 1 {
            let step = mont.pow(root_m, (len / (2 * h)) as u64);
            let step_inv = mont.pow(root_inv_m, (len / (2 * h)) as u64);
            let mut w = mont.to_mont(1);
            let mut wi = mont.to_mont(1);
            for _ in 0..h {
                forward.push(w);
                inverse.push(wi);
                w = mont.mul(w, step);
                wi = mont.mul(wi, step_inv);
            }
            h /= 2;
        }
        let len_inv = {
            let len_m = mont.to_mont(len as u64);
            mont.pow(len_m, p - 2)
        };
        NttPlan { mont, len, forward, inverse, len_inv }
    }

    /// DIF forward, in place, Montgomery domain, bit-reversed output order.
    fn forward(&self, a: &mut [u64]) {
        let m = &self.mont;
        let mut h = self.len / 2;
        let mut table = 0usize;
        while h >= 1 {
            let tw = &self.forward[table..table + h];
            for start in (0..self.len).step_by(2 * h) {
                for i in 0..h {
                    let u = a[start + i];
                    let v = a[start + h + i];
                    a[start + i] = m.add(u, v);
                    a[start + h + i] = m.mul(m.sub(u, v), tw[i]);
                }
            }
            table += h;
            h /= 2;
        }
    }

    /// DIT inverse, in place, Montgomery domain, natural output order.
    fn inverse(&self, a: &mut [u64]) {
        let m = &self.mont;
        let mut h = 1usize;
        // Tables were stored largest h first; walk them backwards.
        let mut offsets = Vec::new();
        let mut hh = self.len / 2;
        let mut off = 0usize;
        while hh >= 1 {
            offsets.push((hh, off));
            off += hh;
            hh /= 2;
        }
        for &(level_h, table) in offsets.iter().rev() {
            let h_now = h;
            debug_assert_eq!(level_h, h_now);
            let tw = &self.inverse[table..table + h_now];
            for start in (0..self.len).step_by(2 * h_now) {
                for i in 0..h_now {
                    let u = a[start + i];
                    let v = m.mul(a[start + h_now + i], tw[i]);
                    a[start + i] = m.add(u, v);
                    a[start + h_now + i] = m.sub(u, v);
                }
            }
            h *= 2;
        }
        for x in a.iter_mut() {
            *x = m.mul(*x, self.len_inv);
        }
    }

    /// Linear convolution values mod p for inputs already padded to len.
    fn convolve(&self, a: &[u64], b: Option<&[u64]>) -> Vec<u64> {
        let m = &self.mont;
        let mut fa: Vec<u64> = a.iter().map(|&x| m.to_mont(x % m.p)).collect();
        self.forward(&mut fa);
        match b {
            None => {
                for x in fa.iter_mut() {
                    *x = m.mul(*x, *x);
                }
            }
            Some(b) => {
                let mut fb: Vec<u64> = b.iter().map(|&x| m.to_mont(x % m.p)).collect();
                self.forward(&mut fb);
                for (x, y) in fa.iter_mut().zip(fb.iter()) {
                    *x = m.mul(*x, *y);
                }
            }
        }
        self.inverse(&mut fa);
        for x in fa.iter_mut() {
            *x = m.from_mont(*x);
        }
        fa
    }
}

/// Multiplier for length-r vectors with coefficients mod n, working modulo
/// x^r - 1.
pub(crate) struct CyclicMul {
    r: usize,
    n: u64,
    plan: Option<(NttPlan, NttPlan, u64)>, // plans + p1^-1 mod p2
}

/// Schoolbook threshold; below this the quadratic loop beats the transforms.
const SCHOOLBOOK_MAX_R: usize = 64;

impl CyclicMul {
    /// `n` bounds the coefficients; exactness requires r * (n-1)^2 < P1*P2,
    /// which holds whenever n < 2^54 and r <= 2^13 (callers stay far below).
    pub fn new(r: usize, n: u64) -> Self {
        debug_assert!(r >= 1);
        let use_ntt = r > SCHOOLBOOK_MAX_R && {
            let len = (2 * r - 1).next_power_of_two();
            let max_sum = u128::from(r as u64).saturating_mul(u128::from(n - 1).pow(2));
            len <= 1 << 20 && max_sum < u128::from(P1) * u128::from(P2)
        };
        let plan = if use_ntt {
            let len = (2 * r - 1).next_power_of_two();
            let p1_inv_mod_p2 = powmod_u64(P1 % P2, P2 - 2, P2);
            Some((NttPlan::new(P1, G1, len), NttPlan::new(P2, G2, len), p1_inv_mod_p2))
        } else {
            None
        };
        CyclicMul { r, n, plan }
    }

    fn schoolbook(&self, a: &[u64], b: Option<&[u64]>) -> Vec<u64> {
        let r = self.r;
        let n = u128::from(self.n);
        let b = b.unwrap_or(a);
        let mut out = vec![0u128; r];
        // Accumulate into the folded position directly; reduce eagerly only
        // when an addition could overflow.
        let headroom = u128::MAX / 2;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = u128::from(ai);
            for (j, &bj) in b.iter().enumerate() {
                let k = if i + j >= r { i + j - r } else { i + j };
                let term = ai * u128::from(bj);
                out[k] = out[k].wrapping_add(term);
                if out[k] > headroom {
                    out[k] %= n;
                }
            }
        }
        out.into_iter().map(|v| (v % n) as u64).collect()
    }

    fn ntt_mul(&self, a: &[u64], b: Option<&[u64]>) -> Vec<u64> {
        let (plan1, plan2, p1_inv) = self.plan.as_ref().expect("ntt plan");
        let len = plan1.len;
        let mut pa = vec![0u64; len];
        pa[..a.len()].copy_from_slice(a);
        let pb = b.map(|b| {
            let mut pb = vec![0u64; len];
            pb[..b.len()].copy_from_slice(b);
            pb
        });
        let c1 = plan1.convolve(&pa, pb.as_deref());
        let c2 = plan2.convolve(&pa, pb.as_deref());
        let mont2 = Mont::new(P2);
        let mut out = vec![0u64; self.r];
        for k in 0..(2 * self.r - 1).min(len) {
            // CRT: v = c1 + P1 * ((c2 - c1) * P1^-1 mod P2), exact below P1*P2.
            let a1 = c1[k];
            let a2 = c2[k];
            let d = mont2.sub(a2 % P2, a1 % P2);
            let t = mulmod_p2(d, *p1_inv);
            let v = u128::from(a1) + u128::from(P1) * u128::from(t);
            let idx = if k >= self.r { k - self.r } else { k };
            out[idx] = ((u128::from(out[idx]) + v) % u128::from(self.n)) as u64;
        }
        out
    }

    pub fn square(&self, a: &[u64]) -> Vec<u64> {
        debug_assert_eq!(a.len(), self.r);
        if self.plan.is_some() {
            self.ntt_mul(a, None)
        } else {
            self.schoolbook(a, None)
        }
    }

    #[cfg(test)]
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        debug_assert_eq!(a.len(), self.r);
        debug_assert_eq!(b.len(), self.r);
        if self.plan.is_some() {
            self.ntt_mul(a, Some(b))
        } else {
            self.schoolbook(a, Some(b))
        }
    }

    #[cfg(test)]
    pub fn schoolbook_reference(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.schoolbook(a, Some(b))
    }
}

#[inline]
fn mulmod_p2(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(P2)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_roundtrip() {
        let plan = NttPlan::new(P1, G1, 16);
        let m = &plan.mont;
        let data: Vec<u64> = (0..16u64).map(|i| i * i + 1).collect();
        let mut a: Vec<u64> = data.iter().map(|&x| m.to_mont(x)).collect();
        plan.forward(&mut a);
        plan.inverse(&mut a);
        let back: Vec<u64> = a.iter().map(|&x| m.from_mont(x)).collect();
        assert_eq!(back, data);
    }

    #[test]
    fn montgomery_basics() {
        for p in [P1, P2] {
            let m = Mont::new(p);
            assert_eq!(m.from_mont(m.to_mont(12345)), 12345);
            let a = m.to_mont(p - 3);
            let b = m.to_mont(p - 9);
            // (p-3)(p-9) = 27 mod p
            assert_eq!(m.from_mont(m.mul(a, b)), 27 % p);
        }
    }

    #[test]
    fn ntt_matches_schoolbook() {
        // Force an NTT plan (r > threshold), compare against schoolbook.
        let n = 1_000_000_007u64;
        let r = 100usize;
        let cm = CyclicMul::new(r, n);
        assert!(cm.plan.is_some(), "expected NTT plan for r = {r}");
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % n
        };
        for _ in 0..5 {
            let a: Vec<u64> = (0..r).map(|_| next()).collect();
            let b: Vec<u64> = (0..r).map(|_| next()).collect();
            assert_eq!(cm.mul(&a, &b), cm.schoolbook_reference(&a, &b));
            assert_eq!(cm.square(&a), cm.schoolbook_reference(&a, &a));
        }
    }

    #[test]
    fn cyclic_wraparound() {
        // (x^(r-1))^2 = x^(2r-2) = x^(r-2) mod x^r - 1.
        let r = 8usize;
        let cm = CyclicMul::new(r, 97);
        let mut a = vec![0u64; r];
        a[r - 1] = 1;
        let sq = cm.square(&a);
        let mut want = vec![0u64; r];
        want[r - 2] = 1;
        assert_eq!(sq, want);
    }

    #[test]
    fn large_coefficients_stay_exact() {
        // Coefficients near 2^50 exercise the CRT range.
        let n = (1u64 << 50) - 27;
        let r = 80usize;
        let cm = CyclicMul::new(r, n);
        assert!(cm.plan.is_some());
        let a: Vec<u64> = (0..r as u64).map(|i| n - 1 - i * 12345).collect();
        let direct = cm.schoolbook_reference(&a, &a);
        assert_eq!(cm.square(&a), direct);
    }
}

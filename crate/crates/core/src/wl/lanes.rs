//! Counting fingerprints, one tuple per SIMD lane.
//!
//! Tuples sharing all digits but the last form a row. Across a row, the
//! substituted colour `c(t[p/w])` for `p < k-1` is a contiguous run of the
//! colour array and `c(t[k-1/w])` is one value, so a row is hashed
//! lane-parallel with no gathers and no horizontal reductions. Each
//! substitution vector is packed into one word, so the per-vector hash sees
//! it exactly; two additive 64-bit sums give a 128-bit fingerprint.

const LANES: usize = 16;

#[inline(always)]
fn mix(v: u64) -> u64 {
    let mut z = (v ^ 0x243F_6A88_85A3_08D3).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^ (z >> 32)
}

#[inline(always)]
fn second(h: u64) -> u64 {
    h ^ (h >> 23) ^ (h << 41)
}

/// Index of the first tuple of `row` with digit `p` set to `w`, for `p < K-1`,
/// as `(base, stride)`: the tuple with digit `p = w` is `base + w * stride`.
#[inline(always)]
fn column_bases<const K: usize>(row: usize, n: usize) -> [(usize, usize); K] {
    let mut out = [(0usize, 0usize); K];
    let mut stride = n;
    let mut rest = row;
    for p in (0..K.saturating_sub(1)).rev() {
        let d = rest % n;
        rest /= n;
        out[p] = (row * n - d * stride, stride);
        stride *= n;
    }
    out
}

/// Fingerprint of one tuple, straight from the definition.
#[inline(always)]
fn tuple_fp<const K: usize>(side: &[u32], n: usize, bits: u32, row: usize, c: usize) -> u128 {
    let bases = column_bases::<K>(row, n);
    let (mut a, mut b) = (0u64, 0u64);
    for w in 0..n {
        let mut v = 0u64;
        for &(base, stride) in &bases[..K - 1] {
            v = (v << bits) | side[base + w * stride + c] as u64;
        }
        v = (v << bits) | side[row * n + w] as u64;
        let h = mix(v);
        a = a.wrapping_add(h);
        b = b.wrapping_add(second(h));
    }
    ((a as u128) << 64) | b as u128
}

/// Fingerprints of the `LANES` tuples `row*n + start ..`.
#[inline(always)]
fn block<const K: usize>(side: &[u32], n: usize, bits: u32, row: usize, start: usize, out: &mut [u128]) {
    let bases = column_bases::<K>(row, n);
    let mut a = [0u64; LANES];
    let mut b = [0u64; LANES];
    let last_row = &side[row * n..row * n + n];
    for (w, &last) in last_row.iter().enumerate() {
        let mut cols: [&[u32; LANES]; K] = [&[0; LANES]; K];
        for (col, &(base, stride)) in cols.iter_mut().zip(&bases[..K - 1]) {
            let at = base + w * stride + start;
            *col = side[at..at + LANES].try_into().expect("lane block");
        }
        let last = last as u64;
        for j in 0..LANES {
            let mut v = 0u64;
            for col in &cols[..K - 1] {
                v = (v << bits) | col[j] as u64;
            }
            v = (v << bits) | last;
            let h = mix(v);
            a[j] = a[j].wrapping_add(h);
            b[j] = b[j].wrapping_add(second(h));
        }
    }
    for j in 0..LANES {
        out[j] = ((a[j] as u128) << 64) | b[j] as u128;
    }
}

/// Fingerprints of the local tuples `start..end` of one side; tuples whose
/// class has size one get 0.
#[inline(always)]
fn chunk_impl<const K: usize>(side: &[u32], n: usize, class_size: &[u32], bits: u32, start: usize, end: usize) -> Vec<u128> {
    let mut out = vec![0u128; end - start];
    let mut row_buf = vec![0u128; n];
    let single = |t: usize| class_size[side[t] as usize] == 1;
    let (first_row, last_row) = (start / n, (end - 1) / n);
    for row in first_row..=last_row {
        let (lo, hi) = ((row * n).max(start), ((row + 1) * n).min(end));
        if (lo..hi).all(single) {
            continue;
        }
        if n < LANES {
            for t in lo..hi {
                row_buf[t - row * n] = tuple_fp::<K>(side, n, bits, row, t - row * n);
            }
        } else {
            let mut c = 0;
            loop {
                let at = c.min(n - LANES);
                block::<K>(side, n, bits, row, at, &mut row_buf[at..at + LANES]);
                if at + LANES >= n {
                    break;
                }
                c += LANES;
            }
        }
        for t in lo..hi {
            out[t - start] = if single(t) { 0 } else { row_buf[t - row * n] };
        }
    }
    out
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx512f,avx512dq")]
unsafe fn chunk_avx512<const K: usize>(side: &[u32], n: usize, class_size: &[u32], bits: u32, start: usize, end: usize) -> Vec<u128> {
    chunk_impl::<K>(side, n, class_size, bits, start, end)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn chunk_avx2<const K: usize>(side: &[u32], n: usize, class_size: &[u32], bits: u32, start: usize, end: usize) -> Vec<u128> {
    chunk_impl::<K>(side, n, class_size, bits, start, end)
}

fn chunk_dispatch<const K: usize>(side: &[u32], n: usize, class_size: &[u32], bits: u32, start: usize, end: usize) -> Vec<u128> {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx512f") && std::arch::is_x86_feature_detected!("avx512dq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { chunk_avx512::<K>(side, n, class_size, bits, start, end) };
        }
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { chunk_avx2::<K>(side, n, class_size, bits, start, end) };
        }
    }
    chunk_impl::<K>(side, n, class_size, bits, start, end)
}

/// Per-side kernel for one tuple dimension.
pub(super) struct SideKernel<'a> {
    side: &'a [u32],
    n: usize,
    k: usize,
    bits: u32,
}

impl<'a> SideKernel<'a> {
    /// `None` when `k` has no specialised kernel or `k` colour ids of
    /// `bits` bits do not fit one word.
    pub(super) fn new(side: &'a [u32], n: usize, k: usize, bits: u32) -> Option<Self> {
        (bits as usize * k <= 64 && (1..=4).contains(&k) && n > 0).then_some(SideKernel { side, n, k, bits })
    }

    /// Counting fingerprints for local tuples `start..end`.
    pub(super) fn chunk(&self, class_size: &[u32], start: usize, end: usize) -> Vec<u128> {
        if start == end {
            return Vec::new();
        }
        let (side, n, bits) = (self.side, self.n, self.bits);
        match self.k {
            1 => chunk_dispatch::<1>(side, n, class_size, bits, start, end),
            2 => chunk_dispatch::<2>(side, n, class_size, bits, start, end),
            3 => chunk_dispatch::<3>(side, n, class_size, bits, start, end),
            _ => chunk_dispatch::<4>(side, n, class_size, bits, start, end),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Index of `digits` (first digit most significant).
    fn index(d: &[usize], n: usize) -> usize {
        d.iter().fold(0, |acc, &x| acc * n + x)
    }

    fn naive(side: &[u32], n: usize, k: usize, bits: u32, t: usize) -> u128 {
        let mut d = vec![0; k];
        let mut r = t;
        for p in (0..k).rev() {
            d[p] = r % n;
            r /= n;
        }
        let (mut a, mut b) = (0u64, 0u64);
        for w in 0..n {
            let mut v = 0u64;
            for p in 0..k {
                let mut e = d.clone();
                e[p] = w;
                v = (v << bits) | side[index(&e, n)] as u64;
            }
            let h = mix(v);
            a = a.wrapping_add(h);
            b = b.wrapping_add(second(h));
        }
        ((a as u128) << 64) | b as u128
    }

    #[test]
    fn column_bases_substitute_the_right_digit() {
        let n = 5;
        let row = index(&[3, 1], n);
        let bases = column_bases::<3>(row, n);
        for w in 0..n {
            assert_eq!(bases[0].0 + w * bases[0].1, index(&[w, 1, 0], n));
            assert_eq!(bases[1].0 + w * bases[1].1, index(&[3, w, 0], n));
        }
    }

    #[test]
    fn kernel_matches_definition() {
        let mut s = 0x1234_5678u64;
        for (n, k) in [(3usize, 1usize), (7, 2), (17, 2), (20, 3), (5, 3), (16, 3), (9, 4)] {
            let total = n.pow(k as u32);
            let side: Vec<u32> = (0..total)
                .map(|_| {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    (s % 11) as u32
                })
                .collect();
            let bits = 4;
            let kernel = SideKernel::new(&side, n, k, bits).unwrap();
            let sizes = vec![2u32; 11];
            let got: Vec<u128> = [(0, total / 3), (total / 3, total - 1), (total - 1, total)]
                .iter()
                .flat_map(|&(a, b)| kernel.chunk(&sizes, a, b))
                .collect();
            let want: Vec<u128> = (0..total).map(|t| naive(&side, n, k, bits, t)).collect();
            assert_eq!(got, want, "n={n} k={k}");
        }
    }

    #[test]
    fn singleton_classes_get_zero() {
        let side: Vec<u32> = (0..16).map(|i| (i == 5) as u32).collect();
        let kernel = SideKernel::new(&side, 4, 2, 1).unwrap();
        let fp = kernel.chunk(&[15, 1], 0, 16);
        assert_eq!(fp[5], 0);
        assert!(fp.iter().enumerate().all(|(i, &x)| (i == 5) == (x == 0)));
    }
}

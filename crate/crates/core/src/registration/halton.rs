const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Radical inverse of `index` in `base`, in `[0, 1)`.
fn radical_inverse(mut index: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base as u64) as f64 * inv;
        index /= base as u64;
        inv /= b;
    }
    out
}

/// Halton point `index` (1-based to skip the origin) mapped into `[-1, 1]^dim`.
pub(crate) fn halton_point(index: u64, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|d| 2.0 * radical_inverse(index, PRIMES[d % PRIMES.len()]) - 1.0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base2() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert_eq!(radical_inverse(1, 3), 1.0 / 3.0);
    }

    #[test]
    fn points_inside_box() {
        for i in 1..200 {
            assert!(halton_point(i, 6).iter().all(|v| (-1.0..1.0).contains(v)));
        }
    }
}

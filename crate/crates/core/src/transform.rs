//! Integer fast Walsh-Hadamard transform.
//!
//! For `f: Z_2^k -> Z`, the transform computes `F(S) = sum_v (-1)^{|S & v|} f(v)`
//! for every mask `S` in `O(k 2^k)` additions. Applied to the indicator of a
//! connection set it yields every character sum, i.e. the whole Cayley graph
//! spectrum indexed by character.

use rayon::prelude::*;

// below this length the serial butterfly beats the rayon overhead
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// In-place unnormalised Walsh-Hadamard transform. `data.len()` must be a
/// power of two.
pub fn walsh_hadamard(data: &mut [i64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "transform length {n} is not a power of two");
    let mut half = 1;
    while half < n {
        let butterfly = |block: &mut [i64]| {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        };
        if n >= PARALLEL_THRESHOLD {
            data.par_chunks_mut(2 * half).for_each(butterfly);
        } else {
            data.chunks_mut(2 * half).for_each(butterfly);
        }
        half *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(f: &[i64]) -> Vec<i64> {
        (0..f.len())
            .map(|s| {
                f.iter()
                    .enumerate()
                    .map(|(v, &x)| if (s & v).count_ones() % 2 == 0 { x } else { -x })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_direct_character_sums() {
        let f: Vec<i64> = (0..64).map(|i| (i * 7 % 11) - 5).collect();
        let mut g = f.clone();
        walsh_hadamard(&mut g);
        assert_eq!(g, naive(&f));
    }

    #[test]
    fn applying_twice_scales_by_length() {
        let f: Vec<i64> = (0..1 << 15).map(|i| (i % 13) as i64).collect();
        let mut g = f.clone();
        walsh_hadamard(&mut g);
        walsh_hadamard(&mut g);
        assert!(g.iter().zip(&f).all(|(a, b)| *a == b * (1 << 15)));
    }

    #[test]
    fn singleton() {
        let mut g = vec![3];
        walsh_hadamard(&mut g);
        assert_eq!(g, vec![3]);
    }
}

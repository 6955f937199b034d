//! Lexicographic k-subset enumeration helpers.

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Steps `idx` (strictly increasing, values < n) to the next combination in
/// lexicographic order. Returns false once the last combination is passed.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits, in lexicographic order, every k-subset of `0..n` whose smallest
/// element is `first`. The visitor returns `false` to stop early; the
/// function returns `false` iff it was stopped.
pub fn for_each_with_first<F>(n: usize, k: usize, first: usize, mut visit: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    debug_assert!(k >= 1 && first + k <= n);
    let mut idx: Vec<usize> = (first..first + k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        if !next_combination(&mut idx[1..], n) {
            return true;
        }
    }
}

/// Visits every k-subset of `0..n` in lexicographic order.
pub fn for_each_combination<F>(n: usize, k: usize, mut visit: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        if !next_combination(&mut idx, n) {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 5), 792);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_combination(5, 3, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen.first().unwrap(), &vec![0, 1, 2]);
        assert_eq!(seen.last().unwrap(), &vec![2, 3, 4]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partition_by_first_element_covers_everything() {
        let mut seen = Vec::new();
        for first in 0..=3 {
            for_each_with_first(6, 3, first, |c| {
                seen.push(c.to_vec());
                true
            });
        }
        let mut all = Vec::new();
        for_each_combination(6, 3, |c| {
            all.push(c.to_vec());
            true
        });
        assert_eq!(seen, all);
    }
}

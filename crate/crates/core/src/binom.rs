//! Exact binomial coefficients and k-subset enumeration helpers.

/// `C(n, r)` in exact arithmetic, `None` on overflow.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `ceil(a / b)` for `b > 0`.
pub fn div_ceil(a: u128, b: u128) -> u128 {
    a / b + u128::from(!a.is_multiple_of(b))
}

/// Pascal table with `table[i][j] = C(i, j)` for `i <= n`, `j <= r`.
pub(crate) struct BinomialTable {
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub(crate) fn new(n: usize, r: usize) -> Self {
        let mut rows = vec![vec![0u64; r + 1]; n + 1];
        for i in 0..=n {
            rows[i][0] = 1;
            for j in 1..=r.min(i) {
                rows[i][j] =
                    rows[i - 1][j - 1].saturating_add(if j < i { rows[i - 1][j] } else { 0 });
            }
        }
        BinomialTable { rows }
    }

    pub(crate) fn get(&self, n: usize, r: usize) -> u64 {
        if r > n {
            0
        } else {
            self.rows[n][r]
        }
    }

    /// Colexicographic unranking: the `rank`-th `r`-subset of `0..n`, sorted ascending.
    pub(crate) fn unrank(&self, n: usize, r: usize, mut rank: u64, out: &mut Vec<u32>) {
        out.clear();
        let mut hi = n;
        for j in (1..=r).rev() {
            // largest c < hi with C(c, j) <= rank
            let mut c = hi - 1;
            while self.get(c, j) > rank {
                c -= 1;
            }
            rank -= self.get(c, j);
            out.push(c as u32);
            hi = c;
        }
        out.reverse();
    }
}

/// Calls `f` on every `r`-subset of `items` (in lexicographic position order).
pub(crate) fn for_each_subset<F: FnMut(&[u32])>(items: &[u32], r: usize, mut f: F) {
    let len = items.len();
    if r > len {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + len - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..r {
            buf[j] = items[idx[j]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(9, 2), Some(36));
        assert_eq!(binomial(7, 2), Some(21));
        assert_eq!(binomial(60, 5), Some(5_461_512));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert!(binomial(10_000, 5_000).is_none());
    }

    #[test]
    fn unrank_enumerates_every_subset_once() {
        let t = BinomialTable::new(7, 3);
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for rank in 0..t.get(7, 3) {
            t.unrank(7, 3, rank, &mut out);
            assert_eq!(out.len(), 3);
            assert!(out.windows(2).all(|w| w[0] < w[1]));
            assert!(out.iter().all(|&v| v < 7));
            seen.insert(out.clone());
        }
        assert_eq!(seen.len(), 35);
    }

    #[test]
    fn subsets_of_items() {
        let mut got = Vec::new();
        for_each_subset(&[2, 5, 9, 11], 2, |s| got.push(s.to_vec()));
        assert_eq!(got.len(), 6);
        assert_eq!(got[0], vec![2, 5]);
        assert_eq!(got[5], vec![9, 11]);
        let mut count = 0;
        for_each_subset(&[1, 2, 3], 3, |_| count += 1);
        assert_eq!(count, 1);
        for_each_subset(&[1, 2], 3, |_| count += 1);
        assert_eq!(count, 1);
    }
}

//! Lexicographic enumeration of fixed-size index subsets.

/// Calls `visit` with every size-`q` subset of `0..n` in lexicographic
/// order. The slice passed to the callback is reused between calls.
pub fn for_each_support(n: usize, q: usize, mut visit: impl FnMut(&[usize])) {
    if q > n {
        return;
    }
    if q == 0 {
        visit(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        visit(&idx);
        // advance to the next combination
        let mut pos = q;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] != pos + n - q {
                break;
            }
            if pos == 0 {
                return;
            }
        }
        idx[pos] += 1;
        for later in (pos + 1)..q {
            idx[later] = idx[later - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_lexicographically() {
        let mut seen = Vec::new();
        for_each_support(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
            ]
        );
    }

    #[test]
    fn edge_cases() {
        let mut count = 0;
        for_each_support(5, 0, |s| {
            assert!(s.is_empty());
            count += 1;
        });
        assert_eq!(count, 1);

        count = 0;
        for_each_support(3, 4, |_| count += 1);
        assert_eq!(count, 0);

        count = 0;
        for_each_support(6, 3, |_| count += 1);
        assert_eq!(count, 20);
    }
}

//! Lexicographic combination visitor used by the degree, design and solver
//! code. Callback-based so the hot paths never allocate per subset.

/// Visits every `r`-element index combination of `0..m` in lexicographic
/// order. The callback returns `true` to keep going; returning `false`
/// aborts the walk. The function returns `false` iff the walk was aborted.
pub fn each_combination<F: FnMut(&[usize]) -> bool>(m: usize, r: usize, mut f: F) -> bool {
    if r > m {
        return true;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + m - r {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Collects every `r`-subset of `pool` (assumed sorted) in lexicographic
/// order. Convenience for cold paths.
pub fn combinations_of<T: Copy>(pool: &[T], r: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    each_combination(pool.len(), r, |idx| {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        true
    });
    out
}

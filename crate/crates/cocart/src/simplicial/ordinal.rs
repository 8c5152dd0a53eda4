//! Monotone maps between finite ordinals `[n] = {0 < 1 < ... < n}`.
//!
//! A monotone map `[m] -> [n]` is stored as the vector of its `m + 1` values.

/// The coface `δ^i: [n-1] -> [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|v| if v < i { v } else { v + 1 }).collect()
}

/// The codegeneracy `σ^j: [n+1] -> [n]` hitting `j` twice.
pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect()
}

/// `f ∘ g`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&v| f[v]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

pub fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

/// Surjection `[n] -> [n - |word|]` whose repeat set `{i : s(i) = s(i+1)}` is `word`.
pub fn surjection_from_word(n: usize, word: &[usize]) -> Vec<usize> {
    let mut s = Vec::with_capacity(n + 1);
    let mut cur = 0;
    s.push(0);
    for i in 0..n {
        if !word.contains(&i) {
            cur += 1;
        }
        s.push(cur);
    }
    s
}

/// Degeneracy word (strictly decreasing) of a monotone surjection.
pub fn word_from_surjection(s: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = (0..s.len().saturating_sub(1))
        .filter(|&i| s[i] == s[i + 1])
        .collect();
    w.reverse();
    w
}

/// Epi-mono factorization `f = image ∘ rho`; `image` lists the values of `f` in order.
pub fn epi_mono(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut rho = Vec::with_capacity(f.len());
    for &v in f {
        if image.last() != Some(&v) {
            image.push(v);
        }
        rho.push(image.len() - 1);
    }
    (rho, image)
}

/// All monotone maps `[m] -> [n]` in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

/// All strictly decreasing words of length `len` with letters in `0..n`.
pub fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(hi: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in (0..hi).rev() {
            if v + 1 < len - cur.len() {
                break;
            }
            cur.push(v);
            go(v, len, cur, out);
            cur.pop();
        }
    }
    go(n, len, &mut cur, &mut out);
    out
}

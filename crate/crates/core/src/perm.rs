//! Explicit permutations of `{0, .., k-1}`, for brute-force group algebra checks.

use crate::partition::Partition;

pub type Perm = Vec<usize>;

/// `(a * b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn cycle_count(a: &[usize]) -> usize {
    let mut seen = vec![false; a.len()];
    let mut cycles = 0;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i];
        }
    }
    cycles
}

pub fn cycle_type(a: &[usize]) -> Partition {
    let mut seen = vec![false; a.len()];
    let mut lengths = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|x, y| y.cmp(x));
    Partition::from_sorted(lengths)
}

/// A fixed permutation of cycle type `mu`: consecutive blocks, each a cycle.
pub fn representative(mu: &Partition) -> Perm {
    let mut out = Vec::with_capacity(mu.size());
    let mut base = 0;
    for &len in mu.parts() {
        for j in 0..len {
            out.push(base + (j + 1) % len);
        }
        base += len;
    }
    out
}

/// All `k!` permutations in lexicographic order.
pub fn all_perms(k: usize) -> Vec<Perm> {
    let mut current: Perm = (0..k).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(all_perms(4).len(), 24);
        assert_eq!(all_perms(0).len(), 1);
        let mu = Partition::new(vec![3, 2, 1]).unwrap();
        let r = representative(&mu);
        assert_eq!(cycle_type(&r), mu);
        assert_eq!(cycle_count(&r), 3);
        assert_eq!(compose(&r, &inverse(&r)), (0..6).collect::<Vec<_>>());
    }
}

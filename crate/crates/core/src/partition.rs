//! Integer partitions, multi-rectangular shapes and the combinatorial data
//! attached to a Young diagram (contents, hooks, class sizes, interlacing
//! coordinates).
//!
//! Boxes are indexed `(row, column)` starting at 1; the content of a box is
//! `column - row`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates `parts`. Unsorted input is rejected, never reordered.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "part {} is not positive in {:?}",
                pos + 1,
                parts
            )));
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts increase ({} < {}) in {:?}",
                w[0], w[1], parts
            )));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The class `1^n`.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The partition `mu 1^(n - |mu|)`.
    pub fn padded(mu: &Partition, n: usize) -> Result<Self> {
        let k = mu.size();
        if k > n {
            return Err(Error::SizeMismatch(format!("|{mu}| = {k} exceeds n = {n}")));
        }
        let mut parts = mu.parts.clone();
        parts.extend(std::iter::repeat_n(1, n - k));
        Ok(Partition { parts })
    }

    /// The one-cycle class `k 1^(n-k)`.
    pub fn cycle_class(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::SizeMismatch(format!("cycle length {k} not in 1..={n}")));
        }
        Partition::padded(&Partition { parts: vec![k] }, n)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Iterates boxes as 1-indexed `(row, column)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
    }

    /// Multiset of contents `column - row`, row by row.
    pub fn contents(&self) -> Vec<i64> {
        self.cells().map(|(r, c)| c as i64 - r as i64).collect()
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells()
            .map(|(r, c)| (self.parts[r - 1] - c) + (conj.parts[c - 1] - r) + 1)
            .collect()
    }

    pub fn hook_product(&self) -> BigInt {
        self.hook_lengths().into_iter().map(BigInt::from).product()
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> BigInt {
        factorial(self.size()) / self.hook_product()
    }

    /// `m_i`: how many parts equal `i`, keyed by `i`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Size of the conjugacy class of cycle type `self`: `n! / prod i^m_i m_i!`.
    pub fn class_size(&self) -> BigInt {
        let denom: BigInt = self
            .multiplicities()
            .into_iter()
            .map(|(i, m)| BigInt::from(i).pow(m as u32) * factorial(m))
            .product();
        factorial(self.size()) / denom
    }

    /// `z_lambda = n! / |C_lambda|`, the centralizer order.
    pub fn centralizer_order(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .map(|(i, m)| BigInt::from(i).pow(m as u32) * factorial(m))
            .product()
    }

    /// Groups equal parts into a multi-rectangular shape; `None` for the empty partition.
    pub fn to_multirect(&self) -> Option<MultiRect> {
        if self.is_empty() {
            return None;
        }
        let (mut p, mut q) = (Vec::new(), Vec::new());
        for (size, count) in self.multiplicities().into_iter().rev() {
            q.push(size);
            p.push(count);
        }
        Some(MultiRect { p, q })
    }

    /// Minima are the contents of the addable cells, maxima those of the removable cells.
    pub fn interlacing(&self) -> InterlacingCoords {
        match self.to_multirect() {
            Some(shape) => shape.interlacing(),
            None => InterlacingCoords { minima: vec![0], maxima: vec![] },
        }
    }

    /// All ways to remove a rim hook of `length` boxes, with the hook's leg length.
    ///
    /// Uses beta-numbers: removing a rim hook slides one bead `length`
    /// positions down, and the leg length counts the beads it jumps over.
    pub fn remove_rim_hooks(&self, length: usize) -> Vec<(Partition, usize)> {
        if length == 0 {
            return Vec::new();
        }
        let l = self.len();
        let beta: Vec<usize> = self.parts.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            if b < length {
                continue;
            }
            let target = b - length;
            if beta.contains(&target) {
                continue;
            }
            let leg = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut next: Vec<usize> = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let parts: Vec<usize> = next
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (l - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            out.push((Partition { parts }, leg));
        }
        out
    }

    /// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
    pub fn all(n: usize) -> PartitionIter {
        PartitionIter { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
    }

    /// All partitions of every size in `0..=n_max`.
    pub fn all_up_to(n_max: usize) -> impl Iterator<Item = Partition> {
        (0..=n_max).flat_map(Partition::all)
    }
}

pub struct PartitionIter {
    next: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor in reverse lex order: drop trailing ones, decrement the last
        // part > 1 and refill greedily with the freed boxes.
        let mut parts = current.clone();
        let mut freed = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            freed += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            freed += 1;
            while freed > 0 {
                let take = freed.min(cap);
                parts.push(take);
                freed -= take;
            }
            self.next = Some(parts);
        }
        Some(Partition { parts: current })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("`{}`: {e}", t.trim())))
        })
        .collect()
}

/// The shape with `p[i]` rows of length `q[i]`, `q` strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiRect {
    p: Vec<usize>,
    q: Vec<usize>,
}

impl MultiRect {
    pub fn new(p: Vec<usize>, q: Vec<usize>) -> Result<Self> {
        if p.is_empty() || p.len() != q.len() {
            return Err(Error::InvalidShape(format!(
                "p and q must be non-empty and of equal length (got {} and {})",
                p.len(),
                q.len()
            )));
        }
        if p.iter().chain(&q).any(|&v| v == 0) {
            return Err(Error::InvalidShape("entries of p and q must be positive".into()));
        }
        if q.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidShape(format!("q must be strictly decreasing: {q:?}")));
        }
        Ok(MultiRect { p, q })
    }

    pub fn rectangle(rows: usize, cols: usize) -> Result<Self> {
        MultiRect::new(vec![rows], vec![cols])
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    /// Number of rectangle blocks `m`.
    pub fn blocks(&self) -> usize {
        self.p.len()
    }

    pub fn size(&self) -> usize {
        self.p.iter().zip(&self.q).map(|(a, b)| a * b).sum()
    }

    pub fn expand(&self) -> Partition {
        let parts = self
            .p
            .iter()
            .zip(&self.q)
            .flat_map(|(&count, &len)| std::iter::repeat_n(len, count))
            .collect();
        Partition::from_sorted(parts)
    }

    /// `x_1 = q_1`, `y_i = q_i - r_i`, `x_{i+1} = q_{i+1} - r_i`, `x_{m+1} = -r_m`
    /// with `r_i = p_1 + ... + p_i`.
    pub fn interlacing(&self) -> InterlacingCoords {
        let m = self.blocks();
        let mut minima = Vec::with_capacity(m + 1);
        let mut maxima = Vec::with_capacity(m);
        let mut r = 0i64;
        for i in 0..m {
            minima.push(self.q[i] as i64 - r);
            r += self.p[i] as i64;
            maxima.push(self.q[i] as i64 - r);
        }
        minima.push(-r);
        InterlacingCoords { minima, maxima }
    }
}

impl fmt::Display for MultiRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "p={};q={}", join(&self.p), join(&self.q))
    }
}

impl FromStr for MultiRect {
    type Err = Error;

    /// Parses `p=1,3,1;q=4,3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let (mut p, mut q) = (None, None);
        for field in s.split(';') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in `{field}`")))?;
            match key.trim() {
                "p" => p = Some(parse_list(value)?),
                "q" => q = Some(parse_list(value)?),
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        match (p, q) {
            (Some(p), Some(q)) => MultiRect::new(p, q),
            _ => Err(Error::Parse(format!("shape `{s}` needs both p= and q="))),
        }
    }
}

/// Local minima and maxima of the rotated diagram profile, in content coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingCoords {
    pub minima: Vec<i64>,
    pub maxima: Vec<i64>,
}

impl InterlacingCoords {
    pub fn is_strictly_interlacing(&self) -> bool {
        if self.minima.len() != self.maxima.len() + 1 {
            return false;
        }
        let mut seq = Vec::with_capacity(self.minima.len() * 2);
        for (i, &x) in self.minima.iter().enumerate() {
            seq.push(x);
            if let Some(&y) = self.maxima.get(i) {
                seq.push(y);
            }
        }
        seq.windows(2).all(|w| w[0] > w[1])
    }

    /// Rebuilds the diagram.
    pub fn to_partition(&self) -> Result<Partition> {
        if !self.is_strictly_interlacing() {
            return Err(Error::InvalidShape(format!("coordinates do not interlace: {self:?}")));
        }
        let m = self.maxima.len();
        if m == 0 {
            return if self.minima == [0] {
                Ok(Partition::empty())
            } else {
                Err(Error::InvalidShape("single minimum must sit at 0".into()))
            };
        }
        let (x, y) = (&self.minima, &self.maxima);
        let p: Vec<usize> = (0..m).map(|i| (x[i] - y[i]) as usize).collect();
        let mut q = vec![0usize; m];
        q[m - 1] = (y[m - 1] - x[m]) as usize;
        for i in (0..m - 1).rev() {
            q[i] = q[i + 1] + (y[i] - x[i + 1]) as usize;
        }
        if q[0] as i64 != x[0] {
            return Err(Error::InvalidShape(format!(
                "profile is not anchored at the origin: x_1 = {} but first row has {} boxes",
                x[0], q[0]
            )));
        }
        Ok(MultiRect::new(p, q)?.expand())
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n (n-1) ... (n-k+1)` over the integers.
pub fn falling_factorial_int(n: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (n - i))
}

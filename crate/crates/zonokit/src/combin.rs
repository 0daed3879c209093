//! Small combinatorial helpers: binomial coefficients and iterative
//! lexicographic k-subset enumeration.

/// Binomial coefficient C(n, k); returns 0 when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: usize = 1;
    for i in 1..=k {
        result = result * (n - (k - i)) / i;
    }
    result
}

/// Iterator over all k-subsets of {0, .., n-1} in lexicographic order.
///
/// Iterative successor computation, no recursion; enumeration stays flat even
/// for subset counts in the millions.
pub struct Combinations {
    n: usize,
    k: usize,
    current: Vec<usize>,
    started: bool,
    exhausted: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            current: (0..k).collect(),
            started: false,
            exhausted: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        // Advance the rightmost index that still has room, then reset the
        // suffix to consecutive values.
        let mut i = self.k;
        loop {
            if i == 0 {
                self.exhausted = true;
                return None;
            }
            i -= 1;
            if self.current[i] < self.n - (self.k - i) {
                self.current[i] += 1;
                for j in i + 1..self.k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return Some(self.current.clone());
            }
        }
    }
}

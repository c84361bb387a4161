use crate::formula::Formula;

/// Every implicational formula over `leaves` with at most `max` connectives,
/// by connective count, then lexicographically by printed form. Each level is
/// built and sorted when the previous one runs out; levels below `max` stay in
/// memory to compose the next.
pub struct ImplicationalFormulas {
    max: usize,
    levels: Vec<Vec<Formula>>,
    level: usize,
    current: std::vec::IntoIter<Formula>,
}

impl ImplicationalFormulas {
    pub fn new(leaves: Vec<Formula>, max: usize) -> ImplicationalFormulas {
        let level0 = sorted(leaves);
        let current = level0.clone().into_iter();
        ImplicationalFormulas { max, levels: vec![level0], level: 0, current }
    }

    /// Connective count of the formulas currently being produced.
    pub fn level(&self) -> usize {
        self.level
    }

    fn build(&self, n: usize) -> Vec<Formula> {
        let mut out = Vec::with_capacity(count_at_level(n, self.levels[0].len()) as usize);
        for split in 0..n {
            for a in &self.levels[split] {
                for b in &self.levels[n - 1 - split] {
                    out.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        sorted(out)
    }
}

fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
    v.sort_by_cached_key(|f| f.to_string());
    v.dedup();
    v
}

impl Iterator for ImplicationalFormulas {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            if let Some(f) = self.current.next() {
                return Some(f);
            }
            if self.level >= self.max {
                return None;
            }
            self.level += 1;
            let next = self.build(self.level);
            if self.level < self.max {
                self.levels.push(next.clone());
            }
            self.current = next.into_iter();
        }
    }
}

/// Number of implicational formulas with exactly `n` connectives over
/// `leaves` leaf symbols: Catalan(n) · leaves^(n+1).
pub fn count_at_level(n: usize, leaves: usize) -> u64 {
    let mut catalan: u64 = 1;
    for k in 0..n as u64 {
        catalan = catalan * 2 * (2 * k + 1) / (k + 2);
    }
    catalan * (leaves as u64).pow(n as u32 + 1)
}

pub fn count_up_to(max: usize, leaves: usize) -> u64 {
    (0..=max).map(|n| count_at_level(n, leaves)).sum()
}

use crate::error::{Error, Result};
use crate::exec::{map_range, Exec};
use crate::model::{Lasso, Safety};

use super::inclusion::{residual_included, Inclusion};
use super::poset::{ResidualId, ResidualPoset};

pub const DEFAULT_BRUTEFORCE_BOUND: usize = 20;

/// Lasso in `L(antichain[i])` but not in `L(antichain[j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub i: usize,
    pub j: usize,
    pub lasso: Lasso,
}

/// Width of a residual poset together with both Dilworth certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthCertificate {
    pub width: usize,
    pub antichain: Vec<ResidualId>,
    /// Chains listed from the smallest residual to the largest.
    pub chains: Vec<Vec<ResidualId>>,
    /// One entry per ordered pair `i != j` of antichain indices, row-major.
    pub separators: Vec<Separator>,
}

impl WidthCertificate {
    /// Index of the chain containing `r`.
    pub fn chain_of(&self, r: ResidualId) -> Option<usize> {
        self.chains.iter().position(|c| c.contains(&r))
    }

    pub fn separator(&self, i: usize, j: usize) -> Option<&Lasso> {
        self.separators.iter().find(|s| s.i == i && s.j == j).map(|s| &s.lasso)
    }

    /// Re-checks every invariant of the certificate against `poset`.
    pub fn check(&self, poset: &ResidualPoset) -> Result<()> {
        let bad = |m: String| Err(Error::Internal(m));
        if self.antichain.len() != self.width || self.chains.len() != self.width {
            return bad("antichain and chain cover sizes differ from the width".into());
        }
        for (x, &a) in self.antichain.iter().enumerate() {
            for &b in &self.antichain[x + 1..] {
                if poset.comparable(a, b) {
                    return bad(format!("antichain members {} and {} are comparable", poset.name(a), poset.name(b)));
                }
            }
        }
        let mut seen = vec![0usize; poset.len()];
        for chain in &self.chains {
            if chain.is_empty() {
                return bad("empty chain".into());
            }
            for w in chain.windows(2) {
                if !poset.lt(w[0], w[1]) {
                    return bad(format!("chain not increasing at {}", poset.name(w[0])));
                }
            }
            for &r in chain {
                seen[r] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            return bad("chains do not partition the residuals".into());
        }
        let k = self.width;
        if self.separators.len() != k * k.saturating_sub(1) {
            return bad("missing separators".into());
        }
        let aut = poset.automaton();
        for s in &self.separators {
            let (qi, qj) = (poset.as_state(self.antichain[s.i]), poset.as_state(self.antichain[s.j]));
            if aut.eval_lasso(qi, &s.lasso)? != Safety::Safe || aut.eval_lasso(qj, &s.lasso)? != Safety::Unsafe {
                return bad(format!("separator ({}, {}) does not separate", s.i, s.j));
            }
        }
        Ok(())
    }
}

/// [`poset_width_with`] using the default execution mode.
pub fn poset_width(poset: &ResidualPoset) -> Result<WidthCertificate> {
    poset_width_with(poset, Exec::default())
}

/// Minimum chain cover by maximum bipartite matching on the strict order,
/// and a maximum antichain of the same size from the König vertex cover.
pub fn poset_width_with(poset: &ResidualPoset, exec: Exec) -> Result<WidthCertificate> {
    let n = poset.len();
    let succ: Vec<Vec<ResidualId>> =
        (0..n).map(|i| (0..n).filter(|&j| poset.lt(i, j)).collect()).collect();

    // match_left[i] = j means j follows i in its chain
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, &succ, &mut match_left, &mut match_right, &mut seen);
    }
    let matched = match_left.iter().flatten().count();

    let mut chains = Vec::new();
    for start in (0..n).filter(|&x| match_right[x].is_none()) {
        let mut chain = vec![start];
        let mut at = start;
        while let Some(next) = match_left[at] {
            chain.push(next);
            at = next;
        }
        chains.push(chain);
    }

    // König: alternating reachability from unmatched left vertices
    let mut zl = vec![false; n];
    let mut zr = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        zl[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &succ[u] {
            if !zr[v] {
                zr[v] = true;
                if let Some(w) = match_right[v] {
                    if !zl[w] {
                        zl[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    let antichain: Vec<ResidualId> = (0..n).filter(|&x| zl[x] && !zr[x]).collect();

    let width = n - matched;
    if antichain.len() != width || chains.len() != width {
        return Err(Error::Internal(format!(
            "Dilworth mismatch: {} chains, antichain of {}, expected {width}",
            chains.len(),
            antichain.len()
        )));
    }

    let aut = poset.automaton();
    let pairs: Vec<(usize, usize)> =
        (0..width).flat_map(|i| (0..width).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let separators = map_range(exec, pairs.len(), |p| {
        let (i, j) = pairs[p];
        match residual_included(aut, poset.as_state(antichain[i]), poset.as_state(antichain[j]))? {
            Inclusion::No(lasso) => Ok(Separator { i, j, lasso }),
            Inclusion::Yes => Err(Error::Internal("antichain members are comparable".into())),
        }
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let cert = WidthCertificate { width, antichain, chains, separators };
    cert.check(poset)?;
    Ok(cert)
}

fn augment(
    u: usize,
    succ: &[Vec<usize>],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &v in &succ[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, succ, match_left, match_right, seen),
        };
        if free {
            match_left[u] = Some(v);
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// [`width_bruteforce_bounded`] with [`DEFAULT_BRUTEFORCE_BOUND`].
pub fn width_bruteforce(poset: &ResidualPoset) -> Result<usize> {
    width_bruteforce_bounded(poset, DEFAULT_BRUTEFORCE_BOUND)
}

/// Largest antichain by exhaustive subset search. Refuses posets with more
/// than `bound` elements (and never accepts more than 64).
pub fn width_bruteforce_bounded(poset: &ResidualPoset, bound: usize) -> Result<usize> {
    let n = poset.len();
    if n > bound.min(64) {
        return Err(Error::BudgetExceeded(format!("{n} residuals exceed the brute-force bound {bound}")));
    }
    let comparable: Vec<u64> = (0..n)
        .map(|a| (0..n).filter(|&b| b != a && poset.comparable(a, b)).fold(0u64, |m, b| m | (1 << b)))
        .collect();
    fn search(i: usize, chosen: u64, size: usize, comparable: &[u64], best: &mut usize) {
        let n = comparable.len();
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        if comparable[i] & chosen == 0 {
            search(i + 1, chosen | (1 << i), size + 1, comparable, best);
        }
        search(i + 1, chosen, size, comparable, best);
    }
    let mut best = 0;
    search(0, 0, 0, &comparable, &mut best);
    Ok(best)
}

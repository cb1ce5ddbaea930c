//! Bottleneck distance between rectangle-decomposable modules.
//!
//! The distance minimizes, over all partial multibijections between the two
//! barcodes, the worst cost incurred: matched bars pay their interleaving
//! distance, unmatched bars pay their distance to the zero module. Because
//! that min-max optimum is always attained at one of the finitely many
//! precomputed costs, the search sorts the candidate values and
//! binary-searches the smallest one admitting a feasible assignment. A
//! candidate `eps` is feasible exactly when an augmented bipartite graph
//! (one dummy per bar, so "unmatched" becomes an ordinary edge) has a
//! perfect matching, decided by Hopcroft-Karp.

use serde::Serialize;

use crate::barcode::Barcode;
use crate::bipartite::maximum_matching;
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

/// A partial multibijection between two barcodes, as index pairs
/// `(left bar, right bar)`, injective in both coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut lefts: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
        let mut rights: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
        lefts.sort_unstable();
        rights.sort_unstable();
        if lefts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::IndexOutOfRange(
                "left bar index matched more than once".to_string(),
            ));
        }
        if rights.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::IndexOutOfRange(
                "right bar index matched more than once".to_string(),
            ));
        }
        Ok(Matching { pairs })
    }

    pub fn empty() -> Self {
        Matching { pairs: Vec::new() }
    }

    /// The identity matching on `n` bars, pairing each index with itself.
    pub fn identity(n: usize) -> Self {
        Matching {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn matched_flags(&self, left_size: usize, right_size: usize) -> Result<(Vec<bool>, Vec<bool>)> {
        let mut left = vec![false; left_size];
        let mut right = vec![false; right_size];
        for &(i, j) in &self.pairs {
            if i >= left_size {
                return Err(Error::IndexOutOfRange(format!(
                    "left bar index {i} out of range for barcode of size {left_size}"
                )));
            }
            if j >= right_size {
                return Err(Error::IndexOutOfRange(format!(
                    "right bar index {j} out of range for barcode of size {right_size}"
                )));
            }
            left[i] = true;
            right[j] = true;
        }
        Ok((left, right))
    }

    /// JSON rendering listing the matched pairs and both unmatched sides.
    pub fn to_json(&self, left_size: usize, right_size: usize) -> Result<String> {
        #[derive(Serialize)]
        struct MatchingDoc<'a> {
            pairs: &'a [(usize, usize)],
            unmatched_left: Vec<usize>,
            unmatched_right: Vec<usize>,
        }
        let (left, right) = self.matched_flags(left_size, right_size)?;
        let doc = MatchingDoc {
            pairs: &self.pairs,
            unmatched_left: (0..left_size).filter(|&i| !left[i]).collect(),
            unmatched_right: (0..right_size).filter(|&j| !right[j]).collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("matching doc serializes");
        out.push('\n');
        Ok(out)
    }
}

/// Every quantity the bottleneck min-max ranges over: the pairwise
/// interleaving distances and each bar's distance to the zero module.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    left_size: usize,
    right_size: usize,
    pair_cost: Vec<Vec<ExtReal>>,
    left_zero: Vec<ExtReal>,
    right_zero: Vec<ExtReal>,
}

impl CostMatrix {
    pub fn build(left: &Barcode, right: &Barcode) -> Result<Self> {
        left.check_compatible(right)?;
        let pair_cost = left
            .bars()
            .iter()
            .map(|l| {
                right
                    .bars()
                    .iter()
                    .map(|r| l.interleaving_distance(r))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CostMatrix {
            left_size: left.len(),
            right_size: right.len(),
            pair_cost,
            left_zero: left.bars().iter().map(|b| b.zero_distance()).collect(),
            right_zero: right.bars().iter().map(|b| b.zero_distance()).collect(),
        })
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn pair_cost(&self, i: usize, j: usize) -> &ExtReal {
        &self.pair_cost[i][j]
    }

    pub fn left_zero(&self, i: usize) -> &ExtReal {
        &self.left_zero[i]
    }

    pub fn right_zero(&self, j: usize) -> &ExtReal {
        &self.right_zero[j]
    }

    /// All distinct cost values that can appear in a matching cost,
    /// including 0 (the cost of the empty matching on empty barcodes),
    /// sorted ascending.
    fn candidate_values(&self) -> Vec<ExtReal> {
        let mut values = vec![ExtReal::zero()];
        values.extend(self.pair_cost.iter().flatten().cloned());
        values.extend(self.left_zero.iter().cloned());
        values.extend(self.right_zero.iter().cloned());
        values.sort();
        values.dedup();
        values
    }

    /// Decides whether some matching of cost `<= eps` exists, returning a
    /// witness. Reduction: left side gets one dummy per right bar, right
    /// side one dummy per left bar; a bar may pair with its own dummy at
    /// its zero-distance cost, and dummies pair with dummies freely, so
    /// feasibility is exactly a perfect matching on `m + k` vertices.
    fn feasible(&self, eps: &ExtReal) -> Option<Matching> {
        let (m, k) = (self.left_size, self.right_size);
        let total = m + k;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); total];
        for (i, row) in adjacency.iter_mut().enumerate().take(m) {
            for j in 0..k {
                if self.pair_cost[i][j] <= *eps {
                    row.push(j);
                }
            }
            if self.left_zero[i] <= *eps {
                row.push(k + i);
            }
        }
        for j in 0..k {
            if self.right_zero[j] <= *eps {
                adjacency[m + j].push(j);
            }
            adjacency[m + j].extend(k..total);
        }
        let result = maximum_matching(&adjacency, total);
        if result.size < total {
            return None;
        }
        let pairs = result
            .left_to_right
            .iter()
            .take(m)
            .enumerate()
            .filter_map(|(i, v)| match v {
                Some(j) if *j < k => Some((i, *j)),
                _ => None,
            })
            .collect();
        Some(Matching { pairs })
    }
}

/// The cost of one matching: the worst of the matched interleaving
/// distances and the zero-distances of all unmatched bars. A maximum over
/// nothing is 0.
pub fn matching_cost(cm: &CostMatrix, sigma: &Matching) -> Result<ExtReal> {
    let (left, right) = sigma.matched_flags(cm.left_size, cm.right_size)?;
    let mut cost = ExtReal::zero();
    for &(i, j) in sigma.pairs() {
        cost = cost.max(cm.pair_cost[i][j].clone());
    }
    for (i, matched) in left.iter().enumerate() {
        if !matched {
            cost = cost.max(cm.left_zero[i].clone());
        }
    }
    for (j, matched) in right.iter().enumerate() {
        if !matched {
            cost = cost.max(cm.right_zero[j].clone());
        }
    }
    Ok(cost)
}

/// The exact bottleneck distance together with an optimal matching.
#[derive(Debug, Clone)]
pub struct BottleneckResult {
    pub value: ExtReal,
    pub matching: Matching,
    pub left_size: usize,
    pub right_size: usize,
}

impl BottleneckResult {
    pub fn matching_json(&self) -> String {
        self.matching
            .to_json(self.left_size, self.right_size)
            .expect("witness matching is in range")
    }
}

/// Minimizes the matching cost over all partial multibijections.
///
/// The optimum is one of the finitely many precomputed costs, so the
/// search binary-searches the sorted candidate list for the smallest
/// feasible value; feasibility is monotone in `eps`, which the search
/// double-checks around the answer.
pub fn bottleneck_distance(left: &Barcode, right: &Barcode) -> Result<BottleneckResult> {
    let cm = CostMatrix::build(left, right)?;
    let candidates = cm.candidate_values();

    let mut lo = 0;
    let mut hi = candidates.len() - 1;
    let mut witness = cm.feasible(&candidates[hi]);
    debug_assert!(
        witness.is_some(),
        "the largest candidate admits the all-unmatched assignment"
    );
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match cm.feasible(&candidates[mid]) {
            Some(found) => {
                witness = Some(found);
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    debug_assert!(hi == 0 || cm.feasible(&candidates[hi - 1]).is_none());

    let matching = witness.expect("search ends on a feasible candidate");
    let value = candidates[hi].clone();
    debug_assert_eq!(matching_cost(&cm, &matching).as_ref(), Ok(&value));
    Ok(BottleneckResult {
        value,
        matching,
        left_size: cm.left_size,
        right_size: cm.right_size,
    })
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative vector `x` with `Σ c_i x_i` equal to some target and
/// `x_i ≤ g_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SolutionVector(pub Vec<usize>);

impl SolutionVector {
    pub fn value(&self, c: &[usize]) -> usize {
        self.0.iter().zip(c).map(|(x, c)| x * c).sum()
    }
}

/// Every `x` with `Σ c_i x_i = target` and `0 ≤ x_i ≤ g_i`, in lexicographic
/// order.
pub fn solve_solution_vectors(c: &[usize], g: &[usize], target: usize) -> Result<Vec<SolutionVector>> {
    if c.len() != g.len() {
        return Err(Error::pre(
            "solve_solution_vectors",
            "c and g must have the same length",
        ));
    }
    // reach[i] = largest total the groups i.. can still contribute
    let mut reach = vec![0usize; c.len() + 1];
    for i in (0..c.len()).rev() {
        reach[i] = reach[i + 1] + c[i] * g[i];
    }
    let mut out = Vec::new();
    let mut x = vec![0usize; c.len()];
    descend(c, g, &reach, 0, target, &mut x, &mut out);
    Ok(out)
}

fn descend(
    c: &[usize],
    g: &[usize],
    reach: &[usize],
    i: usize,
    rest: usize,
    x: &mut Vec<usize>,
    out: &mut Vec<SolutionVector>,
) {
    if i == c.len() {
        if rest == 0 {
            out.push(SolutionVector(x.clone()));
        }
        return;
    }
    if reach[i] < rest {
        return;
    }
    let hi = rest.checked_div(c[i]).map_or(g[i], |q| g[i].min(q));
    for xi in 0..=hi {
        x[i] = xi;
        descend(c, g, reach, i + 1, rest - c[i] * xi, x, out);
    }
    x[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(v: &[SolutionVector]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.0.clone()).collect()
    }

    #[test]
    fn examples() {
        let got = solve_solution_vectors(&[2, 2, 3], &[10, 10, 10], 7).unwrap();
        assert_eq!(vecs(&got), vec![vec![0, 2, 1], vec![1, 1, 1], vec![2, 0, 1]]);
        assert!(solve_solution_vectors(&[2, 2, 3], &[10, 10, 10], 1).unwrap().is_empty());
        assert_eq!(vecs(&solve_solution_vectors(&[2], &[5], 4).unwrap()), vec![vec![2]]);
        assert_eq!(
            vecs(&solve_solution_vectors(&[], &[], 0).unwrap()),
            vec![Vec::<usize>::new()]
        );
        assert!(solve_solution_vectors(&[2], &[1, 2], 4).is_err());
    }

    proptest! {
        #[test]
        fn matches_grid_scan(
            groups in proptest::collection::vec((1usize..5, 0usize..5), 0..5),
            target in 0usize..30,
        ) {
            let c: Vec<usize> = groups.iter().map(|p| p.0).collect();
            let g: Vec<usize> = groups.iter().map(|p| p.1).collect();
            // independent scan over the full box Π (g_i + 1)
            let mut expected = Vec::new();
            let total: usize = g.iter().map(|gi| gi + 1).product();
            for mut code in 0..total {
                let mut x = Vec::with_capacity(g.len());
                for gi in &g {
                    x.push(code % (gi + 1));
                    code /= gi + 1;
                }
                if x.iter().zip(&c).map(|(a, b)| a * b).sum::<usize>() == target {
                    expected.push(x);
                }
            }
            expected.sort();
            let got = vecs(&solve_solution_vectors(&c, &g, target).unwrap());
            prop_assert_eq!(got, expected);
        }
    }
}

//! Bipartite matching on small graphs by augmenting paths.

/// Left vertices `0..adj.len()`, right vertices `0..right`.
pub struct BipartiteGraph<'a> {
    adj: &'a [Vec<usize>],
    right: usize,
}

impl<'a> BipartiteGraph<'a> {
    pub fn new(adj: &'a [Vec<usize>], right: usize) -> Self {
        BipartiteGraph { adj, right }
    }

    fn try_augment(
        &self,
        v: usize,
        banned: Option<(usize, usize)>,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &to in &self.adj[v] {
            if banned == Some((v, to)) || seen[to] {
                continue;
            }
            seen[to] = true;
            let free = match owner[to] {
                None => true,
                Some(w) => self.try_augment(w, banned, seen, owner),
            };
            if free {
                owner[to] = Some(v);
                return true;
            }
        }
        false
    }

    fn matching_avoiding(&self, banned: Option<(usize, usize)>) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.right];
        for v in 0..self.adj.len() {
            let mut seen = vec![false; self.right];
            self.try_augment(v, banned, &mut seen, &mut owner);
        }
        let mut mate = vec![None; self.adj.len()];
        for (r, l) in owner.iter().enumerate() {
            if let Some(l) = l {
                mate[*l] = Some(r);
            }
        }
        mate
    }

    /// A perfect matching as `left -> right`, if one exists. Requires equal sides.
    pub fn perfect_matching(&self) -> Option<Vec<usize>> {
        if self.adj.len() != self.right {
            return None;
        }
        self.matching_avoiding(None).into_iter().collect()
    }

    /// True when `matching` is the only perfect matching: removing any of its
    /// edges leaves no perfect matching.
    pub fn is_forced(&self, matching: &[usize]) -> bool {
        matching.iter().enumerate().all(|(l, &r)| {
            self.matching_avoiding(Some((l, r)))
                .iter()
                .any(Option::is_none)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_perfect_matching_through_augmentation() {
        // 0-{0,1}, 1-{0}: greedy would take 0-0 first and must augment.
        let adj = vec![vec![0, 1], vec![0]];
        let g = BipartiteGraph::new(&adj, 2);
        assert_eq!(g.perfect_matching(), Some(vec![1, 0]));
        assert!(g.is_forced(&[1, 0]));
    }

    #[test]
    fn reports_missing_and_unforced_matchings() {
        let adj = vec![vec![0], vec![0]];
        assert_eq!(BipartiteGraph::new(&adj, 2).perfect_matching(), None);

        let adj = vec![vec![0, 1], vec![0, 1]];
        let g = BipartiteGraph::new(&adj, 2);
        let m = g.perfect_matching().unwrap();
        assert!(!g.is_forced(&m));
    }

    #[test]
    fn unequal_sides_have_no_perfect_matching() {
        let adj = vec![vec![0, 1]];
        assert_eq!(BipartiteGraph::new(&adj, 2).perfect_matching(), None);
    }
}

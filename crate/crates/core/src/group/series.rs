//! Subgroup, quotient and series computations: center, derived series,
//! upper and lower central series, solvability and nilpotency class.

use super::{FiniteGroup, GroupError, Subset};

impl FiniteGroup {
    /// Closure of `seed` under products and inverses; the empty set closes to {e}.
    pub fn subgroup_generated(&self, seed: &Subset) -> Subset {
        let mut members = Subset::singleton(self.identity());
        let mut frontier: Vec<usize> = vec![self.identity()];
        for g in seed.iter() {
            if members.insert(g) {
                frontier.push(g);
            }
        }
        let gens: Vec<usize> = seed.iter().flat_map(|g| [g, self.inv(g)]).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members
    }

    pub fn is_subgroup(&self, x: &Subset) -> bool {
        if !x.contains(self.identity()) {
            return false;
        }
        x.iter()
            .all(|a| x.contains(self.inv(a)) && x.iter().all(|b| x.contains(self.mul(a, b))))
    }

    /// Closed under conjugation by every element of the group.
    pub fn is_normal_subset(&self, x: &Subset) -> bool {
        x.iter()
            .all(|a| self.elements().all(|g| x.contains(self.conjugate(a, g))))
    }

    /// Contains the inverse of each of its elements.
    pub fn is_inverse_closed(&self, x: &Subset) -> bool {
        x.iter().all(|a| x.contains(self.inv(a)))
    }

    pub fn center(&self) -> Subset {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// Centralizer of `x` in the whole group.
    pub fn centralizer(&self, x: &Subset) -> Subset {
        self.elements()
            .filter(|&g| x.iter().all(|a| self.mul(g, a) == self.mul(a, g)))
            .collect()
    }

    /// Subgroup generated by all commutators [a,b] with a in `x`, b in `y`.
    pub fn commutator_subgroup(&self, x: &Subset, y: &Subset) -> Subset {
        let mut seed = Subset::empty();
        for a in x.iter() {
            for b in y.iter() {
                seed.insert(self.commutator(a, b));
            }
        }
        self.subgroup_generated(&seed)
    }

    pub fn derived_subgroup(&self) -> Subset {
        let all = self.full_subset();
        self.commutator_subgroup(&all, &all)
    }

    /// G = G^(0) > G^(1) > ...; stops once the series stabilizes. The last
    /// entry repeats only when the series halts above the trivial subgroup.
    pub fn derived_series(&self) -> Vec<Subset> {
        let mut series = vec![self.full_subset()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                break;
            }
            series.push(next);
            if series.last().unwrap().len() == 1 {
                break;
            }
        }
        series
    }

    /// The p-th term of the derived series (stabilized beyond its end).
    pub fn derived_term(&self, p: usize) -> Subset {
        let series = self.derived_series();
        series[p.min(series.len() - 1)].clone()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().len() == 1
    }

    pub fn derived_length(&self) -> Option<usize> {
        let series = self.derived_series();
        if series.last().unwrap().len() == 1 {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    /// gamma_1 = G, gamma_{i+1} = [gamma_i, G]; stops when stable.
    pub fn lower_central_series(&self) -> Vec<Subset> {
        let all = self.full_subset();
        let mut series = vec![all.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, &all);
            if &next == last {
                break;
            }
            series.push(next);
            if series.last().unwrap().len() == 1 {
                break;
            }
        }
        series
    }

    /// Number of steps for the lower central series to reach 1, or None.
    /// The trivial group has class 0.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        if series.last().unwrap().len() == 1 {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    /// Z_0 = 1 <= Z_1 = Z(G) <= ...; Z_{i+1}/Z_i = Z(G/Z_i). Stops when stable.
    pub fn upper_central_series(&self) -> Vec<Subset> {
        let mut series = vec![Subset::singleton(self.identity())];
        loop {
            let last = series.last().unwrap();
            let (q, proj) = self.quotient(last).expect("Z_i is normal");
            let zq = q.center();
            let next: Subset = self.elements().filter(|&g| zq.contains(proj[g])).collect();
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Quotient by a normal subgroup: the coset table plus the projection
    /// element -> coset index. Cosets are indexed by ascending minimal
    /// representative, so the identity coset is index 0.
    pub fn quotient(&self, n: &Subset) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(n) {
            return Err(GroupError::NotSubgroup);
        }
        if !self.is_normal_subset(n) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        // coset of g keyed by its minimal member
        let mut coset_min = vec![usize::MAX; order];
        for g in 0..order {
            if coset_min[g] != usize::MAX {
                continue;
            }
            let min = n.iter().map(|h| self.mul(g, h)).min().unwrap();
            for h in n.iter() {
                coset_min[self.mul(g, h)] = min;
            }
        }
        let mut reps: Vec<usize> = coset_min.iter().copied().collect();
        reps.sort_unstable();
        reps.dedup();
        let proj: Vec<usize> = coset_min
            .iter()
            .map(|m| reps.binary_search(m).unwrap())
            .collect();
        let q_order = reps.len();
        let mut table = vec![0u16; q_order * q_order];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q_order + j] = proj[self.mul(a, b)] as u16;
            }
        }
        let names = reps
            .iter()
            .map(|&r| format!("[{}]", self.element_name(r)))
            .collect();
        let q = FiniteGroup::from_parts(&format!("{}/N", self.name()), q_order, table, names);
        Ok((q, proj))
    }
}

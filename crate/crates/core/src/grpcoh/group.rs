use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// Finite group stored by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroup {
    /// Validates the table: Latin square, two-sided identity, associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidTable("table must be square and nonempty".into()));
        }
        if identity >= n {
            return Err(GroupError::InvalidTable(format!("identity {identity} out of range")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
        }
        for i in 0..n {
            let row: BTreeSet<_> = flat[i * n..(i + 1) * n].iter().collect();
            let col: BTreeSet<_> = (0..n).map(|j| &flat[j * n + i]).collect();
            if row.len() != n || col.len() != n {
                return Err(GroupError::InvalidTable(format!("not a Latin square at index {i}")));
            }
        }
        for a in 0..n {
            if flat[identity * n + a] != a || flat[a * n + identity] != a {
                return Err(GroupError::InvalidTable(format!("{identity} is not an identity")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| flat[a * n + b] == identity).expect("Latin square"))
            .collect();
        Ok(Self {
            name: name.into(),
            order: n,
            table: flat,
            identity,
            inverse,
        })
    }

    pub fn from_json(name: impl Into<String>, j: &GroupJson) -> Result<Self, GroupError> {
        if j.order != j.table.len() {
            return Err(GroupError::InvalidTable(format!(
                "order {} but {} table rows",
                j.order,
                j.table.len()
            )));
        }
        Self::from_table(name, j.table.clone(), j.identity)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order,
            table: (0..self.order)
                .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
                .collect(),
            identity: self.identity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// Greedy generating set: repeatedly adds the smallest element outside
    /// the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        while span.len() < self.order {
            let next = (0..self.order).find(|x| span.binary_search(x).is_err()).expect("proper subgroup");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }

    /// The subgroup on `elements` (which must be closed) re-indexed from 0,
    /// with the embedding into `self`.
    pub fn subgroup(&self, name: impl Into<String>, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.binary_search(&x).ok();
        let mut table = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                row.push(pos(self.mul(a, b)).ok_or_else(|| {
                    GroupError::InvalidTable("subset is not closed under multiplication".into())
                })?);
            }
            table.push(row);
        }
        let id = pos(self.identity).ok_or_else(|| GroupError::InvalidTable("subset lacks the identity".into()))?;
        Ok((FiniteGroup::from_table(name, table, id)?, elems))
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("z{n}"), table, 0).expect("cyclic group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Self::from_table(
            format!("{}x{}", a.name, b.name),
            table,
            a.identity * nb + b.identity,
        )
        .expect("direct product")
    }

    pub fn klein4() -> Self {
        let mut g = Self::direct_product(&Self::cyclic(2), &Self::cyclic(2));
        g.name = "klein4".into();
        g
    }

    /// Permutation group generated by `gens` (images of 0..k). Elements are
    /// sorted lexicographically, so the identity comes first.
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Self {
        let k = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..k).collect();
        let mut elems = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                // (x·g)(i) = x(g(i))
                let y: Vec<usize> = g.iter().map(|&i| x[i]).collect();
                if elems.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index = |p: &Vec<usize>| elems.binary_search(p).expect("closed");
        let table = elems
            .iter()
            .map(|x| {
                elems
                    .iter()
                    .map(|y| index(&y.iter().map(|&i| x[i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(name, table, 0).expect("permutation group")
    }

    pub fn s3() -> Self {
        Self::from_permutations("s3", &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn a4() -> Self {
        Self::from_permutations("a4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    /// Quaternion group, elements ordered 1, i, j, k, −1, −i, −j, −k.
    pub fn q8() -> Self {
        // unit products: UNIT[a][b] = (sign, unit) with 0=1, 1=i, 2=j, 3=k
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let table = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (s, u) = UNIT[x % 4][y % 4];
                        let neg = s ^ (x >= 4) ^ (y >= 4);
                        u + if neg { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        Self::from_table("q8", table, 0).expect("quaternion group")
    }

    /// `z<n>`, `klein4` (also `z2xz2`), `s3`, `q8`, `a4`.
    pub fn builtin(name: &str) -> Result<Arc<Self>, GroupError> {
        let t = name.trim().to_ascii_lowercase();
        let g = match t.as_str() {
            "klein4" | "z2xz2" | "v4" => Self::klein4(),
            "s3" => Self::s3(),
            "q8" => Self::q8(),
            "a4" => Self::a4(),
            _ => match t.strip_prefix('z').and_then(|r| r.parse::<usize>().ok()) {
                Some(n) if (1..=64).contains(&n) => Self::cyclic(n),
                _ => return Err(GroupError::Unknown(name.to_string())),
            },
        };
        Ok(Arc::new(g))
    }
}

/// Homomorphism between finite groups given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(GroupError::InvalidTable("homomorphism table has wrong shape".into()));
        }
        for p in 0..source.order() {
            for q in 0..source.order() {
                if map[source.mul(p, q)] != target.mul(map[p], map[q]) {
                    return Err(GroupError::NotHomomorphism(p, q));
                }
            }
        }
        Ok(Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map,
        })
    }

    pub fn identity_map(g: &Arc<FiniteGroup>) -> Self {
        Self {
            source: Arc::clone(g),
            target: Arc::clone(g),
            map: (0..g.order()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let img: BTreeSet<_> = self.map.iter().collect();
        img.len() == self.target.order()
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&x| self.map[x] == self.target.identity())
            .collect()
    }
}

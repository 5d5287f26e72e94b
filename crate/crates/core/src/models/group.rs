use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table over indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    identity: usize,
    #[serde(skip)]
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses over the full table.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::GroupTable("empty group".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::GroupTable(format!("table must be {n}x{n}")));
        }
        if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| table[i][j] >= n) {
            return Err(Error::GroupTable(format!("entry ({i}, {j}) = {} out of range", table[i][j])));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::GroupTable(format!("not associative at ({}, {}, {})", labels[a], labels[b], labels[c])));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::GroupTable("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::GroupTable(format!("{} has no inverse", labels[x])))?;
            inverse.push(inv);
        }
        Ok(GroupTable { labels, table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn trivial() -> Self {
        GroupTable::new(vec!["e".into()], vec![vec![0]]).expect("valid")
    }

    /// Z_n with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(labels, table).expect("valid")
    }

    /// The symmetric group on three letters. Elements are the permutations of
    /// (0 1 2) in lexicographic order of their images, composed as functions
    /// (`(pq)(i) = p(q(i))`).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels = vec!["e", "(23)", "(12)", "(123)", "(132)", "(13)"].into_iter().map(String::from).collect();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms.iter().map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect()).collect();
        GroupTable::new(labels, table).expect("valid")
    }

    /// Restricts to the subgroup on `elems` (which must be closed); returns the
    /// subgroup table, whose index `k` corresponds to `elems[k]`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<GroupTable> {
        let pos = |x: usize| elems.iter().position(|&y| y == x);
        let mut table = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                row.push(pos(self.mul(a, b)).ok_or_else(|| Error::GroupTable("subset is not closed under the product".into()))?);
            }
            table.push(row);
        }
        GroupTable::new(elems.iter().map(|&e| self.labels[e].clone()).collect(), table)
    }

    /// Index of the element with the given label.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl GroupTable {
    /// Re-validates after deserialization, which skips derived fields.
    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            labels: Vec<String>,
            table: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| Error::Format(format!("group table: {e}")))?;
        GroupTable::new(raw.labels, raw.table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_nonabelian_group() {
        let g = GroupTable::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let r = g.find("(123)").unwrap();
        assert_eq!(g.mul(r, r), g.find("(132)").unwrap());
        assert_eq!(g.inv(r), g.find("(132)").unwrap());
        let t = g.find("(12)").unwrap();
        assert_eq!(g.mul(t, t), g.identity());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(GroupTable::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(vec!["a".into()], vec![vec![3]]).is_err());
        assert!(GroupTable::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn a3_subgroup() {
        let g = GroupTable::symmetric3();
        let h = g.subgroup(&[0, 3, 4]).unwrap();
        assert!(h.is_abelian());
        assert_eq!(h.order(), 3);
        assert!(g.subgroup(&[0, 1, 2]).is_err());
    }

    #[test]
    fn json_roundtrip_revalidates() {
        let g = GroupTable::symmetric3();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(GroupTable::from_json(&s).unwrap(), g);
    }
}

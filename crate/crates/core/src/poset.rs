//! Finite posets over string element ids.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// Row-major bit matrix; `leq[a][b]` means `a ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            rows: vec![0u64; n * words],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Warshall closure, one word-row at a time.
    fn transitive_close(&mut self) {
        let (n, w) = (self.n, self.words);
        for k in 0..n {
            for i in 0..n {
                if self.get(i, k) {
                    for b in 0..w {
                        let kb = self.rows[k * w + b];
                        self.rows[i * w + b] |= kb;
                    }
                }
            }
        }
    }
}

/// A finite poset: elements are opaque string ids, sorted lexicographically,
/// with a reflexive-transitive-antisymmetric relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: BTreeMap<String, usize>,
    leq: BitMatrix,
}

impl Poset {
    /// Builds a poset from generating pairs `(a, b)` meaning `a ≤ b`.
    /// The reflexive-transitive closure is taken; antisymmetry of the closure
    /// is checked and a cycle is rejected.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Poset> {
        let mut elems: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Input(format!("duplicate poset element id {:?}", w[0])));
            }
        }
        let index: BTreeMap<String, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = elems.len();
        let mut leq = BitMatrix::new(n);
        for i in 0..n {
            leq.set(i, i);
        }
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::Input(format!("relation references unknown element {a:?}")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::Input(format!("relation references unknown element {b:?}")))?;
            leq.set(ia, ib);
        }
        leq.transitive_close();
        for i in 0..n {
            for j in i + 1..n {
                if leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::Input(format!(
                        "antisymmetry violated: {:?} ≤ {:?} ≤ {:?}",
                        elems[i], elems[j], elems[i]
                    )));
                }
            }
        }
        Ok(Poset {
            elements: elems,
            index,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn contains(&self, a: &str) -> bool {
        self.index.contains_key(a)
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.leq.get(i, j),
            _ => false,
        }
    }

    pub fn lt(&self, a: &str, b: &str) -> bool {
        a != b && self.leq(a, b)
    }

    /// All pairs `(a, b)` with `a < b`, lexicographic on `(a, b)`.
    pub fn strict_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if i != j && self.leq.get(i, j) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Elements strictly above `a`, sorted.
    pub fn above(&self, a: &str) -> Vec<String> {
        let i = self.index[a];
        self.elements
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && self.leq.get(i, *j))
            .map(|(_, e)| e.clone())
            .collect()
    }

    /// Elements strictly below `a`, sorted.
    pub fn below(&self, a: &str) -> Vec<String> {
        let i = self.index[a];
        self.elements
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && self.leq.get(*j, i))
            .map(|(_, e)| e.clone())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<String> {
        self.elements
            .iter()
            .filter(|a| self.above(a).is_empty())
            .cloned()
            .collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq.get(i, j) {
                    continue;
                }
                let mut is_cover = true;
                for k in 0..n {
                    if k != i && k != j && self.leq.get(i, k) && self.leq.get(k, j) {
                        is_cover = false;
                        break;
                    }
                }
                if is_cover {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Induced subposet on the given elements.
    pub fn restrict(&self, keep: &[String]) -> Result<Poset> {
        for e in keep {
            if !self.contains(e) {
                return Err(Error::Input(format!("unknown element {e:?}")));
            }
        }
        let pairs: Vec<(String, String)> = self
            .strict_pairs()
            .into_iter()
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .collect();
        Poset::new(keep, &pairs.iter().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>())
    }
}

/// A poset whose elements carry a dimension, e.g. a face poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoset {
    pub poset: Poset,
    pub dim: BTreeMap<String, usize>,
}

impl GradedPoset {
    pub fn new(poset: Poset, dim: BTreeMap<String, usize>) -> Result<GradedPoset> {
        for e in poset.elements() {
            if !dim.contains_key(e) {
                return Err(Error::Input(format!("element {e:?} has no dimension")));
            }
        }
        Ok(GradedPoset { poset, dim })
    }

    pub fn dim_of(&self, e: &str) -> usize {
        self.dim[e]
    }

    /// Element count per dimension, up to the maximum present.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim.values().copied().max().unwrap_or(0);
        let mut f = vec![0usize; top + 1];
        for e in self.poset.elements() {
            f[self.dim[e]] += 1;
        }
        if self.poset.is_empty() {
            return vec![];
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_antisymmetry() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq("a", "c"));
        assert!(p.leq("a", "a"));
        assert!(!p.leq("c", "a"));
        assert_eq!(p.strict_pairs().len(), 3);

        let err = Poset::new(&["x", "y"], &[("x", "y"), ("y", "x")]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn covers_of_chain() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            p.covers(),
            vec![
                ("a".to_string(), "b".to_string()),
                ("b".to_string(), "c".to_string())
            ]
        );
    }

    #[test]
    fn antichain_has_no_pairs() {
        let p = Poset::new(&["a", "b", "c"], &[]).unwrap();
        assert!(p.strict_pairs().is_empty());
        assert_eq!(p.maximal_elements().len(), 3);
    }
}

//! Δ-sets: graded finite cell sets with face operators and no degeneracies.

use std::collections::{BTreeMap, BTreeSet};

use crate::report::ValidationReport;
use crate::{Error, Result};

/// A finite Δ-set. `cells[n]` lists the n-cell ids (sorted); `faces[id]`
/// gives the targets of `d_0, …, d_n` for a cell of dimension `n ≥ 1`.
///
/// The defining relation `d_i ∘ d_j = d_{j-1} ∘ d_i` for `i < j` is checked
/// by [`validate`](DeltaSet::validate), not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    cells: Vec<Vec<String>>,
    faces: BTreeMap<String, Vec<String>>,
}

impl DeltaSet {
    pub fn new(mut cells: Vec<Vec<String>>, faces: BTreeMap<String, Vec<String>>) -> DeltaSet {
        while cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        for dim in &mut cells {
            dim.sort();
        }
        DeltaSet { cells, faces }
    }

    /// Number of cells per dimension (the f-vector).
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    /// Largest dimension with a cell, or None for the empty Δ-set.
    pub fn top_dim(&self) -> Option<usize> {
        if self.cells.is_empty() {
            None
        } else {
            Some(self.cells.len() - 1)
        }
    }

    pub fn cells(&self, dim: usize) -> &[String] {
        self.cells.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn all_dims(&self) -> &[Vec<String>] {
        &self.cells
    }

    pub fn faces_of(&self, id: &str) -> Option<&[String]> {
        self.faces.get(id).map(|v| v.as_slice())
    }

    /// `d_i` of a cell, when the structure is intact.
    pub fn face(&self, id: &str, i: usize) -> Option<&str> {
        self.faces.get(id).and_then(|f| f.get(i)).map(|s| s.as_str())
    }

    /// Structural soundness plus the Δ-identity, with a witness per failure.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for dim_cells in &self.cells {
            for id in dim_cells {
                if !seen.insert(id) {
                    report.push("structure", id, "duplicate cell id");
                }
            }
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (n, dim_cells) in self.cells.iter().enumerate() {
            for id in dim_cells {
                index.insert(id, n);
            }
        }
        for (n, dim_cells) in self.cells.iter().enumerate() {
            for id in dim_cells {
                if n == 0 {
                    if self.faces.get(id).is_some_and(|f| !f.is_empty()) {
                        report.push("structure", id, "0-cell has face operators");
                    }
                    continue;
                }
                let Some(fs) = self.faces.get(id) else {
                    report.push("structure", id, format!("missing face list for {n}-cell"));
                    continue;
                };
                if fs.len() != n + 1 {
                    report.push(
                        "structure",
                        id,
                        format!("{n}-cell has {} faces, expected {}", fs.len(), n + 1),
                    );
                    continue;
                }
                for (i, t) in fs.iter().enumerate() {
                    match index.get(t.as_str()) {
                        None => report.push(
                            "structure",
                            id,
                            format!("d_{i} targets missing cell {t:?}"),
                        ),
                        Some(&m) if m + 1 != n => report.push(
                            "structure",
                            id,
                            format!("d_{i} targets {t:?} of dimension {m}, expected {}", n - 1),
                        ),
                        _ => {}
                    }
                }
            }
        }
        for id in self.faces.keys() {
            if !index.contains_key(id.as_str()) {
                report.push("structure", id, "face list for unknown cell");
            }
        }
        if !report.is_empty() {
            return report.sorted();
        }
        // Structure is sound; check d_i d_j = d_{j-1} d_i for i < j.
        for (n, dim_cells) in self.cells.iter().enumerate() {
            if n < 2 {
                continue;
            }
            for id in dim_cells {
                for j in 1..=n {
                    for i in 0..j {
                        let dj = self.face(id, j).unwrap();
                        let di = self.face(id, i).unwrap();
                        let lhs = self.face(dj, i);
                        let rhs = self.face(di, j - 1);
                        if lhs != rhs {
                            report.push(
                                "delta-identity",
                                id,
                                format!(
                                    "d_{i} d_{j} = {lhs:?} but d_{} d_{i} = {rhs:?}",
                                    j - 1
                                ),
                            );
                        }
                    }
                }
            }
        }
        report.sorted()
    }

    pub fn checked(self) -> Result<DeltaSet> {
        self.validate().into_result()?;
        Ok(self)
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let count = c.len() as i64;
                if n % 2 == 0 {
                    count
                } else {
                    -count
                }
            })
            .sum()
    }

    /// Applies an injective relabeling to every cell id. Fails if the map
    /// collides two ids.
    pub fn relabeled(&self, mut f: impl FnMut(usize, &str) -> String) -> Result<DeltaSet> {
        let mut names: BTreeMap<String, String> = BTreeMap::new();
        let mut used: BTreeSet<String> = BTreeSet::new();
        for (n, dim_cells) in self.cells.iter().enumerate() {
            for id in dim_cells {
                let new = f(n, id);
                if !used.insert(new.clone()) {
                    return Err(Error::Input(format!("relabeling collides at {new:?}")));
                }
                names.insert(id.clone(), new);
            }
        }
        let cells = self
            .cells
            .iter()
            .map(|dim| dim.iter().map(|id| names[id].clone()).collect())
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|(id, fs)| {
                (
                    names[id].clone(),
                    fs.iter().map(|t| names[t].clone()).collect(),
                )
            })
            .collect();
        Ok(DeltaSet::new(cells, faces))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle_delta() -> DeltaSet {
        // 1 vertex, 1 edge with d_0 = d_1 = the vertex: a circle.
        let mut faces = BTreeMap::new();
        faces.insert("e".to_string(), vec!["v".to_string(), "v".to_string()]);
        DeltaSet::new(vec![vec!["v".into()], vec!["e".into()]], faces)
    }

    #[test]
    fn circle_is_valid() {
        assert!(circle_delta().validate().is_empty());
        assert_eq!(circle_delta().euler_characteristic(), 0);
    }

    #[test]
    fn missing_face_target_is_reported() {
        let mut faces = BTreeMap::new();
        faces.insert("e".to_string(), vec!["v".to_string(), "w".to_string()]);
        let d = DeltaSet::new(vec![vec!["v".into()], vec!["e".into()]], faces);
        let report = d.validate();
        assert!(report.has_check("structure"));
        assert!(report.names_cell("e"));
    }

    #[test]
    fn broken_delta_identity_is_reported() {
        // A 2-cell over two edges whose faces do not interlock.
        let mut faces = BTreeMap::new();
        faces.insert("a".into(), vec!["v".into(), "v".into()]);
        faces.insert("b".into(), vec!["w".into(), "w".into()]);
        faces.insert("t".into(), vec!["a".into(), "b".into(), "a".into()]);
        let d = DeltaSet::new(
            vec![
                vec!["v".into(), "w".into()],
                vec!["a".into(), "b".into()],
                vec!["t".into()],
            ],
            faces,
        );
        assert!(d.validate().has_check("delta-identity"));
    }

    #[test]
    fn one_simplex_euler() {
        let mut faces = BTreeMap::new();
        faces.insert("e".to_string(), vec!["v1".to_string(), "v0".to_string()]);
        let d = DeltaSet::new(vec![vec!["v0".into(), "v1".into()], vec!["e".into()]], faces);
        assert!(d.validate().is_empty());
        assert_eq!(d.euler_characteristic(), 1);
    }
}

use std::collections::HashMap;

/// A sparse matrix over GF(2), stored column-wise as sorted row indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<Vec<usize>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from `(row, col)` entries; repeated entries cancel in pairs.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for (r, c) in entries {
            m.toggle(r, c);
        }
        m
    }

    /// Builds from explicit columns; each column is treated as a GF(2) sum.
    pub fn from_columns(rows: usize, columns: Vec<Vec<usize>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.sort_unstable();
                let mut out: Vec<usize> = Vec::with_capacity(col.len());
                for r in col {
                    assert!(r < rows, "row {r} out of range");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Gf2Matrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(
            r < self.rows && c < self.cols(),
            "entry ({r}, {c}) out of range"
        );
        let col = &mut self.columns[c];
        match col.binary_search(&r) {
            Ok(i) => {
                col.remove(i);
            }
            Err(i) => col.insert(i, r),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.columns[c].binary_search(&r).is_ok()
    }

    pub fn column(&self, c: usize) -> &[usize] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&r| (r, c)))
    }

    /// `self · rhs` over GF(2).
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: Vec<usize> = Vec::new();
                for &k in col {
                    acc = xor_sorted(&acc, &self.columns[k]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            rows: self.rows,
            columns,
        }
    }

    /// Rank by column reduction: each column is reduced against earlier
    /// pivots until its lowest entry is new or it vanishes.
    pub fn rank(&self) -> usize {
        let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
        for col in &self.columns {
            let mut col = col.clone();
            while let Some(&low) = col.last() {
                match pivots.get(&low) {
                    Some(p) => col = xor_sorted(&col, p),
                    None => {
                        pivots.insert(low, col);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn rank_gf2(m: &Gf2Matrix) -> usize {
    m.rank()
}

use std::fmt::Write as _;
use std::path::Path;

use crate::bits::{BinaryMatrix, BitVec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    File,
    EgLines,
    DualOrbit,
    Dense,
}

/// Sparse parity-check matrix stored as per-row column lists (0-based,
/// ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseParityMatrix {
    cols: usize,
    rows: Vec<Vec<usize>>,
    provenance: Provenance,
}

impl SparseParityMatrix {
    pub fn new(cols: usize, mut rows: Vec<Vec<usize>>, provenance: Provenance) -> Self {
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
            assert!(r.iter().all(|&c| c < cols), "column index out of range");
        }
        SparseParityMatrix {
            cols,
            rows,
            provenance,
        }
    }

    pub fn from_dense(m: &BinaryMatrix, provenance: Provenance) -> Self {
        SparseParityMatrix {
            cols: m.num_cols(),
            rows: m.rows().iter().map(|r| r.iter_ones().collect()).collect(),
            provenance,
        }
    }

    pub fn to_dense(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(
            self.cols,
            self.rows
                .iter()
                .map(|r| {
                    let mut v = BitVec::zeros(self.cols);
                    for &c in r {
                        v.set(c, true);
                    }
                    v
                })
                .collect(),
        )
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn num_edges(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for &c in r {
                w[c] += 1;
            }
        }
        w
    }

    /// Per-column row lists.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for &c in r {
                out[c].push(i);
            }
        }
        out
    }

    pub fn is_satisfied_by(&self, word: &BitVec) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().filter(|&&c| word.get(c)).count() % 2 == 0)
    }

    /// Fails with the first row that is not orthogonal to every generator row.
    pub fn check_orthogonal(&self, generator: &BinaryMatrix) -> Result<()> {
        if generator.num_cols() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: generator.num_cols(),
            });
        }
        for (i, r) in self.rows.iter().enumerate() {
            for g in generator.rows() {
                if r.iter().filter(|&&c| g.get(c)).count() % 2 == 1 {
                    return Err(Error::NotOrthogonal { row: i });
                }
            }
        }
        Ok(())
    }

    /// Serialises in alist format: `cols rows`, max degrees, column degrees,
    /// row degrees, then 1-based column and row index lists.
    pub fn to_alist(&self) -> String {
        let cols = self.columns();
        let mut s = String::new();
        let join = |v: &[usize], add: usize| {
            v.iter()
                .map(|x| (x + add).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let cw: Vec<usize> = cols.iter().map(Vec::len).collect();
        let rw = self.row_weights();
        writeln!(s, "{} {}", self.cols, self.rows.len()).unwrap();
        writeln!(
            s,
            "{} {}",
            cw.iter().max().copied().unwrap_or(0),
            rw.iter().max().copied().unwrap_or(0)
        )
        .unwrap();
        writeln!(s, "{}", join(&cw, 0)).unwrap();
        writeln!(s, "{}", join(&rw, 0)).unwrap();
        for c in &cols {
            writeln!(s, "{}", join(c, 1)).unwrap();
        }
        for r in &self.rows {
            writeln!(s, "{}", join(r, 1)).unwrap();
        }
        s
    }

    /// Parses alist text. Zero entries used as padding are skipped; the
    /// column lists must agree with the row lists.
    pub fn from_alist(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut numbers = |expect: Option<usize>| -> Result<(usize, Vec<usize>)> {
            let (ln, l) = lines.next().ok_or(Error::Alist {
                line: 0,
                msg: "unexpected end of file".into(),
            })?;
            let v = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Alist {
                        line: ln,
                        msg: format!("not an integer: {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(e) = expect {
                if v.len() != e {
                    return Err(Error::Alist {
                        line: ln,
                        msg: format!("expected {e} values, found {}", v.len()),
                    });
                }
            }
            Ok((ln, v))
        };
        let (_, dims) = numbers(Some(2))?;
        let (n, m) = (dims[0], dims[1]);
        numbers(Some(2))?;
        let (_, col_deg) = numbers(Some(n))?;
        let (_, row_deg) = numbers(Some(m))?;
        let mut col_lists = Vec::with_capacity(n);
        for &d in &col_deg {
            let (ln, v) = numbers(None)?;
            let v: Vec<usize> = v.into_iter().filter(|&x| x != 0).collect();
            if v.len() != d || v.iter().any(|&x| x > m) {
                return Err(Error::Alist {
                    line: ln,
                    msg: "column list does not match its degree".into(),
                });
            }
            col_lists.push(v);
        }
        let mut rows = Vec::with_capacity(m);
        for &d in &row_deg {
            let (ln, v) = numbers(None)?;
            let v: Vec<usize> = v.into_iter().filter(|&x| x != 0).collect();
            if v.len() != d || v.iter().any(|&x| x > n) {
                return Err(Error::Alist {
                    line: ln,
                    msg: "row list does not match its degree".into(),
                });
            }
            rows.push(v.into_iter().map(|x| x - 1).collect::<Vec<_>>());
        }
        let h = SparseParityMatrix::new(n, rows, Provenance::File);
        let mut from_rows = h.columns();
        for (c, list) in col_lists.iter().enumerate() {
            let mut want: Vec<usize> = list.iter().map(|x| x - 1).collect();
            want.sort_unstable();
            from_rows[c].sort_unstable();
            if want != from_rows[c] {
                return Err(Error::Alist {
                    line: 0,
                    msg: format!("column {} disagrees with the row lists", c + 1),
                });
            }
        }
        Ok(h)
    }

    pub fn read_alist(path: impl AsRef<Path>) -> Result<Self> {
        SparseParityMatrix::from_alist(&std::fs::read_to_string(path)?)
    }

    pub fn write_alist(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_alist())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alist_round_trip() {
        let h = SparseParityMatrix::new(
            6,
            vec![vec![0, 1, 3], vec![1, 2, 4], vec![0, 4, 5]],
            Provenance::Dense,
        );
        let text = h.to_alist();
        let back = SparseParityMatrix::from_alist(&text).unwrap();
        assert_eq!(back.rows(), h.rows());
        assert_eq!(back.provenance(), Provenance::File);
    }

    #[test]
    fn alist_accepts_zero_padding() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        let h = SparseParityMatrix::from_alist(text).unwrap();
        assert_eq!(h.rows(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn alist_rejects_inconsistent_lists() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n1\n1 2\n2 3\n";
        assert!(matches!(
            SparseParityMatrix::from_alist(text),
            Err(Error::Alist { .. })
        ));
        assert!(matches!(
            SparseParityMatrix::from_alist("3 2\n"),
            Err(Error::Alist { .. })
        ));
    }
}

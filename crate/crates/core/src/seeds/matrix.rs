//! Exchange matrices, quivers and their structural predicates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{gcd_all, rank, IntMatrix};

/// `B ∈ ℤ^{I × I_uf}`: one row per vertex, one column per mutable vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    entries: IntMatrix,
    mutable_rows: Vec<usize>,
}

impl ExchangeMatrix {
    /// `entries` has `|I|` rows and one column per entry of `mutable_rows`.
    pub fn new(entries: IntMatrix, mutable_rows: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != mutable_rows.len() {
                return Err(Error::Invalid(format!(
                    "exchange matrix row has {} entries, expected {}",
                    row.len(),
                    mutable_rows.len()
                )));
            }
        }
        if mutable_rows.iter().any(|&r| r >= n) || mutable_rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("mutable rows must be increasing vertex indices".into()));
        }
        Ok(ExchangeMatrix { entries, mutable_rows })
    }

    /// Takes the mutable columns of a full `I × I` matrix.
    pub fn from_square(full: &[Vec<i64>], mutable_rows: Vec<usize>) -> Result<Self> {
        let n = full.len();
        if full.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("square exchange matrix expected".into()));
        }
        let entries = full.iter().map(|r| mutable_rows.iter().map(|&k| r[k]).collect()).collect();
        Self::new(entries, mutable_rows)
    }

    pub fn num_vertices(&self) -> usize {
        self.entries.len()
    }

    pub fn num_mutable(&self) -> usize {
        self.mutable_rows.len()
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn mutable_rows(&self) -> &[usize] {
        &self.mutable_rows
    }

    pub fn is_mutable(&self, v: usize) -> bool {
        self.mutable_rows.binary_search(&v).is_ok()
    }

    /// Column position of the mutable vertex `k`.
    pub fn column_of(&self, k: usize) -> Option<usize> {
        self.mutable_rows.binary_search(&k).ok()
    }

    /// `b_{jk}` for any vertex `j` and mutable vertex `k`.
    pub fn get(&self, j: usize, k: usize) -> i64 {
        let c = self.column_of(k).expect("column index must be mutable");
        self.entries[j][c]
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        let c = self.column_of(k).expect("column index must be mutable");
        self.entries.iter().map(|r| r[c]).collect()
    }

    /// `B°`, indexed by mutable vertices.
    pub fn principal_part(&self) -> IntMatrix {
        self.mutable_rows.iter().map(|&r| self.entries[r].clone()).collect()
    }
}

/// Vertices with frozen markers and weighted arrows `(source, target, multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub frozen: Vec<bool>,
    pub arrows: Vec<(usize, usize, i64)>,
}

/// `b_{jk} = #(j → k) − #(k → j)` for mutable `k`.
pub fn quiver_to_matrix(q: &Quiver) -> Result<ExchangeMatrix> {
    let n = q.vertices.len();
    if q.frozen.len() != n {
        return Err(Error::Invalid("frozen markers do not match vertices".into()));
    }
    let mutable: Vec<usize> = (0..n).filter(|&i| !q.frozen[i]).collect();
    if mutable.is_empty() {
        return Err(Error::Invalid("quiver has no mutable vertex".into()));
    }
    let mut entries = vec![vec![0i64; mutable.len()]; n];
    for &(s, t, m) in &q.arrows {
        if s >= n || t >= n {
            return Err(Error::Invalid(format!("arrow ({s}, {t}) out of range")));
        }
        if s == t {
            return Err(Error::Invalid(format!("loop at vertex {}", q.vertices[s])));
        }
        if let Ok(c) = mutable.binary_search(&t) {
            entries[s][c] += m;
        }
        if let Ok(c) = mutable.binary_search(&s) {
            entries[t][c] -= m;
        }
    }
    ExchangeMatrix::new(entries, mutable)
}

pub fn matrix_mutate(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    let ck = b.column_of(k).ok_or_else(|| Error::FrozenVertex(format!("#{}", k + 1)))?;
    let n = b.num_vertices();
    let mut out = b.entries.clone();
    for i in 0..n {
        for (cj, &j) in b.mutable_rows.iter().enumerate() {
            let bij = b.entries[i][cj];
            out[i][cj] = if i == k || j == k {
                -bij
            } else {
                let bik = b.entries[i][ck];
                let bkj = b.entries[k][cj];
                bij + bik.signum() * (bik * bkj).max(0)
            };
        }
    }
    Ok(ExchangeMatrix { entries: out, mutable_rows: b.mutable_rows.clone() })
}

pub fn matrix_is_maximal_rank(b: &ExchangeMatrix) -> bool {
    rank(&b.entries) == b.num_mutable()
}

pub fn matrix_is_primitive(b: &ExchangeMatrix) -> bool {
    (0..b.num_mutable()).all(|c| gcd_all(&b.entries.iter().map(|r| r[c]).collect::<Vec<_>>()) == 1)
}

/// A positive integer diagonal `D` with `D·B` skew-symmetric, if one exists.
pub fn is_skew_symmetrizable(b: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            let (x, y) = (b[i][j], b[j][i]);
            if (x == 0) != (y == 0) || x * y > 0 {
                return None;
            }
        }
    }
    // d_j = -d_i b_ij / b_ji along a spanning forest
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(BigRational::one());
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if b[i][j] != 0 && d[j].is_none() {
                    let r = -(di.clone() * BigInt::from(b[i][j])) / BigInt::from(b[j][i]);
                    d[j] = Some(r);
                    stack.push(j);
                }
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
    let l = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = d.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let witness: Vec<i64> = ints.iter().map(|x| (x / &g).abs().to_i64()).collect::<Option<_>>()?;
    for i in 0..n {
        for j in 0..n {
            if witness[i] * b[i][j] != -witness[j] * b[j][i] {
                return None;
            }
        }
    }
    Some(witness)
}

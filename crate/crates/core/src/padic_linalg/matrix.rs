use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{PadicContext, PadicScalar};

/// Dense row-major matrix over ℤ/ℓ^N.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicMatrix {
    ctx: PadicContext,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Result of [`PadicMatrix::diagonalize`]: `u · m · v = d`.
///
/// `exponents[k]` is the valuation of `d[k][k]` for `k < min(rows, cols)`;
/// the diagonal entry is exactly ℓ^e (zero when e = N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    pub d: PadicMatrix,
    pub u: PadicMatrix,
    pub v: PadicMatrix,
    pub exponents: Vec<u32>,
}

impl PadicMatrix {
    pub fn zeros(ctx: PadicContext, rows: usize, cols: usize) -> Self {
        PadicMatrix { ctx, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ctx: PadicContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ctx.modulus();
        }
        m
    }

    pub fn from_i64_rows(ctx: PadicContext, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ctx, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = ctx.reduce_i64(v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given residue vectors.
    pub(crate) fn from_columns(ctx: PadicContext, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(ctx, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % ctx.modulus();
            }
        }
        m
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> PadicScalar {
        PadicScalar::new(self.ctx, self.data[i * self.cols + j])
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: PadicScalar) -> Result<()> {
        if value.context() != self.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", value.context(), self.ctx)));
        }
        self.data[i * self.cols + j] = value.residue();
        Ok(())
    }

    pub(crate) fn column_raw(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.raw(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<PadicScalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.raw(i, j) == if i == j { 1 % self.ctx.modulus() } else { 0 })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.raw(i, j);
            }
        }
        t
    }

    /// Column-stacked vector: entry (i, j) lands at index j·rows + i.
    pub(crate) fn vectorize(&self) -> Vec<u64> {
        (0..self.cols).flat_map(|j| self.column_raw(j)).collect()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let m = self.ctx.modulus() as u128;
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc = (acc + self.raw(i, k) as u128 * other.raw(k, j) as u128) % m;
                }
                out.data[i * other.cols + j] = acc as u64;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |c, a, b| c.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |c, a, b| c.sub(a, b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&PadicContext, u64, u64) -> u64) -> Result<Self> {
        self.check_ctx(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(&self.ctx, a, b)).collect();
        Ok(PadicMatrix { ctx: self.ctx, rows: self.rows, cols: self.cols, data })
    }

    pub(crate) fn mul_raw_vector(&self, x: &[u64]) -> Vec<u64> {
        debug_assert_eq!(x.len(), self.cols);
        let m = self.ctx.modulus() as u128;
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for (k, &xk) in x.iter().enumerate() {
                    acc = (acc + self.raw(i, k) as u128 * xk as u128) % m;
                }
                acc as u64
            })
            .collect()
    }

    pub fn mul_vector(&self, x: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        let raw = self.residues_of(x)?;
        Ok(self.mul_raw_vector(&raw).into_iter().map(|r| PadicScalar::new(self.ctx, r)).collect())
    }

    fn residues_of(&self, x: &[PadicScalar]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        x.iter()
            .map(|s| {
                if s.context() != self.ctx {
                    Err(Error::ContextMismatch(format!("{} vs {}", s.context(), self.ctx)))
                } else {
                    Ok(s.residue())
                }
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.ctx.mul(self.data[idx], s);
        }
    }

    /// row[target] -= q · row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: u64) {
        for j in 0..self.cols {
            let s = self.ctx.mul(q, self.data[source * self.cols + j]);
            let idx = target * self.cols + j;
            self.data[idx] = self.ctx.sub(self.data[idx], s);
        }
    }

    /// col[target] -= q · col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: u64) {
        for i in 0..self.rows {
            let s = self.ctx.mul(q, self.data[i * self.cols + source]);
            let idx = i * self.cols + target;
            self.data[idx] = self.ctx.sub(self.data[idx], s);
        }
    }

    /// Smith-type normal form over the local ring ℤ/ℓ^N.
    ///
    /// The pivot at each step is the entry of least valuation in the remaining
    /// block, first in row-major order. Diagonal entries come out as exact
    /// powers ℓ^e with non-decreasing e.
    pub fn diagonalize(&self) -> Diagonalization {
        let ctx = self.ctx;
        let n = ctx.precision();
        let mut d = self.clone();
        let mut u = Self::identity(ctx, self.rows);
        let mut v = Self::identity(ctx, self.cols);
        let steps = self.rows.min(self.cols);
        let mut exponents = Vec::with_capacity(steps);

        for k in 0..steps {
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for i in k..d.rows {
                for j in k..d.cols {
                    let val = ctx.valuation(d.raw(i, j));
                    if best.map_or(true, |(b, _, _)| val < b) {
                        best = Some((val, i, j));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let (e, pi, pj) = best.expect("non-empty block");
            if e == n {
                exponents.resize(steps, n);
                break;
            }
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let (_, unit) = ctx.split(d.raw(k, k));
            let inv = ctx.inverse(unit).expect("unit part is invertible");
            d.scale_row(k, inv);
            u.scale_row(k, inv);

            let pivot = ctx.prime_power(e);
            for i in k + 1..d.rows {
                let a = d.raw(i, k);
                if a != 0 {
                    let q = a / pivot;
                    d.row_axpy(i, k, q);
                    u.row_axpy(i, k, q);
                }
            }
            for j in k + 1..d.cols {
                let a = d.raw(k, j);
                if a != 0 {
                    let q = a / pivot;
                    d.col_axpy(j, k, q);
                    v.col_axpy(j, k, q);
                }
            }
            exponents.push(e);
        }

        Diagonalization { d, u, v, exponents }
    }

    /// Structure of (target)/im(self), where the target has `rows` coordinates.
    pub fn cokernel(&self) -> ModuleStructure {
        let diag = self.diagonalize();
        ModuleStructure::from_exponents(self.ctx.precision(), &diag.cokernel_exponents(self.rows))
    }

    /// Solves `self · x = b` exactly mod ℓ^N.
    pub fn solve(&self, b: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let raw: Vec<u64> = b
            .iter()
            .map(|s| {
                if s.context() != self.ctx {
                    Err(Error::ContextMismatch(format!("{} vs {}", s.context(), self.ctx)))
                } else {
                    Ok(s.residue())
                }
            })
            .collect::<Result<_>>()?;
        let x = self.diagonalize().solve_raw(&raw)?;
        Ok(x.into_iter().map(|r| PadicScalar::new(self.ctx, r)).collect())
    }

    /// Generators of {x : self · x = 0} over ℤ/ℓ^N. Each generator is scaled
    /// so that its first nonzero entry is a power of ℓ.
    pub fn kernel(&self) -> Vec<Vec<PadicScalar>> {
        let diag = self.diagonalize();
        let ctx = self.ctx;
        let n = ctx.precision();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            let e = diag.exponents.get(j).copied().unwrap_or(n);
            if e == 0 {
                continue;
            }
            let scale = ctx.prime_power(n - e);
            let mut vec: Vec<u64> = diag.v.column_raw(j).into_iter().map(|x| ctx.mul(x, scale)).collect();
            if let Some(&lead) = vec.iter().find(|&&x| x != 0) {
                let (_, unit) = ctx.split(lead);
                let inv = ctx.inverse(unit).expect("unit");
                for x in vec.iter_mut() {
                    *x = ctx.mul(*x, inv);
                }
                basis.push(vec.into_iter().map(|r| PadicScalar::new(ctx, r)).collect());
            }
        }
        basis
    }

    /// Solution if one exists, together with kernel generators.
    pub fn solve_or_kernel(&self, b: &[PadicScalar]) -> (Result<Vec<PadicScalar>>, Vec<Vec<PadicScalar>>) {
        (self.solve(b), self.kernel())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.diagonalize().exponents.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let diag = self.diagonalize();
        if diag.exponents.iter().any(|&e| e != 0) {
            return Err(Error::NotInvertible(self.ctx.modulus()));
        }
        // u m v = 1, so m^{-1} = v u.
        diag.v.mul(&diag.u)
    }
}

impl Diagonalization {
    /// Exponents of the cokernel summands for a target of dimension `rows`:
    /// rows past the diagonal are free.
    pub fn cokernel_exponents(&self, rows: usize) -> Vec<u32> {
        let n = self.d.context().precision();
        let mut exps = self.exponents.clone();
        exps.resize(rows, n);
        exps
    }

    pub(crate) fn solve_raw(&self, b: &[u64]) -> Result<Vec<u64>> {
        let ctx = self.d.context();
        let n = ctx.precision();
        let c = self.u.mul_raw_vector(b);
        let mut y = vec![0u64; self.d.cols()];
        for (row, &ci) in c.iter().enumerate() {
            let e = self.exponents.get(row).copied().unwrap_or(n);
            let val = ctx.valuation(ci);
            if val < e {
                return Err(Error::NoSolutionAtPrecision { row, valuation: val, required: e });
            }
            if e < n {
                y[row] = ci / ctx.prime_power(e);
            }
        }
        Ok(self.v.mul_raw_vector(&y))
    }
}

impl fmt::Display for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.ctx.signed(self.raw(i, j)).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Elementary-divisor description of a finitely presented ℤ/ℓ^N-module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleStructure {
    /// Summands ℤ/ℓ^N, i.e. free at this precision.
    pub free_rank: usize,
    /// Exponents e with 1 ≤ e < N, sorted; one ℤ/ℓ^e summand each.
    pub torsion_exponents: Vec<u32>,
    pub precision: u32,
}

impl ModuleStructure {
    pub fn from_exponents(precision: u32, exponents: &[u32]) -> Self {
        let free_rank = exponents.iter().filter(|&&e| e >= precision).count();
        let mut torsion_exponents: Vec<u32> =
            exponents.iter().copied().filter(|&e| e > 0 && e < precision).collect();
        torsion_exponents.sort_unstable();
        ModuleStructure { free_rank, torsion_exponents, precision }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion_exponents.is_empty()
    }
}

impl fmt::Display for ModuleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free rank {}", self.free_rank)?;
        if self.torsion_exponents.is_empty() {
            write!(f, ", no torsion")?;
        } else {
            let parts: Vec<String> = self.torsion_exponents.iter().map(|e| format!("Z/l^{e}")).collect();
            write!(f, ", torsion {}", parts.join(" + "))?;
        }
        write!(f, " (at precision {})", self.precision)
    }
}

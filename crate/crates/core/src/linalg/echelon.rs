//! Incremental sparse row reduction.
//!
//! Rows are fed one at a time into a semi-echelon store (distinct leading
//! columns). Only the row space is kept, so a system with many redundant rows
//! never has to be materialized. Prime fields use plain Gaussian steps with
//! normalized pivots; ℚ rows are kept as primitive integer vectors and
//! reduced fraction-free.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{inv_mod, FieldDesc, Scalar};

type SparseRow<E> = Vec<(usize, E)>;

trait Coeffs {
    type E: Clone;

    fn import(&self, row: &[(usize, Scalar)]) -> SparseRow<Self::E>;
    /// Brings a nonzero row into canonical storage form.
    fn normalize(&self, row: &mut SparseRow<Self::E>);
    /// Removes column `col` from `target` using `pivot`, whose leading column is `col`.
    fn eliminate(&self, target: &SparseRow<Self::E>, pivot: &SparseRow<Self::E>, col: usize) -> SparseRow<Self::E>;
    /// Exports a row scaled so its leading entry is 1.
    fn export_monic(&self, row: &SparseRow<Self::E>) -> Vec<(usize, Scalar)>;
}

struct PrimeCoeffs {
    p: u64,
}

impl Coeffs for PrimeCoeffs {
    type E = u64;

    fn import(&self, row: &[(usize, Scalar)]) -> SparseRow<u64> {
        let mut out: SparseRow<u64> = row
            .iter()
            .filter_map(|(c, s)| {
                let v = s.residue().expect("prime-field scalar");
                (v != 0).then_some((*c, v))
            })
            .collect();
        merge_duplicates(&mut out, |a, b| (a + b) % self.p, |v| *v == 0);
        out
    }

    fn normalize(&self, row: &mut SparseRow<u64>) {
        let lead = row[0].1;
        if lead != 1 {
            let inv = inv_mod(lead, self.p);
            for (_, v) in row.iter_mut() {
                *v = *v * inv % self.p;
            }
        }
    }

    fn eliminate(&self, target: &SparseRow<u64>, pivot: &SparseRow<u64>, col: usize) -> SparseRow<u64> {
        let p = self.p;
        let factor = target
            .iter()
            .find(|(c, _)| *c == col)
            .map(|(_, v)| *v)
            .expect("column present");
        // target - factor * pivot, pivot[col] == 1
        let neg = p - factor;
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            let ci = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ci < cj {
                out.push(target[i]);
                i += 1;
            } else if cj < ci {
                out.push((cj, pivot[j].1 * neg % p));
                j += 1;
            } else {
                let v = (target[i].1 + pivot[j].1 * neg) % p;
                if v != 0 {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn export_monic(&self, row: &SparseRow<u64>) -> Vec<(usize, Scalar)> {
        let inv = inv_mod(row[0].1, self.p);
        row.iter()
            .map(|(c, v)| (*c, Scalar::from_residue(v * inv % self.p, self.p)))
            .collect()
    }
}

struct RationalCoeffs;

impl Coeffs for RationalCoeffs {
    type E = BigInt;

    fn import(&self, row: &[(usize, Scalar)]) -> SparseRow<BigInt> {
        let mut qs: Vec<(usize, BigRational)> = row
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (*c, s.as_rational().expect("rational scalar").clone()))
            .collect();
        merge_duplicates(&mut qs, |a, b| a + b, |v| v.is_zero());
        let lcm = qs
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        qs.into_iter()
            .map(|(c, q)| (c, q.numer() * (&lcm / q.denom())))
            .collect()
    }

    fn normalize(&self, row: &mut SparseRow<BigInt>) {
        let mut g = BigInt::zero();
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if row[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in row.iter_mut() {
                *v = &*v / &g;
            }
        }
    }

    fn eliminate(&self, target: &SparseRow<BigInt>, pivot: &SparseRow<BigInt>, col: usize) -> SparseRow<BigInt> {
        let t = target
            .iter()
            .find(|(c, _)| *c == col)
            .map(|(_, v)| v.clone())
            .expect("column present");
        let s = pivot[0].1.clone();
        let g = t.gcd(&s);
        let (t, s) = (&t / &g, &s / &g);
        // s * target - t * pivot
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            let ci = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ci < cj {
                out.push((ci, &s * &target[i].1));
                i += 1;
            } else if cj < ci {
                out.push((cj, -(&t * &pivot[j].1)));
                j += 1;
            } else {
                let v = &s * &target[i].1 - &t * &pivot[j].1;
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        if !out.is_empty() {
            self.normalize(&mut out);
        }
        out
    }

    fn export_monic(&self, row: &SparseRow<BigInt>) -> Vec<(usize, Scalar)> {
        let lead = row[0].1.clone();
        row.iter()
            .map(|(c, v)| (*c, Scalar::from_rational(BigRational::new(v.clone(), lead.clone()))))
            .collect()
    }
}

fn merge_duplicates<E: Clone>(row: &mut Vec<(usize, E)>, add: impl Fn(&E, &E) -> E, zero: impl Fn(&E) -> bool) {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, E)> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = add(lv, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !zero(v));
    *row = out;
}

struct Echelon<C: Coeffs> {
    coeffs: C,
    rows: Vec<SparseRow<C::E>>,
    pivot_row: HashMap<usize, usize>,
}

impl<C: Coeffs> Echelon<C> {
    fn new(coeffs: C) -> Self {
        Echelon {
            coeffs,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    /// Reduces leading entries until the leading column is not a pivot.
    fn reduce(&self, mut row: SparseRow<C::E>) -> SparseRow<C::E> {
        while let Some(&(lead, _)) = row.first() {
            match self.pivot_row.get(&lead) {
                Some(&r) => row = self.coeffs.eliminate(&row, &self.rows[r], lead),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: SparseRow<C::E>) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        self.coeffs.normalize(&mut row);
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    fn rref(&self) -> (Vec<Vec<(usize, Scalar)>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut reduced: HashMap<usize, SparseRow<C::E>> = HashMap::new();
        for &r in order.iter().rev() {
            let mut row = self.rows[r].clone();
            let lead = row[0].0;
            let hits: Vec<usize> = row
                .iter()
                .skip(1)
                .map(|(c, _)| *c)
                .filter(|c| self.pivot_row.contains_key(c))
                .collect();
            for c in hits {
                let pivot = &reduced[&c];
                row = self.coeffs.eliminate(&row, pivot, c);
            }
            debug_assert_eq!(row[0].0, lead);
            reduced.insert(lead, row);
        }
        let pivots: Vec<usize> = order.iter().map(|&r| self.rows[r][0].0).collect();
        let rows = pivots
            .iter()
            .map(|c| self.coeffs.export_monic(&reduced[c]))
            .collect();
        (rows, pivots)
    }
}

enum Engine {
    Prime(Echelon<PrimeCoeffs>),
    Rational(Echelon<RationalCoeffs>),
}

/// Reduced row-echelon data: sparse monic rows sorted by pivot column.
#[derive(Debug, Clone)]
pub struct SparseRref {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, Scalar)>>,
    pub pivots: Vec<usize>,
}

/// An incrementally maintained row space over a fixed number of columns.
pub struct EchelonBuilder {
    field: FieldDesc,
    cols: usize,
    engine: Engine,
}

impl EchelonBuilder {
    pub fn new(field: FieldDesc, cols: usize) -> Self {
        let engine = match field {
            FieldDesc::Prime(p) => Engine::Prime(Echelon::new(PrimeCoeffs { p })),
            FieldDesc::Rationals => Engine::Rational(Echelon::new(RationalCoeffs)),
        };
        EchelonBuilder { field, cols, engine }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        match &self.engine {
            Engine::Prime(e) => e.rows.len(),
            Engine::Rational(e) => e.rows.len(),
        }
    }

    /// Adds a sparse row (duplicate columns are summed). Returns whether the
    /// rank grew.
    pub fn push(&mut self, row: &[(usize, Scalar)]) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        match &mut self.engine {
            Engine::Prime(e) => {
                let r = e.coeffs.import(row);
                e.insert(r)
            }
            Engine::Rational(e) => {
                let r = e.coeffs.import(row);
                e.insert(r)
            }
        }
    }

    pub fn push_dense(&mut self, row: &[Scalar]) -> bool {
        let sparse: Vec<(usize, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c, s.clone()))
            .collect();
        self.push(&sparse)
    }

    /// Whether a sparse row lies in the current row space.
    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        match &self.engine {
            Engine::Prime(e) => e.reduce(e.coeffs.import(row)).is_empty(),
            Engine::Rational(e) => e.reduce(e.coeffs.import(row)).is_empty(),
        }
    }

    pub fn contains_dense(&self, row: &[Scalar]) -> bool {
        let sparse: Vec<(usize, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c, s.clone()))
            .collect();
        self.contains(&sparse)
    }

    pub fn rref(&self) -> SparseRref {
        let (rows, pivots) = match &self.engine {
            Engine::Prime(e) => e.rref(),
            Engine::Rational(e) => e.rref(),
        };
        SparseRref {
            cols: self.cols,
            rows,
            pivots,
        }
    }
}

impl SparseRref {
    /// Basis of the null space `{v : row·v = 0 for every row}`, one vector
    /// per free column (dense).
    pub fn null_space(&self, field: FieldDesc) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut free_pos = vec![usize::MAX; self.cols];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let zero = field.zero();
        let mut out: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = field.one();
                v
            })
            .collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, s) in row.iter().skip(1) {
                let k = free_pos[*c];
                debug_assert!(k != usize::MAX, "RREF row touches another pivot");
                out[k][p] = -s;
            }
        }
        out
    }
}

//! Exact integer linear algebra: Smith normal form, cokernels, element
//! orders, and finitely generated abelian group arithmetic.
//!
//! Everything here runs over arbitrary-precision integers; no floating
//! point is used anywhere. Elimination pivots on the entry of minimal
//! absolute value, breaking ties by smallest (row, column) index, so
//! identical inputs always produce identical output.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZlinError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense matrix of exact integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntegerMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Horizontal concatenation `[left | right]`; row counts must agree.
    pub fn hstack(left: &Self, right: &Self) -> Self {
        assert_eq!(left.rows, right.rows, "hstack: row count mismatch");
        Self::from_fn(left.rows, left.cols + right.cols, |r, c| {
            if c < left.cols {
                left.at(r, c).clone()
            } else {
                right.at(r, c - left.cols).clone()
            }
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "mul: dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.at(r, k) * rhs.at(k, c);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rank over Z/p for a machine-word prime. This is a probabilistic
    /// lower bound on the rank over Z; the certified rank always comes
    /// from the Smith normal form.
    pub fn rank_mod(&self, p: u64) -> usize {
        assert!(p >= 2);
        let p_big = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| {
                        let m = self.at(r, c).mod_floor(&p_big);
                        u64::try_from(m).expect("mod_floor result fits in u64")
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = mod_inverse(a[rank][col], p);
            for r in 0..self.rows {
                if r != rank && a[r][col] != 0 {
                    let factor = (a[r][col] as u128 * inv as u128 % p as u128) as u64;
                    for c in col..self.cols {
                        let sub = (factor as u128 * a[rank][c] as u128 % p as u128) as u64;
                        a[r][c] = ((a[r][c] as u128 + p as u128 - sub as u128) % p as u128) as u64;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a != 0 mod p.
    let mut base = a as u128 % p as u128;
    let mut exp = p - 2;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Unimodular transforms with `row * X * col = diag(d_1, ..., d_r, 0, ...)`.
#[derive(Clone, Debug)]
pub struct SmithTransforms {
    pub row: IntegerMatrix,
    pub col: IntegerMatrix,
}

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    rows: usize,
    cols: usize,
    invariant_factors: Vec<BigUint>,
    transforms: Option<SmithTransforms>,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn transforms(&self) -> Option<&SmithTransforms> {
        self.transforms.as_ref()
    }

    /// The diagonal form, same dimensions as the input matrix.
    pub fn to_diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, BigInt::from(f.clone()));
        }
        d
    }
}

struct Eliminator {
    x: IntegerMatrix,
    row: Option<IntegerMatrix>,
    col: Option<IntegerMatrix>,
}

impl Eliminator {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.x.cols {
            self.x.data.swap(i * self.x.cols + c, j * self.x.cols + c);
        }
        if let Some(u) = &mut self.row {
            for c in 0..u.cols {
                u.data.swap(i * u.cols + c, j * u.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.x.rows {
            self.x.data.swap(r * self.x.cols + i, r * self.x.cols + j);
        }
        if let Some(v) = &mut self.col {
            for r in 0..v.rows {
                v.data.swap(r * v.cols + i, r * v.cols + j);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.x.cols {
            let add = self.x.at(src, c) * q;
            self.x.data[dst * self.x.cols + c] += add;
        }
        if let Some(u) = &mut self.row {
            for c in 0..u.cols {
                let add = u.at(src, c) * q;
                u.data[dst * u.cols + c] += add;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.x.rows {
            let add = self.x.at(r, src) * q;
            self.x.data[r * self.x.cols + dst] += add;
        }
        if let Some(v) = &mut self.col {
            for r in 0..v.rows {
                let add = v.at(r, src) * q;
                v.data[r * v.cols + dst] += add;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.x.cols {
            let neg = -self.x.at(i, c).clone();
            self.x.data[i * self.x.cols + c] = neg;
        }
        if let Some(u) = &mut self.row {
            for c in 0..u.cols {
                let neg = -u.at(i, c).clone();
                u.data[i * u.cols + c] = neg;
            }
        }
    }

    /// Minimal-absolute-value nonzero entry of the trailing submatrix,
    /// ties broken by smallest row then column.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.x.rows {
            for c in t..self.x.cols {
                let v = self.x.at(r, c);
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((r, c)),
                    Some((br, bc)) => {
                        if v.abs() < self.x.at(br, bc).abs() {
                            best = Some((r, c));
                        }
                    }
                }
            }
        }
        best
    }
}

/// Smith normal form of `x`. With `with_transforms` the unimodular row and
/// column transforms are produced and satisfy `row * x * col = diagonal`.
pub fn smith_normal_form(x: &IntegerMatrix, with_transforms: bool) -> SmithDecomposition {
    let (rows, cols) = (x.rows, x.cols);
    let mut e = Eliminator {
        x: x.clone(),
        row: with_transforms.then(|| IntegerMatrix::identity(rows)),
        col: with_transforms.then(|| IntegerMatrix::identity(cols)),
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = e.find_pivot(t) else {
            break;
        };
        e.swap_rows(t, pr);
        e.swap_cols(t, pc);

        // Clear row and column t. Each incomplete division shrinks the
        // pivot, so this terminates.
        loop {
            let mut stable = true;
            for r in t + 1..rows {
                if !e.x.at(r, t).is_zero() {
                    let q = e.x.at(r, t).div_floor(e.x.at(t, t));
                    e.add_row(r, t, &(-q));
                    if !e.x.at(r, t).is_zero() {
                        e.swap_rows(t, r);
                        stable = false;
                    }
                }
            }
            for c in t + 1..cols {
                if !e.x.at(t, c).is_zero() {
                    let q = e.x.at(t, c).div_floor(e.x.at(t, t));
                    e.add_col(c, t, &(-q));
                    if !e.x.at(t, c).is_zero() {
                        e.swap_cols(t, c);
                        stable = false;
                    }
                }
            }
            if stable {
                let col_clear = (t + 1..rows).all(|r| e.x.at(r, t).is_zero());
                let row_clear = (t + 1..cols).all(|c| e.x.at(t, c).is_zero());
                if col_clear && row_clear {
                    break;
                }
            }
        }

        // Divisibility fixup: drag a non-multiple into row t and repeat.
        let pivot = e.x.at(t, t).clone();
        let bad = (t + 1..rows)
            .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !e.x.at(r, c).mod_floor(&pivot).is_zero());
        if let Some((r, _)) = bad {
            e.add_row(t, r, &BigInt::one());
            continue;
        }
        if e.x.at(t, t).is_negative() {
            e.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors: Vec<BigUint> = (0..t)
        .map(|i| {
            e.x.at(i, i)
                .to_biguint()
                .expect("diagonal entries are positive after normalization")
        })
        .collect();
    debug_assert!(invariant_factors
        .windows(2)
        .all(|w| (&w[1] % &w[0]).is_zero()));

    SmithDecomposition {
        rows,
        cols,
        invariant_factors,
        transforms: e.row.map(|row| SmithTransforms {
            row,
            col: e.col.expect("both transforms requested together"),
        }),
    }
}

/// Finitely generated abelian group in canonical form: free rank plus a
/// divisibility chain of invariant factors, each at least 2.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the canonical form from any list of cyclic orders; factors
    /// equal to 1 are dropped and the rest rearranged into a chain.
    pub fn new(free_rank: usize, cyclic_orders: Vec<BigUint>) -> Self {
        let mut primary: Vec<(BigUint, u32)> = Vec::new();
        for d in cyclic_orders {
            assert!(!d.is_zero(), "cyclic order must be positive");
            primary.extend(factorize(&d));
        }
        AbelianGroup {
            free_rank,
            torsion: chain_from_primary(primary),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Torsion as a sorted multiset of prime powers (p, exponent).
    pub fn primary_parts(&self) -> Vec<(BigUint, u32)> {
        let mut parts: Vec<(BigUint, u32)> = self.torsion.iter().flat_map(factorize).collect();
        parts.sort();
        parts
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        AbelianGroup::new(self.free_rank + other.free_rank, orders)
    }

    /// Tensor product over the integers.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for m in &self.torsion {
            for _ in 0..other.free_rank {
                orders.push(m.clone());
            }
        }
        for n in &other.torsion {
            for _ in 0..self.free_rank {
                orders.push(n.clone());
            }
        }
        for m in &self.torsion {
            for n in &other.torsion {
                let g = m.gcd(n);
                if !g.is_one() {
                    orders.push(g);
                }
            }
        }
        AbelianGroup::new(self.free_rank * other.free_rank, orders)
    }

    /// Tor(-, -): free parts contribute nothing, cyclic parts their gcd.
    pub fn tor_product(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for m in &self.torsion {
            for n in &other.torsion {
                let g = m.gcd(n);
                if !g.is_one() {
                    orders.push(g);
                }
            }
        }
        AbelianGroup::new(0, orders)
    }

    /// Rendering like `Z^2 (+) (Z/2)^4 (+) Z/3`, torsion in primary form.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        let primary = self.primary_parts();
        let mut i = 0;
        while i < primary.len() {
            let mut j = i;
            while j < primary.len() && primary[j] == primary[i] {
                j += 1;
            }
            let value = pow(&primary[i].0, primary[i].1);
            if j - i == 1 {
                parts.push(format!("Z/{value}"));
            } else {
                parts.push(format!("(Z/{value})^{}", j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" (+) ")
        }
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self.render())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn pow(base: &BigUint, exp: u32) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Trial-division factorization; torsion orders here stay small.
fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Rebuilds the invariant-factor chain from a multiset of prime powers.
fn chain_from_primary(primary: Vec<(BigUint, u32)>) -> Vec<BigUint> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
    for (p, e) in primary {
        by_prime.entry(p).or_default().push(e);
    }
    let mut slots = 0;
    for exps in by_prime.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        slots = slots.max(exps.len());
    }
    // Slot 0 collects the largest exponent of every prime, so the chain
    // read back-to-front satisfies divisibility.
    let mut chain = Vec::new();
    for slot in 0..slots {
        let mut d = BigUint::one();
        for (p, exps) in &by_prime {
            if let Some(&e) = exps.get(slot) {
                d *= pow(p, e);
            }
        }
        chain.push(d);
    }
    chain.reverse();
    chain
}

/// Cokernel of `x` as a map into Z^rows: Z^rows / (column span of x).
pub fn cokernel(x: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form(x, false);
    let torsion = snf
        .invariant_factors()
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    AbelianGroup::new(x.rows() - snf.rank(), torsion)
}

/// Order of an element of a cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigUint),
    Infinite,
}

impl ElementOrder {
    pub fn is_finite(&self) -> bool {
        matches!(self, ElementOrder::Finite(_))
    }
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(k) => write!(f, "{k}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Minimal k >= 1 with k*v in the column span of `x` over the integers,
/// or `Infinite` if no such k exists.
pub fn element_order_in_cokernel(
    x: &IntegerMatrix,
    v: &[BigInt],
) -> Result<ElementOrder, ZlinError> {
    if v.len() != x.rows() {
        return Err(ZlinError::DimensionMismatch {
            expected: x.rows(),
            got: v.len(),
        });
    }
    let snf = smith_normal_form(x, true);
    let transforms = snf.transforms().expect("transforms were requested");
    let coords = transforms.row.mul_vec(v);
    let r = snf.rank();
    if coords[r..].iter().any(|c| !c.is_zero()) {
        return Ok(ElementOrder::Infinite);
    }
    let mut order = BigUint::one();
    for (d, c) in snf.invariant_factors().iter().zip(&coords[..r]) {
        let c_mod = c.mod_floor(&BigInt::from(d.clone()));
        let c_abs = c_mod
            .to_biguint()
            .expect("mod_floor by positive is nonnegative");
        // gcd(d, 0) = d, so a zero coordinate contributes order 1.
        let this = d / d.gcd(&c_abs);
        order = order.lcm(&this);
    }
    Ok(ElementOrder::Finite(order))
}

pub fn ones_vector(n: usize) -> Vec<BigInt> {
    vec![BigInt::one(); n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_u64(snf: &SmithDecomposition) -> Vec<u64> {
        snf.invariant_factors()
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diag_2_3_has_factors_1_6() {
        let x = IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&x, false);
        assert_eq!(factors_u64(&snf), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_has_rank_0() {
        let x = IntegerMatrix::zeros(3, 2);
        let snf = smith_normal_form(&x, false);
        assert_eq!(snf.rank(), 0);
        assert!(snf.invariant_factors().is_empty());
    }

    #[test]
    fn empty_matrix_is_fine() {
        let x = IntegerMatrix::zeros(0, 0);
        assert_eq!(smith_normal_form(&x, true).rank(), 0);
        assert!(cokernel(&x).is_trivial());
    }

    #[test]
    fn free_group_matrix_i_minus_m() {
        // I - M for the degree-4 tree matrix; a 2x2 minor of value -1
        // exists, so both factors are 1.
        let m = IntegerMatrix::from_i64_rows(&[
            vec![1, 0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 1, 0],
            vec![1, 1, 0, 1],
        ]);
        let x = IntegerMatrix::from_fn(4, 4, |r, c| {
            let id: i64 = if r == c { 1 } else { 0 };
            BigInt::from(id) - m.at(r, c)
        });
        let snf = smith_normal_form(&x, false);
        assert_eq!(snf.rank(), 2);
        assert_eq!(factors_u64(&snf), vec![1, 1]);
        let g = cokernel(&x);
        assert_eq!(g, AbelianGroup::free(2));
    }

    #[test]
    fn transforms_reconstruct_diagonal() {
        let x = IntegerMatrix::from_i64_rows(&[vec![4, 6, 2], vec![6, 12, 0]]);
        let snf = smith_normal_form(&x, true);
        let t = snf.transforms().unwrap();
        assert_eq!(t.row.mul(&x).mul(&t.col), snf.to_diagonal_matrix());
    }

    #[test]
    fn cokernel_of_identity_is_trivial() {
        assert!(cokernel(&IntegerMatrix::identity(5)).is_trivial());
    }

    #[test]
    fn element_order_examples() {
        let x = IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let zero = vec![BigInt::zero(); 2];
        assert_eq!(
            element_order_in_cokernel(&x, &zero).unwrap(),
            ElementOrder::Finite(BigUint::one())
        );
        let v = ones_vector(2);
        assert_eq!(
            element_order_in_cokernel(&x, &v).unwrap(),
            ElementOrder::Finite(BigUint::from(6u32))
        );

        let y = IntegerMatrix::from_i64_rows(&[vec![0, 0], vec![0, 1]]);
        let e1 = vec![BigInt::one(), BigInt::zero()];
        assert_eq!(
            element_order_in_cokernel(&y, &e1).unwrap(),
            ElementOrder::Infinite
        );

        let bad = element_order_in_cokernel(&x, &ones_vector(3));
        assert!(matches!(bad, Err(ZlinError::DimensionMismatch { .. })));
    }

    #[test]
    fn group_canonicalization_and_ops() {
        // (2,2,2,6) renders in primary form.
        let g = AbelianGroup::new(
            0,
            vec![2u32, 2, 2, 6].into_iter().map(BigUint::from).collect(),
        );
        assert_eq!(g.render(), "(Z/2)^4 (+) Z/3");
        let chain: Vec<u64> = g.torsion().iter().map(|d| u64::try_from(d).unwrap()).collect();
        assert_eq!(chain, vec![2, 2, 2, 6]);

        // Z/4 (+) Z/6 canonicalizes to Z/2 (+) Z/12.
        let h = AbelianGroup::new(0, vec![BigUint::from(4u32), BigUint::from(6u32)]);
        let chain: Vec<u64> = h.torsion().iter().map(|d| u64::try_from(d).unwrap()).collect();
        assert_eq!(chain, vec![2, 12]);

        assert_eq!(
            AbelianGroup::free(2).tensor(&AbelianGroup::free(2)),
            AbelianGroup::free(4)
        );
        let z2 = AbelianGroup::new(0, vec![BigUint::from(2u32)]);
        let z3 = AbelianGroup::new(0, vec![BigUint::from(3u32)]);
        assert!(z2.tensor(&z3).is_trivial());
        assert!(z2.tor_product(&z3).is_trivial());
        let z4 = AbelianGroup::new(0, vec![BigUint::from(4u32)]);
        let z6 = AbelianGroup::new(0, vec![BigUint::from(6u32)]);
        assert_eq!(z4.tor_product(&z6), z2);

        assert_eq!(AbelianGroup::trivial().render(), "0");
        assert_eq!(AbelianGroup::free(1).render(), "Z");
    }

    #[test]
    fn modular_rank_matches_exact_rank_here() {
        let x = IntegerMatrix::from_i64_rows(&[vec![2, 4, 1], vec![0, 0, 3], vec![2, 4, 4]]);
        let snf = smith_normal_form(&x, false);
        assert_eq!(x.rank_mod(1_000_000_007), snf.rank());
    }
}

//! Words over a transition system: rectangular letter arrays constrained
//! by the transition matrices, their products, restrictions, translates,
//! periodicity, counting, and the H-condition checker.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::mat01::{adjacency_union, Mat01};
use crate::scc::tarjan_scc;
use crate::system::TransitionSystem;

/// Shape of a word: one nonnegative extent per direction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(components: Vec<usize>) -> Self {
        Shape(components)
    }

    pub fn zero(rank: usize) -> Self {
        Shape(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    /// Extents of the cell box, component + 1 per axis.
    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|m| m + 1).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn strides(&self) -> Vec<usize> {
        let dims = self.dims();
        let mut strides = vec![1; dims.len()];
        for k in 1..dims.len() {
            strides[k] = strides[k - 1] * dims[k - 1];
        }
        strides
    }

    pub fn add(&self, other: &Shape) -> Shape {
        assert_eq!(self.rank(), other.rank());
        Shape(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn le(&self, other: &Shape) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape{:?}", self.0)
    }
}

fn coords_of(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut coords = Vec::with_capacity(dims.len());
    for &d in dims {
        coords.push(idx % d);
        idx /= d;
    }
    coords
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word rank {got} does not match system rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("letter {letter} outside alphabet of size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },
    #[error("{got} letters provided for a shape with {expected} cells")]
    LetterCountMismatch { expected: usize, got: usize },
    #[error("terminal letter of the left factor differs from the initial letter of the right factor")]
    NotComposable,
    #[error("input word violates its own transition constraints at {0:?}")]
    InvalidWord(Vec<usize>),
    #[error("restriction window outside the word domain")]
    WindowOutOfDomain,
    #[error("periodicity vector must be nonzero")]
    ZeroPeriod,
    #[error("period vector rank {got} does not match word rank {expected}")]
    PeriodRankMismatch { expected: usize, got: usize },
    #[error("M1*M2 != M2*M1 (first difference at entry ({row}, {col})); counting refused")]
    H1aFailed { row: usize, col: usize },
    #[error("corner fill at {coords:?} found {candidates} candidates; unique product violated")]
    ProductInconsistent {
        coords: Vec<usize>,
        candidates: usize,
    },
    #[error("operation implemented for ranks 1 and 2, got {0}")]
    UnsupportedRank(usize),
}

/// A word of shape m: letters on the box [0, m], stored with the first
/// coordinate fastest. That storage order is also the canonical cell
/// order used by enumeration.
#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    shape: Shape,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(shape: Shape, letters: Vec<usize>) -> Result<Self, WordError> {
        if letters.len() != shape.cell_count() {
            return Err(WordError::LetterCountMismatch {
                expected: shape.cell_count(),
                got: letters.len(),
            });
        }
        Ok(Word { shape, letters })
    }

    pub fn single(rank: usize, letter: usize) -> Self {
        Word {
            shape: Shape::zero(rank),
            letters: vec![letter],
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    fn index(&self, coords: &[usize]) -> usize {
        let strides = self.shape.strides();
        coords.iter().zip(&strides).map(|(c, s)| c * s).sum()
    }

    pub fn get(&self, coords: &[usize]) -> usize {
        self.letters[self.index(coords)]
    }

    /// Initial letter o(w) = w(0).
    pub fn initial(&self) -> usize {
        self.letters[0]
    }

    /// Terminal letter t(w) = w(m).
    pub fn terminal(&self) -> usize {
        *self.letters.last().expect("words are nonempty")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}, {:?})", self.shape.components(), self.letters)
    }
}

/// Result of validating a word against a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCheck {
    /// First violated cell and direction, if any.
    pub violation: Option<(Vec<usize>, usize)>,
}

impl WordCheck {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks M_j(w(l + e_j), w(l)) = 1 for every cell and direction.
pub fn validate_word(word: &Word, system: &TransitionSystem) -> Result<WordCheck, WordError> {
    if word.shape.rank() != system.rank() {
        return Err(WordError::RankMismatch {
            expected: system.rank(),
            got: word.shape.rank(),
        });
    }
    if let Some(&letter) = word.letters.iter().find(|&&l| l >= system.len()) {
        return Err(WordError::LetterOutOfRange {
            letter,
            alphabet: system.len(),
        });
    }
    let dims = word.shape.dims();
    let strides = word.shape.strides();
    for idx in 0..word.letters.len() {
        let coords = coords_of(idx, &dims);
        for j in 0..dims.len() {
            if coords[j] + 1 < dims[j] {
                let here = word.letters[idx];
                let next = word.letters[idx + strides[j]];
                if !system.matrix(j).get(next, here) {
                    return Ok(WordCheck {
                        violation: Some((coords, j)),
                    });
                }
            }
        }
    }
    Ok(WordCheck { violation: None })
}

fn require_valid(word: &Word, system: &TransitionSystem) -> Result<(), WordError> {
    let check = validate_word(word, system)?;
    match check.violation {
        None => Ok(()),
        Some((coords, _)) => Err(WordError::InvalidWord(coords)),
    }
}

/// Letters x with M_j(x, prev) = 1 for every (j, prev) constraint, in
/// increasing order. `transposed[j]` must be the transpose of matrix j.
fn candidates(
    system: &TransitionSystem,
    transposed: &[Mat01],
    constraints: &[(usize, usize)],
) -> Vec<usize> {
    match constraints.split_first() {
        None => (0..system.len()).collect(),
        Some((&(j0, prev0), rest)) => transposed[j0]
            .row_ones(prev0)
            .into_iter()
            .filter(|&x| rest.iter().all(|&(j, prev)| system.matrix(j).get(x, prev)))
            .collect(),
    }
}

/// The unique product w = uv of shape sigma(u) + sigma(v) restricting to u
/// on the lower box and to v on the upper box. Corner regions are filled
/// cell by cell; each fill scans the alphabet and must find exactly one
/// candidate, anything else being a uniqueness violation.
pub fn product(system: &TransitionSystem, u: &Word, v: &Word) -> Result<Word, WordError> {
    require_valid(u, system)?;
    require_valid(v, system)?;
    if u.terminal() != v.initial() {
        return Err(WordError::NotComposable);
    }
    match system.rank() {
        1 => {
            let mut letters = u.letters.clone();
            letters.extend_from_slice(&v.letters[1..]);
            Word::new(u.shape.add(&v.shape), letters)
        }
        2 => product_rank2(system, u, v),
        r => Err(WordError::UnsupportedRank(r)),
    }
}

fn product_rank2(system: &TransitionSystem, u: &Word, v: &Word) -> Result<Word, WordError> {
    let (m1, m2) = (u.shape.components()[0], u.shape.components()[1]);
    let (n1, n2) = (v.shape.components()[0], v.shape.components()[1]);
    let shape = Shape::new(vec![m1 + n1, m2 + n2]);
    let width = m1 + n1 + 1;
    let mut grid: Vec<Option<usize>> = vec![None; shape.cell_count()];
    let at = |i: usize, j: usize| i + j * width;

    for j in 0..=m2 {
        for i in 0..=m1 {
            grid[at(i, j)] = Some(u.get(&[i, j]));
        }
    }
    for j in 0..=n2 {
        for i in 0..=n1 {
            grid[at(m1 + i, m2 + j)] = Some(v.get(&[i, j]));
        }
    }

    let mat1 = system.matrix(0);
    let mat2 = system.matrix(1);
    let fill = |i: usize, j: usize, grid: &mut Vec<Option<usize>>, lower_right: bool| {
        let found: Vec<usize> = if lower_right {
            let left = grid[at(i - 1, j)].expect("left neighbour known");
            let up = grid[at(i, j + 1)].expect("upper neighbour known");
            (0..system.len())
                .filter(|&x| mat1.get(x, left) && mat2.get(up, x))
                .collect()
        } else {
            let down = grid[at(i, j - 1)].expect("lower neighbour known");
            let right = grid[at(i + 1, j)].expect("right neighbour known");
            (0..system.len())
                .filter(|&x| mat2.get(x, down) && mat1.get(right, x))
                .collect()
        };
        if found.len() != 1 {
            return Err(WordError::ProductInconsistent {
                coords: vec![i, j],
                candidates: found.len(),
            });
        }
        grid[at(i, j)] = Some(found[0]);
        Ok(())
    };

    // lower-right block, row by row downwards
    for j in (0..m2).rev() {
        for i in m1 + 1..=m1 + n1 {
            fill(i, j, &mut grid, true)?;
        }
    }
    // upper-left block, column by column leftwards
    for i in (0..m1).rev() {
        for j in m2 + 1..=m2 + n2 {
            fill(i, j, &mut grid, false)?;
        }
    }

    let letters: Vec<usize> = grid.into_iter().map(|c| c.expect("grid filled")).collect();
    let word = Word::new(shape, letters)?;
    debug_assert!(validate_word(&word, system).is_ok_and(|c| c.pass()));
    Ok(word)
}

/// w restricted to the window [lo, hi], rebased at the origin.
pub fn restrict(word: &Word, lo: &[usize], hi: &[usize]) -> Result<Word, WordError> {
    let rank = word.shape.rank();
    if lo.len() != rank || hi.len() != rank {
        return Err(WordError::PeriodRankMismatch {
            expected: rank,
            got: lo.len().max(hi.len()),
        });
    }
    let m = word.shape.components();
    for k in 0..rank {
        if lo[k] > hi[k] || hi[k] > m[k] {
            return Err(WordError::WindowOutOfDomain);
        }
    }
    let new_shape = Shape::new((0..rank).map(|k| hi[k] - lo[k]).collect());
    let dims = new_shape.dims();
    let mut letters = Vec::with_capacity(new_shape.cell_count());
    for idx in 0..new_shape.cell_count() {
        let coords = coords_of(idx, &dims);
        let orig: Vec<usize> = coords.iter().zip(lo).map(|(c, l)| c + l).collect();
        letters.push(word.get(&orig));
    }
    Word::new(new_shape, letters)
}

/// The translate tau_k w: same letters on the shifted domain [k, k + m].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedWord {
    pub offset: Vec<i64>,
    pub word: Word,
}

pub fn translate(word: &Word, offset: &[i64]) -> Result<TranslatedWord, WordError> {
    if offset.len() != word.shape.rank() {
        return Err(WordError::PeriodRankMismatch {
            expected: word.shape.rank(),
            got: offset.len(),
        });
    }
    Ok(TranslatedWord {
        offset: offset.to_vec(),
        word: word.clone(),
    })
}

/// Whether tau_p w agrees with w on the overlap of their domains. An
/// empty overlap makes the condition vacuously true.
pub fn is_p_periodic(word: &Word, p: &[i64]) -> Result<bool, WordError> {
    let rank = word.shape.rank();
    if p.len() != rank {
        return Err(WordError::PeriodRankMismatch {
            expected: rank,
            got: p.len(),
        });
    }
    if p.iter().all(|&c| c == 0) {
        return Err(WordError::ZeroPeriod);
    }
    let m: Vec<i64> = word.shape.components().iter().map(|&c| c as i64).collect();
    // overlap of [0, m] and [p, p + m], per axis
    let lo: Vec<i64> = (0..rank).map(|k| 0.max(p[k])).collect();
    let hi: Vec<i64> = (0..rank).map(|k| m[k].min(p[k] + m[k])).collect();
    if (0..rank).any(|k| lo[k] > hi[k]) {
        return Ok(true);
    }
    let dims: Vec<usize> = (0..rank).map(|k| (hi[k] - lo[k] + 1) as usize).collect();
    let cells: usize = dims.iter().product();
    for idx in 0..cells {
        let rel = coords_of(idx, &dims);
        let x: Vec<usize> = (0..rank).map(|k| (lo[k] + rel[k] as i64) as usize).collect();
        let shifted: Vec<usize> = (0..rank)
            .map(|k| (x[k] as i64 - p[k]) as usize)
            .collect();
        if word.get(&x) != word.get(&shifted) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn biguint_matrix(m: &Mat01) -> Vec<BigUint> {
    let n = m.n();
    let mut out = vec![BigUint::zero(); n * n];
    for r in 0..n {
        for c in m.row_ones(r) {
            out[r * n + c] = BigUint::one();
        }
    }
    out
}

fn biguint_matmul(a: &[BigUint], b: &[BigUint], n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n * n];
    for r in 0..n {
        for k in 0..n {
            if a[r * n + k].is_zero() {
                continue;
            }
            let f = a[r * n + k].clone();
            for c in 0..n {
                if !b[k * n + c].is_zero() {
                    out[r * n + c] += &f * &b[k * n + c];
                }
            }
        }
    }
    out
}

fn check_h1a(system: &TransitionSystem) -> Result<(), WordError> {
    if system.rank() < 2 {
        return Ok(());
    }
    let p12 = system.matrix(0).product_counts(system.matrix(1));
    let p21 = system.matrix(1).product_counts(system.matrix(0));
    if let Some(pos) = (0..p12.len()).find(|&i| p12[i] != p21[i]) {
        return Err(WordError::H1aFailed {
            row: pos / system.len(),
            col: pos % system.len(),
        });
    }
    Ok(())
}

/// Number of words of the given shape: the entry sum of the product of
/// matrix powers. Requires H1a for rank 2, otherwise the value would
/// depend on the multiplication order.
pub fn count_words(system: &TransitionSystem, shape: &Shape) -> Result<BigUint, WordError> {
    if shape.rank() != system.rank() {
        return Err(WordError::RankMismatch {
            expected: system.rank(),
            got: shape.rank(),
        });
    }
    check_h1a(system)?;
    let n = system.len();
    let mut acc = biguint_matrix(&Mat01::identity(n));
    for (j, &m) in shape.components().iter().enumerate() {
        let factor = biguint_matrix(system.matrix(j));
        for _ in 0..m {
            acc = biguint_matmul(&acc, &factor, n);
        }
    }
    Ok(acc.into_iter().sum())
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 1_000_000;

/// All words of a shape in lexicographic letter order (canonical cell
/// order, letters ascending), truncated at `bound`.
pub fn enumerate_words(
    system: &TransitionSystem,
    shape: &Shape,
    bound: usize,
) -> Result<Vec<Word>, WordError> {
    if shape.rank() != system.rank() {
        return Err(WordError::RankMismatch {
            expected: system.rank(),
            got: shape.rank(),
        });
    }
    check_h1a(system)?;
    let dims = shape.dims();
    let strides = shape.strides();
    let cells = shape.cell_count();
    let transposed: Vec<Mat01> = system.matrices().iter().map(Mat01::transpose).collect();

    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(cells);
    let mut options: Vec<Vec<usize>> = Vec::with_capacity(cells);

    // reversed so that popping yields letters in ascending order
    let next_options = |stack: &[usize], idx: usize| -> Vec<usize> {
        let coords = coords_of(idx, &dims);
        let constraints: Vec<(usize, usize)> = (0..dims.len())
            .filter(|&j| coords[j] > 0)
            .map(|j| (j, stack[idx - strides[j]]))
            .collect();
        let mut opts = candidates(system, &transposed, &constraints);
        opts.reverse();
        opts
    };

    options.push(next_options(&stack, 0));
    loop {
        match options.last_mut().and_then(Vec::pop) {
            Some(letter) => {
                stack.push(letter);
                if stack.len() == cells {
                    out.push(Word::new(shape.clone(), stack.clone())?);
                    if out.len() >= bound {
                        return Ok(out);
                    }
                    stack.pop();
                } else {
                    options.push(next_options(&stack, stack.len()));
                }
            }
            None => {
                options.pop();
                if options.is_empty() {
                    return Ok(out);
                }
                stack.pop();
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub name: &'static str,
    pub verdict: Verdict,
    /// Compact token, `-` when there is nothing to point at.
    pub witness: String,
    /// Free-form explanation, empty when self-evident.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct HReport {
    pub conditions: Vec<ConditionReport>,
}

impl HReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.condition(name).map(|c| c.verdict)
    }

    /// True when every condition is pass or vacuous.
    pub fn all_satisfied(&self) -> bool {
        self.conditions
            .iter()
            .all(|c| matches!(c.verdict, Verdict::Pass | Verdict::Vacuous))
    }

    /// One `condition=<name> verdict=<v> witness=<w>` line per condition,
    /// with `#`-comment lines carrying any recorded detail.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.conditions {
            out.push_str(&format!(
                "condition={} verdict={} witness={}\n",
                c.name, c.verdict, c.witness
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!("# {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct HCheckOptions {
    /// Periodicity vectors searched up to this sup-norm when the row-sum
    /// criterion does not apply.
    pub period_bound: usize,
    /// Extra shape padding tried per period vector in the fallback search.
    pub shape_padding: usize,
    /// Cap on enumerated words per (period, shape) pair.
    pub enumeration_bound: usize,
}

impl Default for HCheckOptions {
    fn default() -> Self {
        HCheckOptions {
            period_bound: 3,
            shape_padding: 2,
            enumeration_bound: 100_000,
        }
    }
}

/// Runs the H-condition checks and reports one verdict per condition.
pub fn check_conditions(system: &TransitionSystem, opts: &HCheckOptions) -> HReport {
    let mut conditions = Vec::new();

    // H0: nonzero {0,1}-matrices ({0,1} holds by representation).
    let zero = (0..system.rank()).find(|&j| !system.matrix(j).is_nonzero());
    conditions.push(match zero {
        None => ConditionReport {
            name: "H0",
            verdict: Verdict::Pass,
            witness: "-".into(),
            detail: String::new(),
        },
        Some(j) => ConditionReport {
            name: "H0",
            verdict: Verdict::Fail,
            witness: format!("M{}=0", j + 1),
            detail: String::new(),
        },
    });

    // H1a and H1b compare the two integer products entrywise.
    if system.rank() >= 2 {
        let n = system.len();
        let p12 = system.matrix(0).product_counts(system.matrix(1));
        let p21 = system.matrix(1).product_counts(system.matrix(0));
        let diff = (0..p12.len()).find(|&i| p12[i] != p21[i]);
        conditions.push(match diff {
            None => ConditionReport {
                name: "H1a",
                verdict: Verdict::Pass,
                witness: "-".into(),
                detail: String::new(),
            },
            Some(i) => ConditionReport {
                name: "H1a",
                verdict: Verdict::Fail,
                witness: format!("entry({},{})", i / n, i % n),
                detail: format!("M1M2={} but M2M1={}", p12[i], p21[i]),
            },
        });
        let big = (0..p12.len()).find(|&i| p12[i] > 1);
        conditions.push(match big {
            None => ConditionReport {
                name: "H1b",
                verdict: Verdict::Pass,
                witness: "-".into(),
                detail: String::new(),
            },
            Some(i) => ConditionReport {
                name: "H1b",
                verdict: Verdict::Fail,
                witness: format!("entry({},{})", i / n, i % n),
                detail: format!("M1M2 entry is {}", p12[i]),
            },
        });
    } else {
        for name in ["H1a", "H1b"] {
            conditions.push(ConditionReport {
                name,
                verdict: Verdict::Vacuous,
                witness: "-".into(),
                detail: "rank 1".into(),
            });
        }
    }
    conditions.push(ConditionReport {
        name: "H1c",
        verdict: Verdict::Vacuous,
        witness: "-".into(),
        detail: format!("rank {}", system.rank()),
    });

    // H2: irreducibility of the letter graph.
    let matrices: Vec<&Mat01> = system.matrices().iter().collect();
    let adj = adjacency_union(&matrices);
    let components = tarjan_scc(&adj).len();
    conditions.push(if !system.is_empty() && components == 1 {
        ConditionReport {
            name: "H2",
            verdict: Verdict::Pass,
            witness: "-".into(),
            detail: String::new(),
        }
    } else {
        ConditionReport {
            name: "H2",
            verdict: Verdict::Fail,
            witness: format!("components={components}"),
            detail: String::new(),
        }
    });

    conditions.push(check_h3(system, opts));

    HReport { conditions }
}

fn check_h3(system: &TransitionSystem, opts: &HCheckOptions) -> ConditionReport {
    let rank = system.rank();
    let min_row_sum = (0..rank)
        .flat_map(|j| (0..system.len()).map(move |r| system.matrix(j).row_sum(r)))
        .min()
        .unwrap_or(0);
    if min_row_sum >= 2 {
        return ConditionReport {
            name: "H3",
            verdict: Verdict::Pass,
            witness: "row-sums-ge-2".into(),
            detail: "every row sum is at least 2, so any single overlap equality \
                     can be broken by branching at the final step; a non-p-periodic \
                     word therefore exists for every p != 0"
                .into(),
        };
    }

    // Fallback: bounded exhaustive search over primitive periods. This can
    // exhibit witnesses but cannot certify anything beyond the bound.
    let mut unwitnessed: Vec<Vec<i64>> = Vec::new();
    for p in primitive_periods(rank, opts.period_bound) {
        let mut found = false;
        'shapes: for pad in 0..=opts.shape_padding {
            let shape = Shape::new(p.iter().map(|&c| c.unsigned_abs() as usize + pad).collect());
            let words = match enumerate_words(system, &shape, opts.enumeration_bound) {
                Ok(words) => words,
                Err(_) => break 'shapes,
            };
            for w in words {
                if !is_p_periodic(&w, &p).unwrap_or(true) {
                    found = true;
                    break 'shapes;
                }
            }
        }
        if !found {
            unwitnessed.push(p);
        }
    }
    let detail = if unwitnessed.is_empty() {
        format!(
            "row-sum criterion not met; witnesses found for every primitive |p| <= {}, \
             larger p uncertified",
            opts.period_bound
        )
    } else {
        format!(
            "row-sum criterion not met; no witness within the search bounds for p in {:?}",
            unwitnessed
        )
    };
    ConditionReport {
        name: "H3",
        verdict: Verdict::Inconclusive,
        witness: match unwitnessed.first() {
            None => format!("searched-p-le-{}", opts.period_bound),
            Some(p) => format!("p={p:?}").replace(' ', ""),
        },
        detail,
    }
}

/// Nonzero vectors with gcd of entries 1 and sup-norm at most `bound`,
/// one of each +/- pair (first nonzero entry positive).
fn primitive_periods(rank: usize, bound: usize) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut cursor = vec![-b; rank];
    'outer: loop {
        let p = cursor.clone();
        // advance
        let gcd = p.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c.abs()));
        let canonical = p.iter().find(|&&c| c != 0).is_some_and(|&first| first > 0);
        if gcd == 1 && canonical {
            out.push(p);
        }
        for k in 0..rank {
            cursor[k] += 1;
            if cursor[k] <= b {
                continue 'outer;
            }
            cursor[k] = -b;
        }
        break;
    }
    out.sort();
    out
}

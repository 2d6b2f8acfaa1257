use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, is_local_square, Place, Rational};
use crate::error::{bail, Result};

/// A 2×2 rational matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(Rational::one(), Rational::zero(), Rational::zero(), Rational::one())
    }

    /// The Weyl element `[[0, 1], [-1, 0]]`.
    pub fn w() -> Self {
        Mat2::new(Rational::zero(), Rational::one(), -Rational::one(), Rational::zero())
    }

    /// `[[1, b], [0, 1]]`.
    pub fn n(b: Rational) -> Self {
        Mat2::new(Rational::one(), b, Rational::zero(), Rational::one())
    }

    /// `diag(a, a^{-1})`.
    pub fn t(a: Rational) -> Self {
        let inv = a.recip();
        Mat2::new(a, Rational::zero(), Rational::zero(), inv)
    }

    pub fn diag(a: Rational, d: Rational) -> Self {
        Mat2::new(a, Rational::zero(), Rational::zero(), d)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            bail!(Domain, "singular 2x2 matrix");
        }
        let k = det.recip();
        Ok(Mat2::new(&self.d * &k, -&self.b * &k, -&self.c * &k, &self.a * &k))
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_rational(&self.a),
            fmt_rational(&self.b),
            fmt_rational(&self.c),
            fmt_rational(&self.d)
        )
    }
}

/// One diagonal block of a block-diagonal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    /// Diagonal block with the given nonzero entries.
    Torus(Vec<Rational>),
    /// 2×2 block of determinant one.
    Sl2(Mat2),
    /// Invertible 2×2 block.
    Gl2(Mat2),
    /// `a · I_size`.
    Scalar { a: Rational, size: usize },
}

impl Block {
    pub fn size(&self) -> usize {
        match self {
            Block::Torus(t) => t.len(),
            Block::Sl2(_) | Block::Gl2(_) => 2,
            Block::Scalar { size, .. } => *size,
        }
    }

    pub fn identity(size: usize) -> Block {
        Block::Scalar { a: Rational::one(), size }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Block::Torus(t) => {
                if t.is_empty() {
                    bail!(Domain, "empty torus block");
                }
                if t.iter().any(Zero::is_zero) {
                    bail!(Domain, "torus entries must be nonzero");
                }
            }
            Block::Sl2(m) => {
                if !m.det().is_one() {
                    bail!(Domain, "SL2 block {m} has determinant {}", m.det());
                }
            }
            Block::Gl2(m) => {
                if m.det().is_zero() {
                    bail!(Domain, "GL2 block {m} is singular");
                }
            }
            Block::Scalar { a, size } => {
                if a.is_zero() || *size == 0 {
                    bail!(Domain, "scalar block needs a nonzero value and positive size");
                }
            }
        }
        Ok(())
    }

    pub fn det(&self) -> Rational {
        match self {
            Block::Torus(t) => t.iter().product(),
            Block::Sl2(m) | Block::Gl2(m) => m.det(),
            Block::Scalar { a, size } => num_traits::pow(a.clone(), *size),
        }
    }

    /// Diagonal entries, when the block is diagonal.
    pub fn diagonal(&self) -> Option<Vec<Rational>> {
        match self {
            Block::Torus(t) => Some(t.clone()),
            Block::Sl2(m) | Block::Gl2(m) if m.is_diagonal() => Some(vec![m.a.clone(), m.d.clone()]),
            Block::Scalar { a, size } => Some(vec![a.clone(); *size]),
            _ => None,
        }
    }

    /// The block as a 2×2 matrix, when it has size two.
    pub fn as_mat2(&self) -> Option<Mat2> {
        match self {
            Block::Sl2(m) | Block::Gl2(m) => Some(m.clone()),
            Block::Torus(t) if t.len() == 2 => Some(Mat2::diag(t[0].clone(), t[1].clone())),
            Block::Scalar { a, size: 2 } => Some(Mat2::diag(a.clone(), a.clone())),
            _ => None,
        }
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        match self.as_mat2() {
            Some(m) if !m.is_diagonal() => {
                vec![vec![m.a, m.b], vec![m.c, m.d]]
            }
            _ => {
                let d = self.diagonal().expect("non-2x2 blocks are diagonal");
                let n = d.len();
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { d[i].clone() } else { Rational::zero() })
                            .collect()
                    })
                    .collect()
            }
        }
    }

    /// Blockwise product; the result keeps the most specific class.
    pub fn mul(&self, other: &Block) -> Result<Block> {
        if self.size() != other.size() {
            bail!(Unsupported, "cannot multiply blocks of sizes {} and {}", self.size(), other.size());
        }
        use Block::*;
        Ok(match (self, other) {
            (Scalar { a, size }, Scalar { a: b, .. }) => Scalar { a: a * b, size: *size },
            _ => match (self.diagonal(), other.diagonal()) {
                (Some(x), Some(y)) if matches!((self, other), (Torus(_) | Scalar { .. }, Torus(_) | Scalar { .. })) => {
                    Torus(x.iter().zip(&y).map(|(u, v)| u * v).collect())
                }
                _ => {
                    let (m, n) = match (self.as_mat2(), other.as_mat2()) {
                        (Some(m), Some(n)) => (m, n),
                        _ => bail!(Unsupported, "product of blocks {self:?} and {other:?}"),
                    };
                    let prod = m.mul(&n);
                    if matches!((self, other), (Sl2(_), Sl2(_))) {
                        Sl2(prod)
                    } else {
                        Gl2(prod)
                    }
                }
            },
        })
    }
}

/// An element of `GL_r(Q)` in one of the classes on which the cocycles
/// are evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuredElement {
    /// Block-diagonal element; block sizes sum to `r`.
    BlockDiagonal(Vec<Block>),
    /// Upper triangular with unit diagonal, stored as a full `r × r` matrix.
    UnipotentUpper(Vec<Vec<Rational>>),
}

impl StructuredElement {
    pub fn blocks(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            bail!(Domain, "an element needs at least one block");
        }
        for b in &blocks {
            b.validate()?;
        }
        Ok(StructuredElement::BlockDiagonal(blocks))
    }

    pub fn torus(entries: Vec<Rational>) -> Result<Self> {
        Self::blocks(vec![Block::Torus(entries)])
    }

    pub fn central(a: Rational, r: usize) -> Result<Self> {
        Self::blocks(vec![Block::Scalar { a, size: r }])
    }

    pub fn identity(r: usize) -> Self {
        StructuredElement::BlockDiagonal(vec![Block::identity(r)])
    }

    pub fn sl2(m: Mat2) -> Result<Self> {
        Self::blocks(vec![Block::Sl2(m)])
    }

    pub fn gl2(m: Mat2) -> Result<Self> {
        Self::blocks(vec![Block::Gl2(m)])
    }

    pub fn unipotent(m: Vec<Vec<Rational>>) -> Result<Self> {
        let r = m.len();
        if r == 0 {
            bail!(Domain, "empty matrix");
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != r {
                bail!(Domain, "unipotent matrix must be square");
            }
            for (j, x) in row.iter().enumerate() {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => x.is_one(),
                    std::cmp::Ordering::Greater => x.is_zero(),
                    std::cmp::Ordering::Less => true,
                };
                if !ok {
                    bail!(Domain, "matrix is not upper unitriangular at ({}, {})", i + 1, j + 1);
                }
            }
        }
        Ok(StructuredElement::UnipotentUpper(m))
    }

    /// Unipotent element with the given `(i, j, x)` entries (1-based, `i < j`).
    pub fn unipotent_from_entries(r: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut m = identity_rows(r);
        for (i, j, x) in entries {
            if !(1..=r).contains(i) || !(1..=r).contains(j) || i >= j {
                bail!(Domain, "entry ({i}, {j}) is not strictly above the diagonal of a rank-{r} matrix");
            }
            m[i - 1][j - 1] = x.clone();
        }
        Self::unipotent(m)
    }

    pub fn rank(&self) -> usize {
        match self {
            StructuredElement::BlockDiagonal(bs) => bs.iter().map(Block::size).sum(),
            StructuredElement::UnipotentUpper(m) => m.len(),
        }
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        match self {
            StructuredElement::BlockDiagonal(bs) => bs.iter().map(Block::size).collect(),
            StructuredElement::UnipotentUpper(m) => vec![m.len()],
        }
    }

    pub fn is_unipotent(&self) -> bool {
        matches!(self, StructuredElement::UnipotentUpper(_))
    }

    /// Diagonal entries when the element is a torus element.
    pub fn torus_entries(&self) -> Option<Vec<Rational>> {
        match self {
            StructuredElement::BlockDiagonal(bs) => {
                let mut out = Vec::new();
                for b in bs {
                    out.extend(b.diagonal()?);
                }
                Some(out)
            }
            StructuredElement::UnipotentUpper(m) => {
                let diag = m
                    .iter()
                    .enumerate()
                    .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
                diag.then(|| vec![Rational::one(); m.len()])
            }
        }
    }

    /// `Some(a)` when the element is the scalar matrix `a · I_r`.
    pub fn central_value(&self) -> Option<Rational> {
        let t = self.torus_entries()?;
        t.iter().all(|x| x == &t[0]).then(|| t[0].clone())
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        match self {
            StructuredElement::UnipotentUpper(m) => m.clone(),
            StructuredElement::BlockDiagonal(bs) => {
                let r = self.rank();
                let mut m = vec![vec![Rational::zero(); r]; r];
                let mut off = 0;
                for b in bs {
                    for (i, row) in b.rows().into_iter().enumerate() {
                        for (j, x) in row.into_iter().enumerate() {
                            m[off + i][off + j] = x;
                        }
                    }
                    off += b.size();
                }
                m
            }
        }
    }

    pub fn det(&self) -> Rational {
        match self {
            StructuredElement::BlockDiagonal(bs) => bs.iter().map(Block::det).product(),
            StructuredElement::UnipotentUpper(_) => Rational::one(),
        }
    }

    /// Product within a supported class: blockwise for matching block
    /// structures, entrywise for tori, matrix product for unipotents.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        use StructuredElement::*;
        if self.rank() != other.rank() {
            bail!(Domain, "rank mismatch {} vs {}", self.rank(), other.rank());
        }
        match (self, other) {
            (UnipotentUpper(a), UnipotentUpper(b)) => Ok(UnipotentUpper(mat_mul(a, b))),
            (BlockDiagonal(a), BlockDiagonal(b)) => {
                if self.block_sizes() == other.block_sizes() {
                    let blocks = a.iter().zip(b).map(|(x, y)| x.mul(y)).collect::<Result<_>>()?;
                    return Ok(BlockDiagonal(blocks));
                }
                match (self.torus_entries(), other.torus_entries()) {
                    (Some(x), Some(y)) => {
                        StructuredElement::torus(x.iter().zip(&y).map(|(u, v)| u * v).collect())
                    }
                    _ => bail!(Unsupported, "product of elements with block structures {:?} and {:?}", self.block_sizes(), other.block_sizes()),
                }
            }
            _ => bail!(Unsupported, "product of a unipotent and a block-diagonal element"),
        }
    }

    /// All matrix entries of the element.
    pub fn entries(&self) -> Vec<Rational> {
        self.matrix().into_iter().flatten().collect()
    }

    /// Whether consecutive ratios `t_1/t_2, t_3/t_4, ...` are squares at `v`.
    pub fn in_even_torus(&self, v: Place) -> Result<bool> {
        let Some(t) = self.torus_entries() else {
            return Ok(false);
        };
        for pair in t.chunks_exact(2) {
            if !is_local_square(&(&pair[0] / &pair[1]), v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the determinant is a square at `v`.
    pub fn in_gl_square_det(&self, v: Place) -> Result<bool> {
        is_local_square(&self.det(), v)
    }
}

fn identity_rows(r: usize) -> Vec<Vec<Rational>> {
    (0..r)
        .map(|i| (0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let r = a.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

impl fmt::Display for StructuredElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

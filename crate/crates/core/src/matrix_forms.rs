//! Explicit matrix and matrix-function forms of small algebras, checked
//! against the truncated Fock model after reordering the basis into blocks
//! that are each identified with a truncated Hardy space.

use std::fmt;

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::fourier::{synthesize, CoefficientTable};
use crate::graph::{DirectedMultigraph, EdgeId, VertexId};
use crate::path::Path;
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;
use crate::corpus;

/// Function classes that can fill one block of a matrix-function algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionClass {
    /// `H^∞(z^n)`: functions of `z^n`.
    PowerSeries(usize),
    HInfinity,
    /// `H^∞_0`: vanishing at the origin.
    HInfinityZero,
    /// Constant multiples of the identity.
    Scalar,
    Zero,
}

/// `z^p` times a function class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockEntry {
    pub z_power: usize,
    pub class: FunctionClass,
}

impl BlockEntry {
    /// Whether a Toeplitz symbol may be nonzero at offset `d`.
    pub fn allows(&self, d: usize) -> bool {
        let Some(rest) = d.checked_sub(self.z_power) else {
            return false;
        };
        match self.class {
            FunctionClass::PowerSeries(n) => rest % n == 0,
            FunctionClass::HInfinity => true,
            FunctionClass::HInfinityZero => d >= 1,
            FunctionClass::Scalar => d == 0,
            FunctionClass::Zero => false,
        }
    }
}

impl fmt::Display for BlockEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = match self.class {
            FunctionClass::PowerSeries(n) => format!("H∞(z^{n})"),
            FunctionClass::HInfinity => "H∞".into(),
            FunctionClass::HInfinityZero => "H∞₀".into(),
            FunctionClass::Scalar => "ℂI".into(),
            FunctionClass::Zero => return f.write_str("0"),
        };
        match self.z_power {
            0 => f.write_str(&class),
            1 => write!(f, "z {class}"),
            p => write!(f, "z^{p} {class}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPattern {
    pub entries: Vec<Vec<BlockEntry>>,
}

impl BlockPattern {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

/// The `n × n` pattern of the cycle algebra: entry `(i, j)` is
/// `z^{(i−j) mod n} H^∞(z^n)`.
pub fn cycle_block_pattern(n: usize) -> BlockPattern {
    assert!(n >= 1, "cycle length must be positive");
    BlockPattern {
        entries: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BlockEntry {
                        z_power: (i + n - j) % n,
                        class: FunctionClass::PowerSeries(n),
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Toeplitz symbols `(offset, value)` of the blocks of an operator.
pub type Symbols<T> = Vec<Vec<Vec<(usize, T)>>>;

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureReport<T> {
    pub fixture: String,
    pub level: usize,
    pub blocks_checked: usize,
    /// Symbols of the checked operator, when the fixture is block structured.
    pub symbols: Option<Symbols<T>>,
}

/// Selects the fixture and carries its scalars.
#[derive(Debug, Clone, PartialEq)]
pub enum Fixture<T> {
    /// `αP_{x1} + βP_{x2} + γP_{x3} + λL_e + μL_f` on the fork.
    Fork([T; 5]),
    /// A series on the loop with a tail, given as Fourier coefficients.
    LoopTail(CoefficientTable<T>),
    /// A series on the loop-bridge-loop graph.
    LoopBridgeLoop(CoefficientTable<T>),
    /// `Σ α_k L_{e_k}` on the `n`-cycle in the per-source decomposition.
    Cycle(Vec<T>),
    /// A series on the `n`-cycle in the per-range decomposition.
    CycleBlocked(usize, CoefficientTable<T>),
}

impl<T> Fixture<T> {
    pub fn id(&self) -> &'static str {
        match self {
            Fixture::Fork(_) => "fork",
            Fixture::LoopTail(_) => "loop_tail",
            Fixture::LoopBridgeLoop(_) => "loop_bridge_loop",
            Fixture::Cycle(_) => "cycle",
            Fixture::CycleBlocked(..) => "cycle_blocked",
        }
    }

    /// The graph the fixture lives on.
    pub fn graph(&self) -> DirectedMultigraph {
        match self {
            Fixture::Fork(_) => corpus::fork(),
            Fixture::LoopTail(_) => corpus::loop_tail(),
            Fixture::LoopBridgeLoop(_) => corpus::loop_bridge_loop(),
            Fixture::Cycle(a) => corpus::cycle(a.len().max(1)),
            Fixture::CycleBlocked(n, _) => corpus::cycle(*n),
        }
    }
}

fn mismatch<T: fmt::Debug>(fixture: &str, row: usize, col: usize, expected: T, found: T) -> Error {
    Error::FixtureMismatch {
        fixture: fixture.to_string(),
        row,
        col,
        expected: format!("{expected:?}"),
        found: format!("{found:?}"),
    }
}

/// Checks that `blocks` lists every basis index once, each block in strictly
/// increasing path length.
fn check_partition(space: &FockSpace, blocks: &[Vec<usize>], fixture: &str) -> Result<()> {
    let mut seen = vec![false; space.dim()];
    for b in blocks {
        for &i in b {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Degenerate(format!("{fixture}: basis index {i} used twice")));
            }
        }
        if b.windows(2).any(|w| space.path(w[0]).len() >= space.path(w[1]).len()) {
            return Err(Error::Degenerate(format!("{fixture}: block does not respect word length")));
        }
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(Error::Degenerate(format!("{fixture}: basis index {i} in no block"))),
        None => Ok(()),
    }
}

/// Reads each block of `a` as a lower-triangular Toeplitz matrix and returns
/// its symbol; fails at the first entry breaking that shape.
pub fn block_symbols<T: Scalar + fmt::Debug>(
    a: &SparseOperator<T>,
    blocks: &[Vec<usize>],
    fixture: &str,
) -> Result<Symbols<T>> {
    let mut place = vec![(0, 0); a.dim()];
    for (b, idx) in blocks.iter().enumerate() {
        for (p, &i) in idx.iter().enumerate() {
            place[i] = (b, p);
        }
    }
    let nb = blocks.len();
    let mut sym: Vec<Vec<Vec<(usize, T)>>> = vec![vec![Vec::new(); nb]; nb];
    for &(r, c, ref v) in a.entries() {
        let ((bi, p), (bj, q)) = (place[r], place[c]);
        if p < q {
            return Err(mismatch(fixture, r, c, T::zero(), v.clone()));
        }
        let d = p - q;
        let s = &mut sym[bi][bj];
        match s.iter().find(|(o, _)| *o == d) {
            Some((_, w)) if w != v => return Err(mismatch(fixture, r, c, w.clone(), v.clone())),
            Some(_) => {}
            None => s.push((d, v.clone())),
        }
    }
    // every position on a populated diagonal must carry the same value
    for (bi, rows) in blocks.iter().enumerate() {
        for (bj, cols) in blocks.iter().enumerate() {
            sym[bi][bj].sort_by_key(|e| e.0);
            for (d, v) in &sym[bi][bj] {
                for q in 0..cols.len() {
                    if let Some(&r) = rows.get(q + d) {
                        let found = a.get(r, cols[q]);
                        if &found != v {
                            return Err(mismatch(fixture, r, cols[q], v.clone(), found));
                        }
                    }
                }
            }
        }
    }
    Ok(sym)
}

fn check_pattern<T: Scalar + fmt::Debug>(
    sym: &Symbols<T>,
    pattern: &BlockPattern,
    blocks: &[Vec<usize>],
    fixture: &str,
) -> Result<()> {
    for (i, row) in sym.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            if let Some((d, v)) = s.iter().find(|(d, _)| !pattern.entries[i][j].allows(*d)) {
                let q = blocks[j].len().min(blocks[i].len().saturating_sub(*d)).saturating_sub(1);
                return Err(mismatch(fixture, blocks[i][q + d], blocks[j][q], T::zero(), v.clone()));
            }
        }
    }
    Ok(())
}

fn paths_where(space: &FockSpace, pred: impl Fn(&Path) -> bool) -> Vec<usize> {
    (0..space.dim()).filter(|&i| pred(space.path(i))).collect()
}

/// Edges of `p` in application order, as labels.
fn letters<'a>(g: &'a DirectedMultigraph, p: &'a Path) -> impl Iterator<Item = &'a str> + 'a {
    p.edges().iter().map(move |e| g.edge(*e).label.as_str())
}

fn verify_fork<T: Scalar + fmt::Debug>(s: &[T; 5], level: usize) -> Result<FixtureReport<T>> {
    let g = corpus::fork();
    let space = FockSpace::new(&g, level)?;
    let [al, be, ga, la, mu] = s.clone();
    let x = |l: &str| g.vertex(l).unwrap();
    let e = |l: &str| g.edge_id(l).unwrap();
    let a = [
        space.vertex_projection::<T>(x("x1")).scale(&al),
        space.vertex_projection::<T>(x("x2")).scale(&be),
        space.vertex_projection::<T>(x("x3")).scale(&ga),
        space.left::<T>(e("e")).scale(&la),
        space.left::<T>(e("f")).scale(&mu),
    ]
    .iter()
    .fold(SparseOperator::zeros(space.dim()), |acc, t| &acc + t);
    let z = T::zero();
    let expected = [
        [al.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), be.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), ga.clone(), z.clone(), z.clone()],
        [la, z.clone(), z.clone(), be, z.clone()],
        [mu, z.clone(), z.clone(), z.clone(), ga],
    ];
    if space.dim() != 5 && level >= 1 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: space.dim(),
        });
    }
    for (r, row) in expected.iter().enumerate().take(space.dim()) {
        for (c, want) in row.iter().enumerate().take(space.dim()) {
            let found = a.get(r, c);
            if &found != want {
                return Err(mismatch("fork", r, c, want.clone(), found));
            }
        }
    }
    Ok(FixtureReport {
        fixture: "fork".into(),
        level,
        blocks_checked: 1,
        symbols: None,
    })
}

/// `P_xH ⊕ P_yH`, both indexed by word length.
fn verify_loop_tail<T: Scalar + fmt::Debug>(tbl: &CoefficientTable<T>, level: usize) -> Result<FixtureReport<T>> {
    let g = corpus::loop_tail();
    let space = FockSpace::new(&g, level)?;
    let a = synthesize(tbl, &space)?;
    let (x, y) = (g.vertex("x").unwrap(), g.vertex("y").unwrap());
    let blocks = vec![paths_where(&space, |p| p.range() == x), paths_where(&space, |p| p.range() == y)];
    check_partition(&space, &blocks, "loop_tail")?;
    let sym = block_symbols(&a, &blocks, "loop_tail")?;
    let entry = |class| BlockEntry { z_power: 0, class };
    let pattern = BlockPattern {
        entries: vec![
            vec![entry(FunctionClass::HInfinity), entry(FunctionClass::Zero)],
            vec![entry(FunctionClass::HInfinityZero), entry(FunctionClass::Scalar)],
        ],
    };
    check_pattern(&sym, &pattern, &blocks, "loop_tail")?;
    Ok(FixtureReport {
        fixture: "loop_tail".into(),
        level,
        blocks_checked: 4,
        symbols: Some(sym),
    })
}

/// Diagonal spaces `H_1 = span{ξ_x, ξ_{e^k}}`, `H_n = L_g^{n−2} L_f H_1`, and
/// `H_g = span{ξ_y, ξ_{g^k}}`, each indexed by its power of `e` (or `g`).
fn verify_loop_bridge_loop<T: Scalar + fmt::Debug>(tbl: &CoefficientTable<T>, level: usize) -> Result<FixtureReport<T>> {
    let g = corpus::loop_bridge_loop();
    let space = FockSpace::new(&g, level)?;
    let a = synthesize(tbl, &space)?;
    let y = g.vertex("y").unwrap();
    let x = g.vertex("x").unwrap();
    // paths from x: g^m f e^k or e^k; count g's to pick the diagonal space
    let mut blocks: Vec<Vec<usize>> = vec![paths_where(&space, |p| p.source() == x && p.range() == x)];
    for m in 0..level {
        blocks.push(paths_where(&space, |p| {
            p.source() == x && p.range() == y && letters(&g, p).filter(|l| *l == "g").count() == m
        }));
    }
    blocks.push(paths_where(&space, |p| p.source() == y));
    blocks.retain(|b| !b.is_empty());
    check_partition(&space, &blocks, "loop_bridge_loop")?;
    let sym = block_symbols(&a, &blocks, "loop_bridge_loop")?;
    let nb = blocks.len();
    let hg = nb - 1;
    let entry = |class| BlockEntry { z_power: 0, class };
    let pattern = BlockPattern {
        entries: (0..nb)
            .map(|i| {
                (0..nb)
                    .map(|j| {
                        if i == hg || j == hg {
                            entry(if i == j { FunctionClass::HInfinity } else { FunctionClass::Zero })
                        } else if j == 0 {
                            entry(FunctionClass::HInfinity)
                        } else if i >= j {
                            entry(FunctionClass::Scalar)
                        } else {
                            entry(FunctionClass::Zero)
                        }
                    })
                    .collect()
            })
            .collect(),
    };
    check_pattern(&sym, &pattern, &blocks, "loop_bridge_loop")?;
    // the scalar blocks below the first column repeat the coefficients of h
    let h = &sym[hg][hg];
    for i in 1..hg {
        for j in 1..=i {
            let want = h.iter().find(|(d, _)| *d == i - j).map_or(T::zero(), |e| e.1.clone());
            let found = sym[i][j].first().map_or(T::zero(), |e| e.1.clone());
            if found != want {
                return Err(mismatch("loop_bridge_loop", blocks[i][0], blocks[j][0], want, found));
            }
        }
    }
    Ok(FixtureReport {
        fixture: "loop_bridge_loop".into(),
        level,
        blocks_checked: nb * nb,
        symbols: Some(sym),
    })
}

/// `H = ⊕_i ⊕_k H_{i,k}` with `H_{i,k}` the paths from `x_i` to `x_k`; the
/// operator `Σ α_k L_{e_k}` must be `α_k I` or `α_k T_z` from `H_{i,k}` to
/// `H_{i,k+1}`, the shift exactly when `k + 1 ≡ i`.
fn verify_cycle<T: Scalar + fmt::Debug>(alphas: &[T], level: usize) -> Result<FixtureReport<T>> {
    let n = alphas.len();
    if n == 0 {
        return Err(Error::Degenerate("cycle fixture needs at least one scalar".into()));
    }
    let g = corpus::cycle(n);
    let space = FockSpace::new(&g, level)?;
    let a = g
        .edge_ids()
        .map(|e| space.left::<T>(e).scale(&alphas[e.0]))
        .fold(SparseOperator::zeros(space.dim()), |acc, t| &acc + &t);
    let mut blocks = Vec::new();
    for i in 0..n {
        for k in 0..n {
            blocks.push(paths_where(&space, |p| p.source() == VertexId(i) && p.range() == VertexId(k)));
        }
    }
    check_partition(&space, &blocks, "cycle")?;
    let sym = block_symbols(&a, &blocks, "cycle")?;
    for i in 0..n {
        for k in 0..n {
            for k2 in 0..n {
                let (row, col) = (i * n + k2, i * n + k);
                let want: Vec<(usize, T)> = if k2 == (k + 1) % n {
                    let shift = usize::from((k + 1) % n == i);
                    vec![(shift, alphas[EdgeId(k).0].clone())]
                } else {
                    Vec::new()
                };
                let want: Vec<(usize, T)> = want.into_iter().filter(|e| !e.1.is_zero()).collect();
                if sym[row][col] != want {
                    return Err(mismatch(
                        "cycle",
                        blocks[row].first().copied().unwrap_or(0),
                        blocks[col].first().copied().unwrap_or(0),
                        want,
                        sym[row][col].clone(),
                    ));
                }
            }
        }
    }
    Ok(FixtureReport {
        fixture: "cycle".into(),
        level,
        blocks_checked: n * n * n,
        symbols: Some(sym),
    })
}

/// `H = ⊕_i P_{x_i}H ≅ ℂ^n ⊗ H^2` by word length, against
/// [`cycle_block_pattern`].
fn verify_cycle_blocked<T: Scalar + fmt::Debug>(
    n: usize,
    tbl: &CoefficientTable<T>,
    level: usize,
) -> Result<FixtureReport<T>> {
    if n == 0 {
        return Err(Error::Degenerate("cycle length must be positive".into()));
    }
    let g = corpus::cycle(n);
    let space = FockSpace::new(&g, level)?;
    let a = synthesize(tbl, &space)?;
    let blocks: Vec<Vec<usize>> = (0..n).map(|i| paths_where(&space, |p| p.range() == VertexId(i))).collect();
    check_partition(&space, &blocks, "cycle_blocked")?;
    let sym = block_symbols(&a, &blocks, "cycle_blocked")?;
    check_pattern(&sym, &cycle_block_pattern(n), &blocks, "cycle_blocked")?;
    Ok(FixtureReport {
        fixture: "cycle_blocked".into(),
        level,
        blocks_checked: n * n,
        symbols: Some(sym),
    })
}

/// Builds the fixture's operator at `level` and checks it against its
/// displayed form, reporting the first mismatching basis entry.
pub fn verify_fixture<T: Scalar + fmt::Debug>(fixture: &Fixture<T>, level: usize) -> Result<FixtureReport<T>> {
    match fixture {
        Fixture::Fork(s) => verify_fork(s, level),
        Fixture::LoopTail(t) => verify_loop_tail(t, level),
        Fixture::LoopBridgeLoop(t) => verify_loop_bridge_loop(t, level),
        Fixture::Cycle(a) => verify_cycle(a, level),
        Fixture::CycleBlocked(n, t) => verify_cycle_blocked(*n, t, level),
    }
}

/// Every path of length `≤ max_len` with coefficient `f(index)`, in basis order.
pub fn series_from<T: Scalar>(space: &FockSpace, max_len: usize, f: impl Fn(usize) -> T) -> CoefficientTable<T> {
    space
        .table()
        .paths()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() <= max_len)
        .map(|(i, p)| (p.clone(), f(i)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

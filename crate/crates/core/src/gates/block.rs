use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::linalg::{Complex, ComplexMatrix};

use super::{unitarity_deviation, GateError, MAX_DENSE_DIM, MAX_TOTAL_QUBITS, UNITARY_TOL};

/// Block-diagonal gate on `n` control and `m` target qubits.
///
/// Block `y` acts on global indices `[y*M..(y+1)*M)`. Only non-identity
/// blocks are stored; an absent block is `I_M`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonalGate {
    n: usize,
    m: usize,
    blocks: BTreeMap<usize, Arc<ComplexMatrix>>,
}

impl BlockDiagonalGate {
    /// The identity gate.
    pub fn identity(n: usize, m: usize) -> Result<Self, GateError> {
        if n == 0 || m == 0 {
            return Err(GateError::ZeroWidth);
        }
        if n + m > MAX_TOTAL_QUBITS {
            return Err(GateError::WidthCap {
                qubits: n + m,
                cap: MAX_TOTAL_QUBITS,
            });
        }
        Ok(Self {
            n,
            m,
            blocks: BTreeMap::new(),
        })
    }

    /// Builds a gate from explicit blocks, checking each one's shape and
    /// unitarity. Exact identity blocks are dropped.
    pub fn from_blocks(
        n: usize,
        m: usize,
        blocks: impl IntoIterator<Item = (usize, Arc<ComplexMatrix>)>,
    ) -> Result<Self, GateError> {
        let mut gate = Self::identity(n, m)?;
        for (y, block) in blocks {
            if y >= 1 << n {
                return Err(GateError::ControlOutOfRange { y, n });
            }
            if block.shape() != (1 << m, 1 << m) {
                return Err(GateError::BadTargetShape {
                    what: "block",
                    shape: block.shape(),
                });
            }
            let deviation = unitarity_deviation(&block);
            if deviation > UNITARY_TOL {
                return Err(GateError::NotUnitary {
                    what: "block",
                    deviation,
                });
            }
            gate.insert_unchecked(y, block);
        }
        Ok(gate)
    }

    pub(crate) fn insert_unchecked(&mut self, y: usize, block: Arc<ComplexMatrix>) {
        if block.is_identity() {
            self.blocks.remove(&y);
        } else {
            self.blocks.insert(y, block);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total dimension `N * M`.
    pub fn dim(&self) -> usize {
        1 << (self.n + self.m)
    }

    /// Block size `M`.
    pub fn block_dim(&self) -> usize {
        1 << self.m
    }

    /// Block `y`, or `None` when it is the identity.
    pub fn block(&self, y: usize) -> Option<&ComplexMatrix> {
        self.blocks.get(&y).map(Arc::as_ref)
    }

    /// Non-identity blocks in ascending control order.
    pub fn non_identity_blocks(&self) -> impl Iterator<Item = (usize, &ComplexMatrix)> {
        self.blocks.iter().map(|(&y, b)| (y, b.as_ref()))
    }

    pub fn num_non_identity_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Materializes the full `NM x NM` matrix. Verification and export only.
    pub fn to_dense(&self) -> Result<ComplexMatrix, GateError> {
        let dim = self.dim();
        if dim > MAX_DENSE_DIM {
            return Err(GateError::DenseCap {
                dim,
                cap: MAX_DENSE_DIM,
            });
        }
        let mut out = ComplexMatrix::identity(dim)?;
        let bm = self.block_dim();
        for (&y, block) in &self.blocks {
            let base = y * bm;
            for r in 0..bm {
                for c in 0..bm {
                    out[(base + r, base + c)] = block[(r, c)];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose, block by block.
    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            m: self.m,
            blocks: self
                .blocks
                .iter()
                .map(|(&y, b)| (y, Arc::new(b.adjoint())))
                .collect(),
        }
    }

    /// Entry `(i, j)` of the full matrix without materializing it.
    pub fn entry(&self, i: usize, j: usize) -> Complex {
        let bm = self.block_dim();
        let (bi, bj) = (i / bm, j / bm);
        if bi != bj {
            return Complex::new(0.0, 0.0);
        }
        match self.blocks.get(&bi) {
            Some(b) => b[(i % bm, j % bm)],
            None if i == j => Complex::new(1.0, 0.0),
            None => Complex::new(0.0, 0.0),
        }
    }

    /// Serializes to `{n, m, blocks: {"y": matrix, ...}}` listing only
    /// non-identity blocks.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&BlockFile::from(self)).expect("block serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, GateError> {
        BlockFile::from_json(text)?.into_gate()
    }
}

/// Unvalidated JSON form of a [`BlockDiagonalGate`]. Blocks may be
/// non-unitary, so a hand-edited file can still be inspected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub n: usize,
    pub m: usize,
    pub blocks: BTreeMap<usize, ComplexMatrix>,
}

impl BlockFile {
    pub fn from_json(text: &str) -> Result<Self, GateError> {
        serde_json::from_str(text).map_err(|e| GateError::Format(e.to_string()))
    }

    /// Checks widths, control values and block shapes.
    pub fn check_layout(&self) -> Result<(), GateError> {
        BlockDiagonalGate::identity(self.n, self.m)?;
        for (&y, block) in &self.blocks {
            if y >= 1 << self.n {
                return Err(GateError::ControlOutOfRange { y, n: self.n });
            }
            if block.shape() != (1 << self.m, 1 << self.m) {
                return Err(GateError::BadTargetShape {
                    what: "block",
                    shape: block.shape(),
                });
            }
        }
        Ok(())
    }

    /// Dense `NM x NM` matrix with absent blocks filled by the identity.
    /// Checks the layout but not unitarity.
    pub fn to_dense(&self) -> Result<ComplexMatrix, GateError> {
        self.check_layout()?;
        let bm = 1usize << self.m;
        let dim = bm << self.n;
        if dim > MAX_DENSE_DIM {
            return Err(GateError::DenseCap {
                dim,
                cap: MAX_DENSE_DIM,
            });
        }
        let mut out = ComplexMatrix::identity(dim)?;
        for (&y, block) in &self.blocks {
            for r in 0..bm {
                for c in 0..bm {
                    out[(y * bm + r, y * bm + c)] = block[(r, c)];
                }
            }
        }
        Ok(out)
    }

    /// Validates every block and builds the gate.
    pub fn into_gate(self) -> Result<BlockDiagonalGate, GateError> {
        self.check_layout()?;
        let blocks = self.blocks.into_iter().map(|(y, b)| (y, Arc::new(b)));
        BlockDiagonalGate::from_blocks(self.n, self.m, blocks)
    }
}

impl From<&BlockDiagonalGate> for BlockFile {
    fn from(g: &BlockDiagonalGate) -> Self {
        BlockFile {
            n: g.n,
            m: g.m,
            blocks: g
                .blocks
                .iter()
                .map(|(&y, b)| (y, (**b).clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::StandardGate;

    #[test]
    fn dense_places_blocks_on_diagonal() {
        let x = Arc::new(StandardGate::X.matrix());
        let g = BlockDiagonalGate::from_blocks(2, 1, [(3, x)]).unwrap();
        assert_eq!(g.to_dense().unwrap(), StandardGate::CCX.matrix());
        assert_eq!(g.entry(6, 7), Complex::new(1.0, 0.0));
        assert_eq!(g.entry(6, 6), Complex::new(0.0, 0.0));
        assert_eq!(g.entry(0, 0), Complex::new(1.0, 0.0));
        assert_eq!(g.entry(0, 2), Complex::new(0.0, 0.0));
    }

    #[test]
    fn identity_blocks_are_not_stored() {
        let id = Arc::new(ComplexMatrix::identity(2).unwrap());
        let g = BlockDiagonalGate::from_blocks(1, 1, [(0, id)]).unwrap();
        assert_eq!(g.num_non_identity_blocks(), 0);
    }

    #[test]
    fn rejects_invalid_blocks() {
        let shear = Arc::new(ComplexMatrix::from_real(2, 2, &[1., 1., 0., 1.]).unwrap());
        assert!(matches!(
            BlockDiagonalGate::from_blocks(1, 1, [(0, shear)]),
            Err(GateError::NotUnitary { .. })
        ));
        let x = Arc::new(StandardGate::X.matrix());
        assert!(BlockDiagonalGate::from_blocks(1, 1, [(2, x.clone())]).is_err());
        assert!(BlockDiagonalGate::from_blocks(1, 2, [(0, x)]).is_err());
    }

    #[test]
    fn dense_cap() {
        let g = BlockDiagonalGate::identity(12, 1).unwrap();
        assert!(matches!(g.to_dense(), Err(GateError::DenseCap { dim: 8192, .. })));
    }

    #[test]
    fn block_json_round_trip() {
        let x = Arc::new(StandardGate::X.matrix());
        let g = BlockDiagonalGate::from_blocks(4, 1, [(3, x.clone()), (12, x)]).unwrap();
        let text = g.to_json();
        assert!(text.starts_with(r#"{"n":4,"m":1,"blocks":{"3":{"rows":2"#), "{text}");
        assert_eq!(BlockDiagonalGate::from_json(&text).unwrap(), g);
        assert!(BlockDiagonalGate::from_json(r#"{"n":1,"m":1,"blocks":{"a":{"rows":2,"cols":2,"entries":[[0,0],[1,0],[1,0],[0,0]]}}}"#).is_err());
    }

    #[test]
    fn block_file_keeps_non_unitary_blocks() {
        let text = r#"{"n":1,"m":1,"blocks":{"1":{"rows":2,"cols":2,"entries":[[1,0],[1,0],[0,0],[1,0]]}}}"#;
        let raw = BlockFile::from_json(text).unwrap();
        let dense = raw.to_dense().unwrap();
        assert_eq!(dense[(2, 3)], Complex::new(1.0, 0.0));
        assert_eq!(dense[(0, 0)], Complex::new(1.0, 0.0));
        assert!(matches!(raw.into_gate(), Err(GateError::NotUnitary { .. })));
        let bad_y = r#"{"n":1,"m":1,"blocks":{"2":{"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0],[1,0]]}}}"#;
        assert!(matches!(
            BlockFile::from_json(bad_y).unwrap().to_dense(),
            Err(GateError::ControlOutOfRange { y: 2, n: 1 })
        ));
    }
}

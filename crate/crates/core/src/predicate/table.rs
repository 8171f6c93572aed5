use serde::{Deserialize, Serialize};

use super::PredicateError;

/// The control function `f: [0..2^n) -> {0, 1}` in dense form.
///
/// `bits[y]` is `f(y)`. The marked set is the ascending list of `y` with
/// `f(y) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    /// Hard upper bound on the control width of any table.
    pub const MAX_WIDTH: usize = 24;

    fn check_width(n: usize) -> Result<(), PredicateError> {
        if n == 0 {
            return Err(PredicateError::ZeroWidth);
        }
        if n > Self::MAX_WIDTH {
            return Err(PredicateError::WidthCap {
                n,
                cap: Self::MAX_WIDTH,
            });
        }
        Ok(())
    }

    pub fn from_bits(n: usize, bits: Vec<bool>) -> Result<Self, PredicateError> {
        Self::check_width(n)?;
        if bits.len() != 1 << n {
            return Err(PredicateError::TableLength { n, len: bits.len() });
        }
        Ok(Self { n, bits })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self, PredicateError> {
        Self::check_width(n)?;
        Ok(Self {
            n,
            bits: (0..1usize << n).map(f).collect(),
        })
    }

    /// Table whose marked set is exactly `marked`.
    pub fn from_marked(n: usize, marked: &[usize]) -> Result<Self, PredicateError> {
        Self::check_width(n)?;
        let mut bits = vec![false; 1 << n];
        for &y in marked {
            if y >= bits.len() {
                return Err(PredicateError::MarkedOutOfRange { y, len: bits.len() });
            }
            bits[y] = true;
        }
        Ok(Self { n, bits })
    }

    pub fn zeros(n: usize) -> Result<Self, PredicateError> {
        Self::from_fn(n, |_| false)
    }

    pub fn ones(n: usize) -> Result<Self, PredicateError> {
        Self::from_fn(n, |_| true)
    }

    /// Control width in qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `f(y)`; false when `y` is out of range.
    pub fn is_marked(&self, y: usize) -> bool {
        self.bits.get(y).copied().unwrap_or(false)
    }

    /// `f(y)` as 0 or 1.
    pub fn value(&self, y: usize) -> u8 {
        self.is_marked(y) as u8
    }

    /// Ascending list of `y` with `f(y) = 1`.
    pub fn marked_set(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(y, &b)| b.then_some(y))
            .collect()
    }

    pub fn count_marked(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Hex packing: the table read as the integer `sum f(y) 2^y`, written
    /// most-significant digit first with exactly `max(1, 2^n / 4)` lowercase
    /// digits.
    pub fn to_hex(&self) -> String {
        let digits = (self.bits.len() / 4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|&b| self.is_marked(4 * d + b))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(nibble, 16).expect("nibble < 16")
            })
            .collect()
    }

    /// Inverse of [`TruthTable::to_hex`]. Accepts an optional `0x` prefix.
    pub fn from_hex(n: usize, text: &str) -> Result<Self, PredicateError> {
        Self::check_width(n)?;
        let text = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .unwrap_or(text);
        let len = 1usize << n;
        let digits = (len / 4).max(1);
        if text.len() != digits {
            return Err(PredicateError::BadHex(format!(
                "expected {digits} hex digits for n = {n}, got {}",
                text.len()
            )));
        }
        let mut bits = vec![false; len];
        for (d, ch) in text.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| PredicateError::BadHex(format!("invalid hex digit `{ch}`")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let y = 4 * d + b;
                    if y >= len {
                        return Err(PredicateError::BadHex(format!(
                            "bit {y} set beyond table length {len}"
                        )));
                    }
                    bits[y] = true;
                }
            }
        }
        Ok(Self { n, bits })
    }
}

/// Wire form `{n, bits: [0|1, ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    n: usize,
    bits: Vec<u8>,
}

impl TryFrom<TableJson> for TruthTable {
    type Error = PredicateError;

    fn try_from(value: TableJson) -> Result<Self, Self::Error> {
        let bits = value
            .bits
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(PredicateError::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        TruthTable::from_bits(value.n, bits)
    }
}

impl From<TruthTable> for TableJson {
    fn from(t: TruthTable) -> Self {
        TableJson {
            n: t.n,
            bits: t.bits.into_iter().map(u8::from).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn marked_sets() {
        let single = TruthTable::from_bits(2, vec![false, false, false, true]).unwrap();
        assert_eq!(single.marked_set(), vec![3]);
        let or = TruthTable::from_bits(2, vec![false, true, true, true]).unwrap();
        assert_eq!(or.marked_set(), vec![1, 2, 3]);
        assert!(TruthTable::zeros(3).unwrap().marked_set().is_empty());
    }

    #[test]
    fn length_and_width_validation() {
        assert_eq!(
            TruthTable::from_bits(2, vec![true; 3]),
            Err(PredicateError::TableLength { n: 2, len: 3 })
        );
        assert_eq!(TruthTable::zeros(0), Err(PredicateError::ZeroWidth));
        assert!(matches!(
            TruthTable::zeros(25),
            Err(PredicateError::WidthCap { n: 25, .. })
        ));
        assert!(TruthTable::from_marked(2, &[4]).is_err());
    }

    #[test]
    fn hex_packing_examples() {
        let t = TruthTable::from_marked(2, &[3]).unwrap();
        assert_eq!(t.to_hex(), "8");
        let or = TruthTable::from_marked(2, &[1, 2, 3]).unwrap();
        assert_eq!(or.to_hex(), "e");
        let one_bit = TruthTable::from_marked(1, &[1]).unwrap();
        assert_eq!(one_bit.to_hex(), "2");
        let wide = TruthTable::from_marked(3, &[0, 7]).unwrap();
        assert_eq!(wide.to_hex(), "81");
        assert!(TruthTable::from_hex(1, "4").is_err());
        assert!(TruthTable::from_hex(3, "1").is_err());
        assert!(TruthTable::from_hex(3, "g1").is_err());
        assert_eq!(TruthTable::from_hex(3, "0x81").unwrap(), wide);
    }

    #[test]
    fn json_form() {
        let t = TruthTable::from_marked(2, &[1, 2, 3]).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"{"n":2,"bits":[0,1,1,1]}"#);
        assert_eq!(serde_json::from_str::<TruthTable>(&text).unwrap(), t);
        assert!(serde_json::from_str::<TruthTable>(r#"{"n":1,"bits":[0,2]}"#).is_err());
        assert!(serde_json::from_str::<TruthTable>(r#"{"n":2,"bits":[0,1]}"#).is_err());
    }

    proptest! {
        #[test]
        fn hex_round_trip(n in 1usize..8, seed in any::<u64>()) {
            let t = TruthTable::from_fn(n, |y| (seed.rotate_left(y as u32) ^ (y as u64 * 0x9e37)) & 1 == 1).unwrap();
            prop_assert_eq!(TruthTable::from_hex(n, &t.to_hex()).unwrap(), t);
        }
    }
}

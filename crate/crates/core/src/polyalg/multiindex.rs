use crate::error::{Error, Result};

/// Exponent pair of a shifted monomial `(x1 - z1)^a1 (x2 - z2)^a2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex {
    pub a1: u32,
    pub a2: u32,
}

impl MultiIndex {
    pub const fn new(a1: u32, a2: u32) -> Self {
        Self { a1, a2 }
    }

    /// Total degree `|α|`.
    pub const fn order(self) -> u32 {
        self.a1 + self.a2
    }

    /// Linear index: `C(|α|+1, 2) + α2`.
    pub fn to_index(self) -> usize {
        let m = self.order() as usize;
        m * (m + 1) / 2 + self.a2 as usize
    }

    pub fn from_index(k: usize) -> Self {
        // floor((sqrt(8k+1) - 1) / 2), corrected against rounding
        let mut m = ((((8 * k + 1) as f64).sqrt() - 1.0) / 2.0).floor() as usize;
        while m * (m + 1) / 2 > k {
            m -= 1;
        }
        while (m + 1) * (m + 2) / 2 <= k {
            m += 1;
        }
        let a2 = k - m * (m + 1) / 2;
        MultiIndex::new((m - a2) as u32, a2 as u32)
    }

    pub fn checked_sub(self, o: MultiIndex) -> Option<MultiIndex> {
        Some(MultiIndex::new(self.a1.checked_sub(o.a1)?, self.a2.checked_sub(o.a2)?))
    }
}

impl std::ops::Add for MultiIndex {
    type Output = MultiIndex;
    fn add(self, o: MultiIndex) -> MultiIndex {
        MultiIndex::new(self.a1 + o.a1, self.a2 + o.a2)
    }
}

pub fn mi_to_index(alpha: MultiIndex) -> usize {
    alpha.to_index()
}

/// Inverse of [`mi_to_index`]; negative indices are rejected.
pub fn index_to_mi(k: i64) -> Result<MultiIndex> {
    if k < 0 {
        return Err(Error::InvalidParameter(format!("multiindex position {k} is negative")));
    }
    Ok(MultiIndex::from_index(k as usize))
}

//! Multi-word vertex bitsets stored as plain `u64` slices.

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[inline]
pub(crate) fn set(bits: &mut [u64], i: usize) {
    bits[i / WORD] |= 1u64 << (i % WORD);
}

#[inline]
pub(crate) fn clear(bits: &mut [u64], i: usize) {
    bits[i / WORD] &= !(1u64 << (i % WORD));
}

/// Iterates over the set positions in increasing order.
pub(crate) fn iter(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(wi, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let tz = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD + tz)
            }
        })
    })
}

/// A bitset with the lowest `n` positions set.
pub(crate) fn full(n: usize) -> Vec<u64> {
    let mut bits = vec![0u64; words_for(n)];
    for (wi, w) in bits.iter_mut().enumerate() {
        let lo = wi * WORD;
        let hi = (lo + WORD).min(n);
        *w = if hi - lo == WORD {
            u64::MAX
        } else {
            (1u64 << (hi - lo)) - 1
        };
    }
    bits
}

pub(crate) fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut bits = vec![0u64; words_for(n)];
    for i in idx {
        set(&mut bits, i);
    }
    bits
}

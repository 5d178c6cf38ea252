//! Fixed-width index packing: value `j` occupies stream bits
//! `j*B .. j*B + B`, least significant bit first, where stream bit `p` is
//! bit `p % 8` of byte `p / 8`.

pub fn packed_len(count: usize, bits: u8) -> usize {
    (count * usize::from(bits)).div_ceil(8)
}

pub fn pack(values: &[u8], bits: u8) -> Vec<u8> {
    debug_assert!((1..=8).contains(&bits));
    let mut out = Vec::with_capacity(packed_len(values.len(), bits));
    let mask = (1u32 << bits) - 1;
    let mut acc = 0u32;
    let mut filled = 0u8;
    for &v in values {
        debug_assert!(u32::from(v) <= mask);
        acc |= (u32::from(v) & mask) << filled;
        filled += bits;
        while filled >= 8 {
            out.push(acc as u8);
            acc >>= 8;
            filled -= 8;
        }
    }
    if filled > 0 {
        out.push(acc as u8);
    }
    out
}

/// Inverse of [`pack`]; `bytes` must hold at least `packed_len(count, bits)` bytes.
pub fn unpack(bytes: &[u8], bits: u8, count: usize) -> Vec<u8> {
    debug_assert!(bytes.len() >= packed_len(count, bits));
    let mask = (1u32 << bits) - 1;
    let mut out = Vec::with_capacity(count);
    let mut acc = 0u32;
    let mut filled = 0u8;
    let mut src = bytes.iter();
    while out.len() < count {
        while filled < bits {
            acc |= u32::from(*src.next().expect("bitstream too short")) << filled;
            filled += 8;
        }
        out.push((acc & mask) as u8);
        acc >>= bits;
        filled -= bits;
    }
    out
}

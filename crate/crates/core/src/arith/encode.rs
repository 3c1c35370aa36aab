//! Bijective coding of bit-strings as natural numbers.
//!
//! A string with bits `b1 .. bk` is coded as the number whose binary
//! notation is `1 b1 .. bk`, minus one. The empty string codes to 0,
//! `<0>` to 1, `<1>` to 2, `<0,0>` to 3 and so on. Appending a bit is
//! `2*code + 1 + bit`.

/// Encodes a bit list (values 0/1) as its numeric code.
pub fn encode_string(bits: &[u8]) -> u64 {
    let mut code: u64 = 0;
    for &b in bits {
        debug_assert!(b <= 1);
        code = 2 * code + 1 + b as u64;
    }
    code
}

/// Decodes a numeric code back to its bit list.
pub fn decode_string(mut code: u64) -> Vec<u8> {
    let mut rev = Vec::new();
    while code > 0 {
        // Last bit of the string is (code + 1) mod 2; dropping it maps
        // code to (code + 1) / 2 - 1.
        let bit = ((code + 1) % 2) as u8;
        rev.push(bit);
        code = (code + 1) / 2 - 1;
    }
    rev.reverse();
    rev
}

/// Length of the coded string without materializing it.
pub fn code_len(code: u64) -> u64 {
    // The binary notation of code+1 has len+1 digits.
    64 - (code + 1).leading_zeros() as u64 - 1
}

/// Appends one bit at the end.
pub fn code_snoc(code: u64, bit: u8) -> u64 {
    2 * code + 1 + bit as u64
}

/// All strings of the given length, in lexicographic order.
pub fn strings_of_len(len: u32) -> impl Iterator<Item = Vec<u8>> {
    (0u64..(1 << len)).map(move |i| {
        (0..len)
            .rev()
            .map(|j| ((i >> j) & 1) as u8)
            .collect::<Vec<u8>>()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_small_cases() {
        assert_eq!(encode_string(&[]), 0);
        assert_eq!(encode_string(&[0]), 1);
        assert_eq!(encode_string(&[1]), 2);
        assert_eq!(decode_string(0), Vec::<u8>::new());
        assert_eq!(decode_string(1), vec![0]);
        assert_eq!(decode_string(2), vec![1]);
    }

    #[test]
    fn round_trip() {
        assert_eq!(decode_string(encode_string(&[1, 0, 1])), vec![1, 0, 1]);
        // Exhaustive over all strings up to length 10.
        for len in 0..=10u32 {
            for s in strings_of_len(len) {
                assert_eq!(decode_string(encode_string(&s)), s);
            }
        }
        // And the other direction over an initial segment of codes.
        for code in 0..4096u64 {
            assert_eq!(encode_string(&decode_string(code)), code);
        }
    }

    #[test]
    fn lengths() {
        for len in 0..=10u32 {
            for s in strings_of_len(len) {
                assert_eq!(code_len(encode_string(&s)), len as u64);
            }
        }
    }
}

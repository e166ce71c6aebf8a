//! In-place odometer over tuples in lexicographic order, used by the
//! exhaustive scans. Avoids per-probe allocation.

pub(crate) struct Odometer {
    digits: Vec<usize>,
    base: usize,
    fresh: bool,
    empty: bool,
}

impl Odometer {
    pub fn new(base: usize, len: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            base,
            fresh: true,
            empty: base == 0 && len > 0,
        }
    }

    /// Yields the next tuple, or None when exhausted.
    pub fn next(&mut self) -> Option<&[usize]> {
        if self.empty {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        None
    }
}

/// Decodes `rank` into `out` as base-`base` digits, most significant first.
pub(crate) fn decode(mut rank: u64, base: usize, out: &mut [usize]) {
    for i in (0..out.len()).rev() {
        out[i] = (rank % base as u64) as usize;
        rank /= base as u64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let mut odo = Odometer::new(3, 2);
        let mut seen = Vec::new();
        while let Some(t) = odo.next() {
            seen.push(t.to_vec());
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[8], vec![2, 2]);
    }

    #[test]
    fn decode_matches() {
        let mut buf = [0usize; 3];
        decode(5, 2, &mut buf);
        assert_eq!(buf, [1, 0, 1]);
    }
}

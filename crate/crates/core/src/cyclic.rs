//! Cyclic index arithmetic on the vertex set `{1, ..., n}`.

/// Normalizes an integer to `1..=n`.
pub(crate) fn norm(x: i64, n: usize) -> usize {
    let n = n as i64;
    let r = (x - 1).rem_euclid(n) + 1;
    r as usize
}

/// Cyclic successor.
pub(crate) fn succ(x: usize, n: usize) -> usize {
    norm(x as i64 + 1, n)
}

/// Cyclic predecessor.
pub(crate) fn pred(x: usize, n: usize) -> usize {
    norm(x as i64 - 1, n)
}

/// Length of the cyclic arc walked from `from` to `to` in increasing direction
/// (0 when `from == to`).
pub(crate) fn arc_gap(from: usize, to: usize, n: usize) -> usize {
    (to as i64 - from as i64).rem_euclid(n as i64) as usize
}

/// Whether `x` lies on the closed cyclic arc from `from` to `to`, walking in
/// increasing direction.
pub(crate) fn arc_contains(x: usize, from: usize, to: usize, n: usize) -> bool {
    arc_gap(from, x, n) <= arc_gap(from, to, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_wraps_both_ways() {
        assert_eq!(norm(0, 5), 5);
        assert_eq!(norm(6, 5), 1);
        assert_eq!(norm(-4, 5), 1);
        assert_eq!(succ(5, 5), 1);
        assert_eq!(pred(1, 5), 5);
    }

    #[test]
    fn arcs() {
        assert!(arc_contains(1, 1, 3, 8));
        assert!(arc_contains(3, 1, 3, 8));
        assert!(!arc_contains(4, 1, 3, 8));
        assert!(arc_contains(8, 7, 2, 8));
        assert!(arc_contains(1, 7, 2, 8));
        assert!(!arc_contains(5, 7, 2, 8));
        assert_eq!(arc_gap(7, 2, 8), 3);
    }
}

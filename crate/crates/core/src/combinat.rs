//! Binary-tuple index machinery: partial sums, the ζ statistic, the
//! constrained tuple enumerators behind the structure-constant sums, the
//! exponent θ, and the N-vector data feeding the second-case closed form.
//!
//! Tuples are indexed 1-based to match the formulas they implement; partial
//! sums clip out-of-range indices and an inverted range sums to zero.
//!
//! The enumerators materialize full sets by filtering `{0,1}^N`. At desk
//! scale (`N` at most ~12) this is plenty fast and is correct by
//! construction against the defining conditions.

use crate::qring::QContext;

pub use crate::qring::even_odd;

/// A tuple in `{0,1}^N`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryTuple {
    bits: Vec<u8>,
}

impl BinaryTuple {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "entries must be 0 or 1");
        Self { bits }
    }

    pub fn from_mask(mask: u64, len: usize) -> Self {
        let bits = (0..len).map(|p| ((mask >> p) & 1) as u8).collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// 1-based entry access; positions outside `1..=len` read as 0.
    pub fn get(&self, r: i64) -> i64 {
        if r < 1 || r > self.bits.len() as i64 {
            0
        } else {
            self.bits[(r - 1) as usize] as i64
        }
    }

    /// Total weight `|l|`.
    pub fn weight(&self) -> i64 {
        self.bits.iter().map(|&b| b as i64).sum()
    }

    /// `|l|_{r;s}`: the sum of entries r..=s, clipped to valid indices,
    /// and 0 whenever `r > s`.
    pub fn partial_sum(&self, r: i64, s: i64) -> i64 {
        if r > s {
            return 0;
        }
        let lo = r.max(1);
        let hi = s.min(self.bits.len() as i64);
        (lo..=hi).map(|p| self.bits[(p - 1) as usize] as i64).sum()
    }

    /// Renders as a 0/1 string for debug output.
    pub fn render(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

/// The slot of `s` consumed at position `r` of `l`: `s_{r - |l|_{1;r}}`.
pub fn s_slot(l: &BinaryTuple, s: &BinaryTuple, r: i64) -> i64 {
    s.get(r - l.partial_sum(1, r))
}

/// `ζ^{(r)} = 2|s|_{1;r-|l|_{1;r}} + |l|_{1;r} - r`.
pub fn zeta(l: &BinaryTuple, s: &BinaryTuple, r: i64) -> i64 {
    let lw = l.partial_sum(1, r);
    2 * s.partial_sum(1, r - lw) + lw - r
}

fn all_tuples(len: i64) -> impl Iterator<Item = BinaryTuple> {
    assert!((0..=63).contains(&len), "tuple length out of range");
    (0u64..(1u64 << len)).map(move |mask| BinaryTuple::from_mask(mask, len as usize))
}

/// All `l` in `{0,1}^{1-a}` with `|l|_{1;1-a-k} = m` and `|l|_{2-a-k;1-a} = m'`.
pub fn enumerate_l(m: i64, m_prime: i64, k: i64, a: i64) -> Vec<BinaryTuple> {
    assert!(a <= 0);
    all_tuples(1 - a)
        .filter(|l| {
            l.partial_sum(1, 1 - a - k) == m && l.partial_sum(2 - a - k, 1 - a) == m_prime
        })
        .collect()
}

/// All `s` in `{0,1}^{1-a-m-m'}` of weight `(1-a-m-m')/2` satisfying the
/// ballot condition `|s|_{1;p} >= p/2` at every position. Empty when
/// `1-a-m-m'` is odd.
pub fn enumerate_s_case1(m: i64, m_prime: i64, a: i64) -> Vec<BinaryTuple> {
    assert!(a <= 0);
    let len = 1 - a - m - m_prime;
    if len < 0 || len % 2 != 0 {
        return Vec::new();
    }
    all_tuples(len)
        .filter(|s| {
            2 * s.weight() == len && (1..=len).all(|p| 2 * s.partial_sum(1, p) >= p)
        })
        .collect()
}

/// The subset of [`enumerate_s_case1`] with `|s|_{1;1-a-k-m} = 1-a-k-m-t`.
pub fn enumerate_s_case2(m: i64, m_prime: i64, k: i64, t: i64, a: i64) -> Vec<BinaryTuple> {
    enumerate_s_case1(m, m_prime, a)
        .into_iter()
        .filter(|s| s.partial_sum(1, 1 - a - k - m) == 1 - a - k - m - t)
        .collect()
}

/// All `l` in `{0,1}^{-a}` with `|l| = m` and `|l|_{1;1-a-k+d} = m'`.
pub fn enumerate_lp(m: i64, m_prime: i64, k: i64, d: i64, a: i64) -> Vec<BinaryTuple> {
    assert!(a <= 0);
    debug_assert!(1 <= k && k <= 1 - a && 0 <= d && d < k);
    all_tuples(-a)
        .filter(|l| l.weight() == m && l.partial_sum(1, 1 - a - k + d) == m_prime)
        .collect()
}

/// All `s` in `{0,1}^{-a-m}` of weight `(1-a-m)/2` satisfying the shifted
/// ballot condition `|s|_{1;p} >= (p + δ^{(p)})/2` (with the offset δ
/// switching on from position `1-a-k+d-m'`) and
/// `|s|_{1;1-a-k-m'+d} = 1-a-k-m'-t+d != 0`.
pub fn enumerate_sp(m: i64, m_prime: i64, k: i64, t: i64, d: i64, a: i64) -> Vec<BinaryTuple> {
    assert!(a <= 0);
    debug_assert!(1 <= k && k <= 1 - a && 0 <= d && d < k && m_prime <= m);
    let len = -a - m;
    if len < 0 || (1 - a - m) % 2 != 0 {
        return Vec::new();
    }
    let threshold = 1 - a - k + d - m_prime;
    let pinned_index = 1 - a - k - m_prime + d;
    let pinned_value = 1 - a - k - m_prime - t + d;
    if pinned_value == 0 {
        return Vec::new();
    }
    all_tuples(len)
        .filter(|s| {
            2 * s.weight() == 1 - a - m
                && (1..=len).all(|p| {
                    let delta = i64::from(p >= threshold);
                    2 * s.partial_sum(1, p) >= p + delta
                })
                && s.partial_sum(1, pinned_index) == pinned_value
        })
        .collect()
}

/// `θ_{l,s,k} = -a ζ^{(1-a-k)} - 2 Σ_{r=1}^{1-a} ζ^{(r-1)}`.
pub fn theta_exponent(l: &BinaryTuple, s: &BinaryTuple, k: i64, a: i64) -> i64 {
    let mut total = -a * zeta(l, s, 1 - a - k);
    for r in 1..=(1 - a) {
        total -= 2 * zeta(l, s, r - 1);
    }
    total
}

/// The N-vector data of the second-case closed form: the iteration depth
/// `T`, the entries `N_0..N_{T+1}`, the summation bounds `ξ_0`, `ξ_1`, and
/// the residual position set `R_{k,d}` with its offsets `ν_{r,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NVector {
    pub t: usize,
    /// `N_0, N_1, ..., N_{T+1}` (length `t + 2`).
    pub entries: Vec<i64>,
    pub xi0: i64,
    pub xi1: i64,
    /// Positions `{1..-a} \ {2-a-k..1-a-k+d}` in ascending order.
    pub r_set: Vec<i64>,
    /// `ν_{r,k}` for each position in `r_set` (0 left of the gap, 1 right of it).
    pub nu: Vec<i64>,
}

impl NVector {
    /// `|N|_{0;p} = N_0 + ... + N_p`.
    pub fn prefix_sum(&self, p: usize) -> i64 {
        self.entries[..=p].iter().sum()
    }
}

/// Computes the N-vector for an admissible `(l, s, k, d, t)` configuration.
///
/// The marker `r_b` is found by scanning positions `2-a-k..1-a-k+d` for the
/// b-th factor with `l_r = 0` and `s`-slot 0; those are exactly the
/// positions whose running F-count enters `|N|_{1;b}`.
///
/// Panics if any computed `N_b` is negative, which signals a caller bug:
/// membership of `s` in the second-case enumerator guarantees
/// non-negativity.
pub fn nvector(
    l: &BinaryTuple,
    s: &BinaryTuple,
    k: i64,
    d: i64,
    t: i64,
    ctx: &QContext,
) -> NVector {
    let a = ctx.a_ij();
    debug_assert_eq!(l.len() as i64, -a);
    let n0 = zeta(l, s, 1 - a - k);
    let s0 = s.partial_sum(1, 1 - a - k - l.partial_sum(1, 1 - a - k));
    let big_t = n0 + t - s0;
    assert!(big_t >= 0, "negative iteration depth: caller bug");
    let big_t = big_t as usize;

    let markers: Vec<i64> = ((2 - a - k)..=(1 - a - k + d))
        .filter(|&r| l.get(r) == 0 && s_slot(l, s, r) == 0)
        .collect();
    assert_eq!(
        markers.len(),
        big_t,
        "marker scan disagrees with the iteration depth: caller bug"
    );

    let mut entries = Vec::with_capacity(big_t + 2);
    entries.push(n0);
    let mut prev = 0i64;
    for (b, &rb) in markers.iter().enumerate() {
        let b = b as i64 + 1;
        let cum = rb + a + k - b - 1 - l.partial_sum(2 - a - k, rb);
        entries.push(cum - prev);
        prev = cum;
    }
    let total = zeta(l, s, 1 - a - k + d) + big_t as i64;
    entries.push(total - n0 - prev);
    assert!(
        entries.iter().all(|&n| n >= 0),
        "negative N-vector entry: caller bug"
    );

    let tail_sum = prev; // |N|_{1;T}
    let xi0 = big_t as i64 - tail_sum - 1;
    let xi1 = big_t as i64 - (tail_sum + entries[big_t + 1]);

    let mut r_set = Vec::new();
    let mut nu = Vec::new();
    for r in 1..=(-a) {
        if (2 - a - k..=1 - a - k + d).contains(&r) {
            continue;
        }
        r_set.push(r);
        nu.push(i64::from(r > 1 - a - k));
    }

    NVector {
        t: big_t,
        entries,
        xi0,
        xi1,
        r_set,
        nu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt(bits: &[u8]) -> BinaryTuple {
        BinaryTuple::new(bits.to_vec())
    }

    fn set(v: Vec<BinaryTuple>) -> Vec<String> {
        v.into_iter().map(|t| t.render()).collect()
    }

    #[test]
    fn partial_sum_examples() {
        let l = bt(&[1, 0, 1]);
        assert_eq!(l.partial_sum(1, 3), 2);
        assert_eq!(l.partial_sum(2, 1), 0);
        assert_eq!(l.partial_sum(2, 3), 1);
        // clipping
        assert_eq!(l.partial_sum(-4, 17), 2);
        assert_eq!(l.partial_sum(1, l.len() as i64), l.weight());
    }

    #[test]
    fn zeta_examples() {
        let l = bt(&[0, 0]);
        let s = bt(&[1, 0]);
        assert_eq!(zeta(&l, &s, 0), 0);
        assert_eq!(zeta(&l, &s, 1), 1);
        assert_eq!(zeta(&l, &s, 2), 0);
    }

    #[test]
    fn enumerate_l_examples() {
        assert_eq!(set(enumerate_l(0, 0, 1, -1)), vec!["00"]);
        // first 1-a-k positions sum to m, last k positions to m'
        assert_eq!(set(enumerate_l(1, 0, 2, -2)), vec!["100"]);
        assert_eq!(set(enumerate_l(1, 1, 2, -2)), vec!["110", "101"]);
        assert_eq!(set(enumerate_l(0, 0, 0, -1)), vec!["00"]);
    }

    #[test]
    fn enumerate_l_empty_outside_containment() {
        // empty whenever m > 1-a-k or m' > k
        for a in -4..=-1i64 {
            for k in 0..=(1 - a) {
                for m in 0..=(1 - a) {
                    for mp in 0..=(1 - a) {
                        if m > 1 - a - k || mp > k {
                            assert!(enumerate_l(m, mp, k, a).is_empty());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_s_case1_examples() {
        assert_eq!(set(enumerate_s_case1(0, 0, -1)), vec!["10"]);
        assert!(enumerate_s_case1(0, 0, -2).is_empty());
        assert_eq!(set(enumerate_s_case1(0, 0, -3)), vec!["1100", "1010"]);
    }

    #[test]
    fn ballot_condition_holds_on_enumerated_sets() {
        for a in -5..=-1i64 {
            for m in 0..=(-a) {
                for mp in 0..=(-a - m) {
                    for s in enumerate_s_case1(m, mp, a) {
                        for p in 1..=(s.len() as i64) {
                            assert!(2 * s.partial_sum(1, p) >= p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_s_case2_examples() {
        assert_eq!(set(enumerate_s_case2(0, 0, 1, 0, -1)), vec!["10"]);
        assert_eq!(set(enumerate_s_case2(0, 0, 0, 1, -1)), vec!["10"]);
        assert!(enumerate_s_case2(0, 0, 0, 0, -1).is_empty());
    }

    #[test]
    fn s_case2_partitions_s_case1() {
        for a in -5..=-1i64 {
            for m in 0..=(-a) {
                for mp in 0..=(-a - m) {
                    let full = enumerate_s_case1(m, mp, a);
                    for k in 0..=(1 - a - m) {
                        let mut recovered: Vec<BinaryTuple> = Vec::new();
                        for t in 0..=(1 - a) {
                            let part = enumerate_s_case2(m, mp, k, t, a);
                            for s in part {
                                assert!(!recovered.contains(&s), "t-slices must be disjoint");
                                recovered.push(s);
                            }
                        }
                        assert_eq!(recovered.len(), full.len());
                        for s in &full {
                            assert!(recovered.contains(s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_lp_examples() {
        assert_eq!(set(enumerate_lp(0, 0, 1, 0, -1)), vec!["0"]);
        assert_eq!(set(enumerate_lp(1, 0, 2, 0, -2)), vec!["01"]);
        // the prefix condition |l|_{1;1-a-k+d} = m' keeps both weight-one
        // tuples here
        assert_eq!(set(enumerate_lp(1, 1, 1, 0, -2)), vec!["10", "01"]);
        assert_eq!(set(enumerate_lp(1, 0, 3, 0, -2)), vec!["10", "01"]);
    }

    #[test]
    fn enumerate_sp_examples() {
        assert_eq!(set(enumerate_sp(0, 0, 1, 0, 0, -1)), vec!["1"]);
        assert_eq!(set(enumerate_sp(0, 0, 2, 0, 1, -1)), vec!["1"]);
        assert!(enumerate_sp(0, 0, 2, 1, 0, -1).is_empty());
    }

    #[test]
    fn theta_exponent_examples() {
        let l = bt(&[0, 0]);
        let s = bt(&[1, 0]);
        assert_eq!(theta_exponent(&l, &s, 1, -1), -1);
        assert_eq!(theta_exponent(&l, &s, 0, -1), -2);
        assert_eq!(theta_exponent(&l, &s, 2, -1), -2);
    }

    #[test]
    fn nvector_examples() {
        let ctx = QContext::symmetric(-1);
        let l = bt(&[0]);
        let s = bt(&[1]);

        let nv = nvector(&l, &s, 1, 0, 0, &ctx);
        assert_eq!(nv.t, 0);
        assert_eq!(nv.entries, vec![1, 0]);

        let nv = nvector(&l, &s, 2, 0, 0, &ctx);
        assert_eq!(nv.t, 0);
        assert_eq!(nv.entries, vec![0, 0]);

        let nv = nvector(&l, &s, 2, 1, 0, &ctx);
        assert_eq!(nv.t, 0);
        assert_eq!(nv.entries, vec![0, 1]);
    }

    #[test]
    fn nvector_sums_check_out_on_admissible_inputs() {
        // Σ N_b == ζ^{(1-a-k+d)} + T and N_0 == ζ^{(1-a-k)} over everything
        // the second-case enumerators produce.
        for a in -4..=-1i64 {
            let ctx = QContext::symmetric(a);
            for m in 0..=(-1 - a) {
                if (a + m).rem_euclid(2) == 0 {
                    continue;
                }
                for t in 0..=((-1 - a - m) / 2) {
                    for k in 1..=(1 - a) {
                        for d in 0..k {
                            for mp in 0..=m {
                                for l in enumerate_lp(m, mp, k, d, a) {
                                    for s in enumerate_sp(m, mp, k, t, d, a) {
                                        let nv = nvector(&l, &s, k, d, t, &ctx);
                                        assert_eq!(nv.entries[0], zeta(&l, &s, 1 - a - k));
                                        assert_eq!(
                                            nv.prefix_sum(nv.t + 1),
                                            zeta(&l, &s, 1 - a - k + d) + nv.t as i64
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

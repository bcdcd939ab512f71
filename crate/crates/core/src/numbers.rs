//! Exact arithmetic for the AGL(d,2) case: the order `t` of the would-be kernel, its
//! divisibility conditions, the 2-adic bounds, and the primitive-divisor scan of
//! `2^d − 3`.

use std::fs;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `d` for which `t` is evaluated from factorials.
pub const T_VALUE_MAX_D: u32 = 16;

/// Largest `d` accepted by the AGL helpers (`2^d` must fit in a `u128`).
pub const AGL_MAX_D: u32 = 100;

/// `2`-adic valuation; `x = 0` is an error.
pub fn v2(x: &BigUint) -> Result<u64> {
    x.trailing_zeros()
        .ok_or_else(|| Error::InvalidParameters("v2(0) is undefined".into()))
}

/// `v₂(m!) = Σ ⌊m/2ⁱ⌋`.
pub fn v2_factorial(m: u128) -> u128 {
    let mut total = 0;
    let mut x = m;
    while x > 0 {
        x >>= 1;
        total += x;
    }
    total
}

/// `lo · (lo+1) ⋯ hi` by balanced splitting; `1` when `lo > hi`.
pub fn range_product(lo: u128, hi: u128) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        return (lo..=hi).fold(BigUint::one(), |acc, x| acc * BigUint::from(x));
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

pub fn factorial(m: u128) -> BigUint {
    range_product(1, m)
}

/// `C(n, r)` exactly.
pub fn binomial(n: u128, r: u128) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Parameters of the AGL(d,2) case: `n = 2^d`, `k = 2^d − 3`, `r = (d² − d)/2 − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AglCaseParams {
    pub d: u32,
    pub n: u128,
    pub k: u128,
    pub r: u128,
}

impl AglCaseParams {
    pub fn new(d: u32) -> Result<AglCaseParams> {
        if !(3..=AGL_MAX_D).contains(&d) {
            return Err(Error::InvalidParameters(format!(
                "d = {d} outside 3..={AGL_MAX_D}"
            )));
        }
        let n = 1u128 << d;
        let d = d as u128;
        Ok(AglCaseParams {
            d: d as u32,
            n,
            k: n - 3,
            r: (d * d - d) / 2 - 2,
        })
    }

    /// `a = k − 1`, the degree of the symmetric group containing `T`.
    pub fn a(&self) -> u128 {
        self.k - 1
    }

    /// `|AGL(d,2)| = 2^d ∏_{j=0}^{d−1} (2^d − 2^j)`.
    pub fn agl_order(&self) -> BigUint {
        (0..self.d).fold(BigUint::from(self.n), |acc, j| {
            acc * BigUint::from(self.n - (1u128 << j))
        })
    }

    /// `6 ∏_{j=lo}^{d−1} (2^d − 2^j)`.
    fn six_times_tail(&self, lo: u32) -> BigUint {
        (lo..self.d).fold(BigUint::from(6u8), |acc, j| {
            acc * BigUint::from(self.n - (1u128 << j))
        })
    }

    /// `P(2^d, 4) = (2^d)!/(k−1)!`.
    fn p_n_4(&self) -> BigUint {
        range_product(self.n - 3, self.n)
    }
}

/// `t = P(2^d, 2^d−3) / |AGL(d,2)|`, for `3 ≤ d ≤ 16`.
pub fn t_value(d: u32) -> Result<BigUint> {
    let params = AglCaseParams::new(d)?;
    if d > T_VALUE_MAX_D {
        return Err(Error::BudgetExhausted(format!(
            "t_value evaluates (2^d)! and is limited to d <= {T_VALUE_MAX_D}"
        )));
    }
    let numerator = range_product(4, params.n); // P(n, n−3) = n!/3!
    let (t, rem) = numerator.div_rem(&params.agl_order());
    if !rem.is_zero() {
        return Err(Error::Internal(format!("t is not integral at d = {d}")));
    }
    Ok(t)
}

/// Whether `t | (2^d − 4)!`, evaluated literally; limited like [`t_value`].
pub fn condition_52_direct(d: u32) -> Result<bool> {
    let t = t_value(d)?;
    let params = AglCaseParams::new(d)?;
    Ok((factorial(params.n - 4) % t).is_zero())
}

/// Whether `t | (2^d − 4)!`, via the equivalent `(2^d − 3) | 6 ∏_{j=2}^{d−1} (2^d − 2^j)`.
pub fn condition_52(d: u32) -> Result<bool> {
    let params = AglCaseParams::new(d)?;
    Ok((params.six_times_tail(2) % BigUint::from(params.n - 3)).is_zero())
}

/// Whether `2^d − 3` divides `∏_{j=3}^{d−3} (2^j − 1)`; expected false for `d ≥ 8`.
pub fn divisibility_53(d: u32) -> Result<bool> {
    if !(7..=AGL_MAX_D).contains(&d) {
        return Err(Error::InvalidParameters(format!(
            "d = {d} outside 7..={AGL_MAX_D}"
        )));
    }
    let product = (3..=d - 3).fold(BigUint::one(), |acc, j| acc * ((BigUint::one() << j) - 1u8));
    let m = (BigUint::one() << d) - 3u8;
    Ok((product % m).is_zero())
}

/// Whether `2^d − 3` has a prime factor dividing no `2^i − 3` with `2 ≤ i < d`.
///
/// Shared factors are stripped with repeated gcds instead of factoring: for each
/// earlier term the gcd is divided out until what remains is coprime to that term.
pub fn primitive_divisor_2d3(d: u32) -> Result<bool> {
    if d < 3 {
        return Err(Error::InvalidParameters(format!(
            "2^{d} − 3 has no prime factors"
        )));
    }
    let mut m = (BigUint::one() << d) - 3u8;
    let mut power = BigUint::from(4u8);
    for _ in 2..d {
        let earlier = &power - 3u8;
        let mut g = m.gcd(&earlier);
        while !g.is_one() {
            m /= &g;
            g = m.gcd(&earlier);
        }
        if m.is_one() {
            return Ok(false);
        }
        power <<= 1;
    }
    Ok(!m.is_one())
}

/// One row of a Zsigmondy scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub d: u32,
    pub primitive: bool,
    pub elapsed_ms: u128,
}

/// Calls `on_row` for every `d` in `start..=d_max`, in order.
pub fn zsigmondy_scan_with(
    start: u32,
    d_max: u32,
    mut on_row: impl FnMut(&ScanRow) -> Result<()>,
) -> Result<()> {
    for d in start.max(3)..=d_max {
        let clock = Instant::now();
        let primitive = primitive_divisor_2d3(d)?;
        on_row(&ScanRow {
            d,
            primitive,
            elapsed_ms: clock.elapsed().as_millis(),
        })?;
    }
    Ok(())
}

/// Every `d` in `3..=d_max` where `2^d − 3` has no primitive prime divisor.
pub fn zsigmondy_scan(d_max: u32) -> Result<Vec<u32>> {
    if d_max < 3 {
        return Err(Error::InvalidParameters(format!("d_max = {d_max} < 3")));
    }
    let mut failing = Vec::new();
    zsigmondy_scan_with(3, d_max, |row| {
        if !row.primitive {
            failing.push(row.d);
        }
        Ok(())
    })?;
    Ok(failing)
}

/// Last verified `d` stored in a checkpoint file, if any.
pub fn read_checkpoint(path: &Path) -> Result<Option<u32>> {
    match fs::read_to_string(path) {
        Ok(text) => text
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParameters(format!("bad checkpoint {}", path.display()))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::InvalidParameters(format!("{}: {e}", path.display()))),
    }
}

/// Atomically replaces the checkpoint with `d`.
pub fn write_checkpoint(path: &Path, d: u32) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{d}\n"))
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))
}

/// Both sides of `(k−1)!/t < C(k−1, r)` and the two evaluations of the left side.
#[derive(Clone, Debug)]
pub struct Lemma51Report {
    pub d: u32,
    /// `(k−1)!/t` as the fraction `6|AGL(d,2)| / P(2^d, 4)`.
    pub ratio: (BigUint, BigUint),
    /// The same quantity as `6 ∏_{j=2}^{d−1} (2^d − 2^j) / (2^d − 3)`.
    pub simplified: (BigUint, BigUint),
    pub binomial: BigUint,
    pub forms_agree: bool,
    pub inequality: bool,
}

pub fn lemma51_report(d: u32) -> Result<Lemma51Report> {
    let params = AglCaseParams::new(d)?;
    if d < 8 {
        return Err(Error::InvalidParameters(format!(
            "the binomial bound needs d >= 8, got {d}"
        )));
    }
    let ratio = (BigUint::from(6u8) * params.agl_order(), params.p_n_4());
    let simplified = (params.six_times_tail(2), BigUint::from(params.n - 3));
    let forms_agree = &ratio.0 * &simplified.1 == &simplified.0 * &ratio.1;
    let binomial = binomial(params.a(), params.r);
    let inequality = ratio.0 < &binomial * &ratio.1;
    Ok(Lemma51Report {
        d,
        ratio,
        simplified,
        binomial,
        forms_agree,
        inequality,
    })
}

/// `(k−1)!/t < C(k−1, r)`, with both evaluations of the left side required to agree.
pub fn lemma51_check(d: u32) -> Result<bool> {
    let report = lemma51_report(d)?;
    Ok(report.forms_agree && report.inequality)
}

/// `v₂((k−r)!/(2t))` by direct valuation of each factor, and by `(r+2) − v₂((r+2)!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma52Report {
    pub d: u32,
    pub r: u128,
    pub direct: i128,
    pub closed_form: i128,
}

pub fn lemma52_report(d: u32) -> Result<Lemma52Report> {
    let params = AglCaseParams::new(d)?;
    if d < 8 {
        return Err(Error::InvalidParameters(format!(
            "the 2-adic bound needs d >= 8, got {d}"
        )));
    }
    // t = (2^d)! / (6 |AGL|), so v₂(t) = v₂((2^d)!) − 1 − v₂(|AGL|).
    let v2_agl = v2(&params.agl_order())? as i128;
    let v2_t = v2_factorial(params.n) as i128 - 1 - v2_agl;
    let direct = v2_factorial(params.k - params.r) as i128 - 1 - v2_t;
    let closed_form = (params.r + 2) as i128 - v2_factorial(params.r + 2) as i128;
    Ok(Lemma52Report {
        d,
        r: params.r,
        direct,
        closed_form,
    })
}

/// The two evaluations agree and are positive, so `(k−r)!/2 ∤ t`.
pub fn lemma52_check(d: u32) -> Result<bool> {
    let report = lemma52_report(d)?;
    Ok(report.direct == report.closed_form && report.direct > 0)
}

/// `d² ≤ 2^{d−2}` and `r + 1 < k/8`, the bounds feeding both lemmas.
pub fn agl_inequalities(d: u32) -> Result<bool> {
    let params = AglCaseParams::new(d)?;
    let dd = d as u128;
    Ok(dd * dd <= 1u128 << (d - 2) && 8 * (params.r + 1) < params.k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(v2(&BigUint::from(12u8)).unwrap(), 2);
        assert!(v2(&BigUint::zero()).is_err());
        assert_eq!(v2_factorial(28), 25);
        for m in 0..=200u128 {
            assert_eq!(
                v2(&factorial(m)).unwrap() as u128,
                v2_factorial(m),
                "m = {m}"
            );
        }
        for d in 1..=12u32 {
            let n = 1u128 << d;
            for i in 1..n {
                assert_eq!(
                    v2(&BigUint::from(n - i)).unwrap(),
                    v2(&BigUint::from(i)).unwrap()
                );
            }
        }
    }

    #[test]
    fn t_at_d3() {
        // P(8,5) = 6720 and |AGL(3,2)| = 1344.
        assert_eq!(t_value(3).unwrap(), BigUint::from(5u8));
        assert_eq!(range_product(4, 8), BigUint::from(6720u32));
        assert!(!condition_52_direct(3).unwrap());
    }

    #[test]
    fn condition_52_fails_below_8() {
        for d in 3..=7 {
            assert!(!condition_52(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn reduced_condition_matches_direct() {
        for d in 3..=12 {
            assert_eq!(
                condition_52(d).unwrap(),
                condition_52_direct(d).unwrap(),
                "d = {d}"
            );
        }
    }

    #[test]
    fn divisibility_53_matches_condition_52() {
        for d in 7..=64 {
            assert_eq!(
                divisibility_53(d).unwrap(),
                condition_52(d).unwrap(),
                "d = {d}"
            );
        }
        assert!(divisibility_53(6).is_err());
    }

    #[test]
    fn primitive_divisor_examples() {
        assert!(!primitive_divisor_2d3(7).unwrap());
        assert!(primitive_divisor_2d3(4).unwrap());
        assert!(primitive_divisor_2d3(8).unwrap());
        assert_eq!(zsigmondy_scan(6).unwrap(), Vec::<u32>::new());
        assert_eq!(zsigmondy_scan(100).unwrap(), vec![7]);
    }

    #[test]
    fn lemma52_at_d8() {
        let report = lemma52_report(8).unwrap();
        assert_eq!(report.r, 26);
        assert_eq!(report.direct, 3);
        assert_eq!(report.closed_form, 3);
    }

    #[test]
    fn lemma51_matches_factorial_evaluation() {
        for d in 8..=10 {
            let params = AglCaseParams::new(d).unwrap();
            let t = t_value(d).unwrap();
            let report = lemma51_report(d).unwrap();
            // (k−1)!/t == ratio, cross-multiplied.
            assert_eq!(
                factorial(params.a()) * &report.ratio.1,
                &t * &report.ratio.0
            );
            assert!(lemma51_check(d).unwrap());
        }
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(9, 4), BigUint::from(126u8));
        assert_eq!(binomial(4, 9), BigUint::zero());
    }

    #[test]
    fn checkpoint_round_trip() {
        let dir = std::env::temp_dir().join(format!("nkstar-ckpt-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("scan.ckpt");
        assert_eq!(read_checkpoint(&path).unwrap(), None);
        write_checkpoint(&path, 123).unwrap();
        assert_eq!(read_checkpoint(&path).unwrap(), Some(123));
        fs::remove_dir_all(&dir).unwrap();
    }
}

//! Case elimination by exact arithmetic: for a candidate projection `H` of a regular
//! subgroup of `S_n × S_{k−1}`, the kernel `T ≤ S_{k−1}` must have order
//! `t = P(n,k)/|H|`, and `t` must be compatible with subgroup structure of `S_{k−1}`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{self, binomial, factorial, range_product, AglCaseParams};
use crate::util::prime_power;

/// Candidate groups for `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseFamily {
    M11,
    M12,
    M23,
    M24,
    #[serde(rename = "AGL_d_2_hyp")]
    AglD2Hyp,
    #[serde(rename = "M11_on12")]
    M11On12,
    M22,
    #[serde(rename = "M22_2")]
    M22Ext2,
    /// A 3-transitive subgroup of PΓL(2,q) on `q + 1` points; only an order bound is known.
    #[serde(rename = "PGammaL2q_sub")]
    PGammaL2qSub,
    #[serde(rename = "AGL1_8")]
    Agl1_8,
    #[serde(rename = "AGammaL1_8")]
    AGammaL1_8,
    #[serde(rename = "AGammaL1_32")]
    AGammaL1_32,
    #[serde(rename = "2^4.A7")]
    TwoFourA7,
    Alternating,
    Symmetric,
}

impl CaseFamily {
    pub const ALL: [CaseFamily; 15] = [
        CaseFamily::M11,
        CaseFamily::M12,
        CaseFamily::M23,
        CaseFamily::M24,
        CaseFamily::AglD2Hyp,
        CaseFamily::M11On12,
        CaseFamily::M22,
        CaseFamily::M22Ext2,
        CaseFamily::PGammaL2qSub,
        CaseFamily::Agl1_8,
        CaseFamily::AGammaL1_8,
        CaseFamily::AGammaL1_32,
        CaseFamily::TwoFourA7,
        CaseFamily::Alternating,
        CaseFamily::Symmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseFamily::M11 => "M11",
            CaseFamily::M12 => "M12",
            CaseFamily::M23 => "M23",
            CaseFamily::M24 => "M24",
            CaseFamily::AglD2Hyp => "AGL(d,2)",
            CaseFamily::M11On12 => "M11 on 12 points",
            CaseFamily::M22 => "M22",
            CaseFamily::M22Ext2 => "M22.2",
            CaseFamily::PGammaL2qSub => "3-transitive subgroup of PGammaL(2,q)",
            CaseFamily::Agl1_8 => "AGL(1,8)",
            CaseFamily::AGammaL1_8 => "AGammaL(1,8)",
            CaseFamily::AGammaL1_32 => "AGammaL(1,32)",
            CaseFamily::TwoFourA7 => "2^4.A7",
            CaseFamily::Alternating => "A_n",
            CaseFamily::Symmetric => "S_n",
        }
    }

    /// Whether the family has a member of degree `n`.
    pub fn has_degree(self, n: u64) -> bool {
        match self {
            CaseFamily::M11 => n == 11,
            CaseFamily::M12 | CaseFamily::M11On12 => n == 12,
            CaseFamily::M23 => n == 23,
            CaseFamily::M24 => n == 24,
            CaseFamily::M22 | CaseFamily::M22Ext2 => n == 22,
            CaseFamily::AglD2Hyp => n >= 8 && n.is_power_of_two(),
            CaseFamily::PGammaL2qSub => prime_power(n.saturating_sub(1)).is_some(),
            CaseFamily::Agl1_8 | CaseFamily::AGammaL1_8 => n == 8,
            CaseFamily::AGammaL1_32 => n == 32,
            CaseFamily::TwoFourA7 => n == 16,
            CaseFamily::Alternating | CaseFamily::Symmetric => n >= 5,
        }
    }

    /// Closed-form `|H|` at degree `n`; for the PΓL family, `|PΓL(2,q)| = r q (q² − 1)`,
    /// which every member divides.
    pub fn order(self, n: u64) -> Result<BigUint> {
        if !self.has_degree(n) {
            return Err(Error::InvalidParameters(format!(
                "{} has no member of degree {n}",
                self.name()
            )));
        }
        let b = |x: u64| BigUint::from(x);
        Ok(match self {
            CaseFamily::M11 | CaseFamily::M11On12 => b(11 * 10 * 9 * 8),
            CaseFamily::M12 => b(12 * 11 * 10 * 9 * 8),
            CaseFamily::M22 => b(3 * 16 * 21 * 22 * 20 / 2),
            CaseFamily::M22Ext2 => b(3 * 16 * 21 * 22 * 20),
            CaseFamily::M23 => b(3 * 16 * 20 * 21 * 22 * 23),
            CaseFamily::M24 => b(3 * 16 * 20 * 21 * 22 * 23 * 24),
            CaseFamily::AglD2Hyp => AglCaseParams::new(n.trailing_zeros())?.agl_order(),
            CaseFamily::PGammaL2qSub => {
                let q = n - 1;
                let (_, r) = prime_power(q).expect("checked by has_degree");
                b(r as u64) * b(q) * b(q * q - 1)
            }
            CaseFamily::Agl1_8 => b(56),
            CaseFamily::AGammaL1_8 => b(168),
            CaseFamily::AGammaL1_32 => b(32 * 31 * 5),
            CaseFamily::TwoFourA7 => factorial(8),
            CaseFamily::Alternating => factorial(n as u128) / 2u8,
            CaseFamily::Symmetric => factorial(n as u128),
        })
    }

    /// Families that occur only as 3-homogeneous, not 3-transitive, groups with `n = k + 3`.
    fn homogeneous_only(self) -> bool {
        matches!(
            self,
            CaseFamily::Agl1_8 | CaseFamily::AGammaL1_8 | CaseFamily::AGammaL1_32
        )
    }

    /// Families whose members are 3- but not 4-transitive (nor 4-homogeneous).
    fn at_most_3_transitive(self) -> bool {
        matches!(
            self,
            CaseFamily::AglD2Hyp
                | CaseFamily::TwoFourA7
                | CaseFamily::M11On12
                | CaseFamily::M22
                | CaseFamily::M22Ext2
        ) || self.homogeneous_only()
    }
}

/// Why a case is impossible, or that it is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Refutation {
    /// `|H|` does not divide `P(n,k)`.
    NotIntegral,
    /// `t` does not divide `(k−1)!`, so no `T ≤ S_{k−1}` of order `t` exists.
    TNotDividingFactorial,
    /// `|S_a : T|` is below `a` but not 1 or 2, impossible for a subgroup of `S_a`.
    SmallSymmetricIndex { a: u64, index: u64 },
    /// The small-index theorem forces `A_(Δ) ≤ T`, but `(a−r+1)!/2` does not divide `t`.
    AlternatingOrder {
        a: u64,
        r: u64,
        index: String,
        required_divisor: String,
    },
    /// For PΓL(2,q): `P(n,k)` does not divide `r q (q²−1) (k−1)!`; at `k = q − 2` this is
    /// `(q − 2) ∤ 6r`.
    PGammaLDivisibility { q: u64, r: u32 },
    /// AGL(d,2) with `d ≥ 8`: the index bound and the 2-adic valuation bound both hold.
    AglLemmas { d: u32 },
    /// The family is not 4-homogeneous, so `H` can only be `(n−k)`-homogeneous for `n − k = 3`.
    TransitivityBound,
    /// No contradiction: the case is realizable arithmetically.
    Survives,
    /// Arithmetic alone does not decide the case.
    Unresolved,
}

impl Refutation {
    pub fn is_refutation(&self) -> bool {
        !matches!(self, Refutation::Survives | Refutation::Unresolved)
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| t.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

/// The arithmetic of one `(family, n, k)` case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub family: CaseFamily,
    pub n: u64,
    pub k: u64,
    /// `|H|` (an upper bound dividing every member for the PΓL family).
    #[serde(with = "decimal")]
    pub order_formula: BigUint,
    /// `t = P(n,k)/|H|` when integral and evaluated.
    #[serde(with = "decimal::opt")]
    pub t: Option<BigUint>,
    pub refuted_by: Refutation,
}

/// Exceptional `(a, r, index)` triples of the small-index theorem.
const EXCEPTIONAL: [(u64, u64, u64); 6] = [
    (6, 3, 15),
    (5, 2, 6),
    (6, 2, 6),
    (6, 2, 12),
    (7, 3, 30),
    (8, 3, 30),
];

/// Subgroup-of-`S_a` tests on a would-be kernel of order `t`.
fn kernel_refutation(a: u64, t: &BigUint) -> Refutation {
    let sym = factorial(a as u128);
    let (index, rem) = sym.div_rem(t);
    if !rem.is_zero() {
        return Refutation::TNotDividingFactorial;
    }
    if let Some(i) = index.to_u64() {
        if i < a && i > 2 {
            return Refutation::SmallSymmetricIndex { a, index: i };
        }
    }
    if a < 5 {
        return Refutation::Unresolved;
    }
    // Minimal r ≤ a/2 with index < C(a, r).
    let Some(r) = (1..=a / 2).find(|&r| index < binomial(a as u128, r as u128)) else {
        return Refutation::Unresolved;
    };
    let imprimitive = a.is_multiple_of(2) && index == binomial(a as u128, (a / 2) as u128) / 2u8;
    let exceptional = EXCEPTIONAL
        .iter()
        .any(|&(ea, er, ei)| ea == a && er == r && index == BigUint::from(ei));
    if imprimitive || exceptional {
        return Refutation::Unresolved;
    }
    // |Δ| ≤ r − 1, so |A_(Δ)| = (a − |Δ|)!/2 is a multiple of (a − r + 1)!/2.
    let required = factorial((a - r + 1) as u128) / 2u8;
    if (t % &required).is_zero() {
        Refutation::Unresolved
    } else {
        Refutation::AlternatingOrder {
            a,
            r,
            index: index.to_string(),
            required_divisor: required.to_string(),
        }
    }
}

fn check_case_domain(family: CaseFamily, n: u64, k: u64) -> Result<()> {
    if !family.has_degree(n) {
        return Err(Error::InvalidParameters(format!(
            "{} has no member of degree {n}",
            family.name()
        )));
    }
    if k < 2 || k + 3 > n {
        return Err(Error::InvalidParameters(format!(
            "case analysis needs 2 <= k <= n - 3, got ({n},{k})"
        )));
    }
    if family.homogeneous_only() && k + 3 != n {
        return Err(Error::InvalidParameters(format!(
            "{} only arises with n = k + 3",
            family.name()
        )));
    }
    Ok(())
}

/// Runs the arithmetic for one case.
pub fn eliminate_case(family: CaseFamily, n: u64, k: u64) -> Result<CaseRecord> {
    check_case_domain(family, n, k)?;
    let order = family.order(n)?;
    let record = |t: Option<BigUint>, refuted_by| CaseRecord {
        family,
        n,
        k,
        order_formula: order.clone(),
        t,
        refuted_by,
    };

    if family == CaseFamily::AglD2Hyp && k + 3 == n {
        let d = n.trailing_zeros();
        let t = if d <= 10 {
            Some(numbers::t_value(d)?)
        } else {
            None
        };
        if !numbers::condition_52(d)? && d < 8 {
            return Ok(record(t, Refutation::TNotDividingFactorial));
        }
        if d >= 8 && numbers::lemma51_check(d)? && numbers::lemma52_check(d)? {
            return Ok(record(t, Refutation::AglLemmas { d }));
        }
        return Ok(record(t, Refutation::Unresolved));
    }

    let p = range_product((n - k + 1) as u128, n as u128);
    if family == CaseFamily::PGammaL2qSub {
        let q = n - 1;
        let (_, r) = prime_power(q).expect("checked");
        let a_fact = factorial((k - 1) as u128);
        let refuted_by = if (&order * &a_fact % &p).is_zero() {
            if k + 3 == n {
                Refutation::Survives
            } else {
                Refutation::TransitivityBound
            }
        } else {
            Refutation::PGammaLDivisibility { q, r }
        };
        // The minimal kernel order P(n,k)/|PΓL(2,q)|, when integral.
        let (t_min, rem) = p.div_rem(&order);
        return Ok(record(rem.is_zero().then_some(t_min), refuted_by));
    }

    let (t, rem) = p.div_rem(&order);
    if !rem.is_zero() {
        return Ok(record(None, Refutation::NotIntegral));
    }
    let mut refuted_by = kernel_refutation(k - 1, &t);
    if !refuted_by.is_refutation() && family.at_most_3_transitive() && k + 3 != n {
        refuted_by = Refutation::TransitivityBound;
    }
    Ok(record(Some(t), refuted_by))
}

/// Candidate families for `H` when `n/2 < k ≤ n − 3`.
pub fn candidate_families(n: u64, k: u64) -> Vec<CaseFamily> {
    if !(2 * k > n && k + 3 <= n) {
        return Vec::new();
    }
    CaseFamily::ALL
        .into_iter()
        .filter(|f| f.has_degree(n) && (!f.homogeneous_only() || k + 3 == n))
        .collect()
}

/// Records for every candidate family at `(n, k)`.
pub fn case_analysis(n: u64, k: u64) -> Result<Vec<CaseRecord>> {
    candidate_families(n, k)
        .into_iter()
        .map(|f| eliminate_case(f, n, k))
        .collect()
}

/// Verdict of the arithmetic route alone, for `k ≥ 2` and `n ≥ k + 2`: `Some(true)` when
/// some case survives, `Some(false)` when every case is refuted, `None` if undecided.
///
/// For `k ≤ n/2` the regular subgroup projects onto a sharply `k`-transitive group or
/// one of the homogeneous-but-not-transitive exceptions, so existence reduces to the
/// degree conditions of those groups.
pub fn arithmetic_verdict(n: u64, k: u64) -> Result<Option<bool>> {
    if k < 2 || n < k + 2 {
        return Err(Error::InvalidParameters(format!(
            "need k >= 2, n >= k + 2, got ({n},{k})"
        )));
    }
    if n == k + 2 {
        return Ok(Some(true));
    }
    if 2 * k <= n {
        return Ok(Some(match k {
            2 => prime_power(n).is_some(),
            3 => prime_power(n - 1).is_some(),
            4 => n == 11 || n == 9 || n == 33,
            5 => n == 12,
            _ => false,
        }));
    }
    let records = case_analysis(n, k)?;
    if records.iter().any(|r| r.refuted_by == Refutation::Survives) {
        return Ok(Some(true));
    }
    if records.iter().all(|r| r.refuted_by.is_refutation()) {
        return Ok(Some(false));
    }
    Ok(None)
}

/// Prime powers `q = p^r` with `r ≤ r_max` and `(q − 2) | 6r`, restricted to `q ≥ 6`
/// (so that `k = q − 2 ≥ 4`).
pub fn pgammal_solution_scan(r_max: u32) -> PGammaLScan {
    let mut raw = Vec::new();
    let mut r_bound = 0;
    for r in 1..=r_max {
        // (q − 2) | 6r needs 6r ≥ q − 2 ≥ 2^r − 2.
        if 6 * (r as u64) < (1u64 << r) - 2 {
            break;
        }
        r_bound = r;
        let limit = 6 * r as u64 + 2;
        let mut p = 2u64;
        while let Some(q) = p.checked_pow(r).filter(|&q| q <= limit) {
            if prime_power(p) == Some((p, 1)) && q > 2 && (6 * r as u64).is_multiple_of(q - 2) {
                raw.push(q);
            }
            p += 1;
        }
    }
    raw.sort_unstable();
    let (solutions, excluded): (Vec<u64>, Vec<u64>) = raw.iter().partition(|&&q| q >= 6);
    PGammaLScan {
        raw_hits: raw,
        solutions,
        excluded_small_q: excluded,
        r_bound,
    }
}

/// Result of the PΓL scan: every hit of the two explicit conditions, and the split by
/// the `q ≥ 6` domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PGammaLScan {
    pub raw_hits: Vec<u64>,
    pub solutions: Vec<u64>,
    pub excluded_small_q: Vec<u64>,
    /// Largest `r` with `6r ≥ 2^r − 2`.
    pub r_bound: u32,
}

/// `P(n,k)/|H|` for a known group order, when integral.
pub fn kernel_order(n: u64, k: u64, order: &BigUint) -> Option<BigUint> {
    let p = range_product((n - k + 1) as u128, n as u128);
    let (t, rem) = p.div_rem(order);
    rem.is_zero().then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn t_of(r: &CaseRecord) -> u128 {
        r.t.as_ref().unwrap().to_u128().unwrap()
    }

    #[test]
    fn m11_at_11_8() {
        let r = eliminate_case(CaseFamily::M11, 11, 8).unwrap();
        assert_eq!(t_of(&r), 7 * 6 * 5 * 4);
        assert_eq!(
            r.refuted_by,
            Refutation::SmallSymmetricIndex { a: 7, index: 6 }
        );
        for k in [6, 7] {
            assert_eq!(
                eliminate_case(CaseFamily::M11, 11, k).unwrap().refuted_by,
                Refutation::TNotDividingFactorial
            );
        }
    }

    #[test]
    fn m12_cases() {
        let r = eliminate_case(CaseFamily::M12, 12, 8).unwrap();
        assert_eq!(t_of(&r), 7 * 6 * 5);
        match r.refuted_by {
            Refutation::AlternatingOrder {
                a,
                r,
                index,
                required_divisor,
            } => {
                assert_eq!((a, r), (7, 3));
                assert_eq!(index, "24");
                assert_eq!(required_divisor, "60");
            }
            other => panic!("{other:?}"),
        }
        let r = eliminate_case(CaseFamily::M12, 12, 9).unwrap();
        assert_eq!(t_of(&r), 7 * 6 * 5 * 4);
        match r.refuted_by {
            Refutation::AlternatingOrder {
                a,
                r,
                index,
                required_divisor,
            } => {
                assert_eq!((a, r), (8, 3));
                assert_eq!(index, "48");
                assert_eq!(required_divisor, "360");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn agl1_and_agammal1() {
        let r = eliminate_case(CaseFamily::Agl1_8, 8, 5).unwrap();
        assert_eq!(t_of(&r), 120);
        assert_eq!(r.refuted_by, Refutation::TNotDividingFactorial);
        let r = eliminate_case(CaseFamily::AGammaL1_8, 8, 5).unwrap();
        assert_eq!(t_of(&r), 40);
        assert_eq!(r.refuted_by, Refutation::TNotDividingFactorial);
        let r = eliminate_case(CaseFamily::AGammaL1_32, 32, 29).unwrap();
        assert!(r.t.as_ref().unwrap() > &factorial(28));
        assert_eq!(r.refuted_by, Refutation::TNotDividingFactorial);
        assert!(eliminate_case(CaseFamily::Agl1_8, 8, 4).is_err());
    }

    #[test]
    fn two_four_a7() {
        let r = eliminate_case(CaseFamily::TwoFourA7, 16, 13).unwrap();
        assert_eq!(r.order_formula, factorial(8));
        assert!(!(factorial(12) % r.t.as_ref().unwrap()).is_zero());
        assert_eq!(r.refuted_by, Refutation::TNotDividingFactorial);
    }

    #[test]
    fn pgammal_family() {
        assert_eq!(
            eliminate_case(CaseFamily::PGammaL2qSub, 9, 6)
                .unwrap()
                .refuted_by,
            Refutation::Survives
        );
        assert_eq!(
            eliminate_case(CaseFamily::PGammaL2qSub, 33, 30)
                .unwrap()
                .refuted_by,
            Refutation::Survives
        );
        assert_eq!(
            eliminate_case(CaseFamily::PGammaL2qSub, 17, 14)
                .unwrap()
                .refuted_by,
            Refutation::PGammaLDivisibility { q: 16, r: 4 }
        );
    }

    #[test]
    fn family_degree_mismatch() {
        assert!(eliminate_case(CaseFamily::M11, 12, 8).is_err());
        assert!(eliminate_case(CaseFamily::PGammaL2qSub, 11, 8).is_err());
    }

    #[test]
    fn pgammal_scan() {
        let scan = pgammal_solution_scan(10);
        assert_eq!(scan.r_bound, 5);
        assert_eq!(scan.solutions, vec![8, 32]);
        assert!(scan.raw_hits.contains(&4));
    }

    #[test]
    fn record_json_round_trip() {
        let r = eliminate_case(CaseFamily::M12, 12, 8).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"t\":\"210\""));
        let back: CaseRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn kernel_order_helper() {
        assert_eq!(kernel_order(9, 4, &big(504)), Some(big(6)));
        assert_eq!(kernel_order(6, 2, &big(7)), None);
    }
}

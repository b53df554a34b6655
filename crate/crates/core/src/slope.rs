//! Closed-form calculators for bielliptic curves and the GIT polarization
//! slope.
//!
//! For a bielliptic canonical curve of genus `g`, the one-parameter subgroup
//! with weights `(−1,…,−1, g−1)` (vertex of the elliptic cone last) gives
//! every monomial basis weight at least `(g−1)((g+1)m − 2m² − g)`; when that
//! is positive the `m`-th Hilbert point is not semistable.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{out_of_range, Error, Result};
use crate::ratio::{self, Q};

fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_gm(g: u64, m: u64, min_m: u64) -> Result<()> {
    if g < 3 {
        return Err(out_of_range(format!("need g >= 3, got {g}")));
    }
    if m < min_m {
        return Err(out_of_range(format!("need m >= {min_m}, got {m}")));
    }
    Ok(())
}

/// `s_m = C(g−2+m, m) − m(g−1)`: degree-`m` forms on `P^{g−2}` minus
/// sections of `O_E(m)` on the elliptic normal curve.
pub fn hypersurface_count(g: u64, m: u64) -> Result<BigInt> {
    check_gm(g, m, 1)?;
    Ok(binomial(g - 2 + m, m) - BigInt::from(m) * BigInt::from(g - 1))
}

/// `(g−1)((g+1)m − 2m² − g)`.
pub fn bielliptic_weight_bound(g: u64, m: u64) -> Result<BigInt> {
    check_gm(g, m, 2)?;
    let (g, m) = (BigInt::from(g), BigInt::from(m));
    Ok((&g - 1) * ((&g + 1) * &m - 2 * &m * &m - &g))
}

/// The same bound assembled from its two contributions: `(m−1)(g−1)`
/// monomials of weight `≥ g−m` and `m(g−1)` of weight `−m`.
pub fn bielliptic_weight_bound_by_parts(g: u64, m: u64) -> Result<BigInt> {
    check_gm(g, m, 2)?;
    let (g, m) = (BigInt::from(g), BigInt::from(m));
    Ok((&m - 1) * (&g - 1) * (&g - &m) - &m * (&m * (&g - 1)))
}

/// Whether `2m ≤ g−3`, the claimed range of non-semistability.
pub fn in_threshold_range(g: u64, m: u64) -> bool {
    2 * m + 3 <= g
}

/// Exact positivity condition of the bound: `g(m−1) > m(2m−1)`.
pub fn bound_is_positive(g: u64, m: u64) -> bool {
    g * (m - 1) > m * (2 * m - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BiellipticStatus {
    #[serde(rename = "NONSEMISTABLE")]
    Nonsemistable,
    #[serde(rename = "UNDETERMINED-BY-THIS-BOUND")]
    Undetermined,
}

impl std::fmt::Display for BiellipticStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BiellipticStatus::Nonsemistable => "NONSEMISTABLE",
            BiellipticStatus::Undetermined => "UNDETERMINED-BY-THIS-BOUND",
        })
    }
}

fn serialize_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.collect_str(v),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiellipticVerdict {
    pub g: u64,
    pub m: u64,
    #[serde(serialize_with = "serialize_int")]
    pub s_m: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub weight_bound: BigInt,
    pub verdict: BiellipticStatus,
    /// `(−1,…,−1, g−1)`.
    pub destabilizer: Vec<i64>,
    /// `2m ≤ g−3`.
    pub in_threshold_range: bool,
    /// Whether the verdict and the threshold range agree.
    pub agrees_with_threshold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn bielliptic_classify(g: u64, m: u64) -> Result<BiellipticVerdict> {
    let weight_bound = bielliptic_weight_bound(g, m)?;
    let verdict = if weight_bound.is_positive() {
        BiellipticStatus::Nonsemistable
    } else {
        BiellipticStatus::Undetermined
    };
    let threshold = in_threshold_range(g, m);
    let note = (verdict == BiellipticStatus::Undetermined && g % 2 == 1 && 2 * m + 1 >= g).then(|| {
        format!(
            "m >= (g-1)/2 = {}: generically semistable (not certified here)",
            (g - 1) / 2
        )
    });
    let mut destabilizer = vec![-1i64; g as usize];
    destabilizer[g as usize - 1] = g as i64 - 1;
    Ok(BiellipticVerdict {
        g,
        m,
        s_m: hypersurface_count(g, m)?,
        weight_bound,
        verdict,
        destabilizer,
        in_threshold_range: threshold,
        agrees_with_threshold: threshold == (verdict == BiellipticStatus::Nonsemistable),
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeValue {
    pub g: u64,
    pub m: u64,
    #[serde(with = "ratio::serde_q")]
    pub slope: Q,
    /// `m(m−1)(4g+2) − (m−1)(g−1) + 1`.
    #[serde(with = "ratio::serde_q")]
    pub lambda_coefficient: Q,
    /// `g·m(m−1)/2`.
    #[serde(with = "ratio::serde_q")]
    pub delta_coefficient: Q,
}

/// `8 + 4/g − 2(g−1)/(gm) + 2/(gm(m−1))`, cross-checked against the ratio of
/// the unnormalized λ and δ coefficients.
pub fn polarization_slope(g: u64, m: u64) -> Result<SlopeValue> {
    if g < 2 {
        return Err(out_of_range(format!("need g >= 2, got {g}")));
    }
    if m < 2 {
        return Err(out_of_range(format!("need m >= 2, got {m}")));
    }
    let (gi, mi) = (g as i64, m as i64);
    let slope = ratio::int(8) + ratio::frac(4, gi) - ratio::frac(2 * (gi - 1), gi * mi)
        + ratio::frac(2, gi * mi * (mi - 1));
    let lambda_coefficient = ratio::int(mi * (mi - 1) * (4 * gi + 2) - (mi - 1) * (gi - 1) + 1);
    let delta_coefficient = ratio::frac(gi * mi * (mi - 1), 2);
    if &lambda_coefficient / &delta_coefficient != slope {
        return Err(Error::Internal(format!(
            "slope normalization mismatch at g={g}, m={m}"
        )));
    }
    Ok(SlopeValue {
        g,
        m,
        slope,
        lambda_coefficient,
        delta_coefficient,
    })
}

/// `22/3 + 5/g`.
pub fn slope_at_three(g: u64) -> Q {
    ratio::frac(22, 3) + ratio::frac(5, g as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrigonalComparison {
    pub g: u64,
    /// `36(g+1)/(5g+1)`.
    #[serde(with = "ratio::serde_q")]
    pub trigonal_max: Q,
    #[serde(with = "ratio::serde_q")]
    pub slope_m3: Q,
    /// `trigonal_max ≤ slope_m3`.
    pub holds: bool,
    /// `(g−3)(2g−5)`.
    pub factor: i64,
    pub equivalent: bool,
    /// `factor == 0`: the two slopes coincide.
    pub boundary: bool,
}

pub fn trigonal_comparison(g: u64) -> Result<TrigonalComparison> {
    if g < 3 {
        return Err(out_of_range(format!("need g >= 3, got {g}")));
    }
    let gi = g as i64;
    let trigonal_max = ratio::frac(36 * (gi + 1), 5 * gi + 1);
    let slope_m3 = polarization_slope(g, 3)?.slope;
    let holds = trigonal_max <= slope_m3;
    let factor = (gi - 3) * (2 * gi - 5);
    Ok(TrigonalComparison {
        g,
        boundary: factor == 0,
        equivalent: holds == (factor >= 0),
        holds,
        factor,
        trigonal_max,
        slope_m3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub g: u64,
    pub m: u64,
    #[serde(serialize_with = "serialize_int")]
    pub s_m: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub weight_bound: BigInt,
    pub verdict: BiellipticStatus,
    #[serde(with = "ratio::serde_q")]
    pub slope: Q,
}

pub fn table_row(g: u64, m: u64) -> Result<TableRow> {
    let v = bielliptic_classify(g, m)?;
    Ok(TableRow {
        g,
        m,
        s_m: v.s_m,
        weight_bound: v.weight_bound,
        verdict: v.verdict,
        slope: polarization_slope(g, m)?.slope,
    })
}

pub fn bielliptic_table(
    gs: impl IntoIterator<Item = u64>,
    ms: impl IntoIterator<Item = u64> + Clone,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for g in gs {
        for m in ms.clone() {
            rows.push(table_row(g, m)?);
        }
    }
    Ok(rows)
}

/// Aligned plain-text rendering.
pub fn render_table(rows: &[TableRow]) -> String {
    let header = ["g", "m", "s_m", "weight_bound", "verdict", "slope"].map(String::from);
    let body: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.g.to_string(),
                r.m.to_string(),
                r.s_m.to_string(),
                r.weight_bound.to_string(),
                r.verdict.to_string(),
                ratio::to_string(&r.slope),
            ]
        })
        .collect();
    let mut widths = header.clone().map(|h| h.len());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String; 6]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&header);
    for row in &body {
        out.push('\n');
        out.push_str(&line(row));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(hypersurface_count(4, 2).unwrap(), BigInt::from(0));
        assert_eq!(hypersurface_count(6, 2).unwrap(), BigInt::from(5));
        assert_eq!(hypersurface_count(3, 1).unwrap(), BigInt::from(0));
        assert!(hypersurface_count(2, 2).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(bielliptic_weight_bound(10, 3).unwrap(), BigInt::from(45));
        assert_eq!(bielliptic_weight_bound(4, 2).unwrap(), BigInt::from(-6));
        assert_eq!(bielliptic_weight_bound(8, 3).unwrap(), BigInt::from(7));
        assert!(!in_threshold_range(8, 3));
        for g in 3..40 {
            for m in 2..20 {
                assert_eq!(
                    bielliptic_weight_bound(g, m).unwrap(),
                    bielliptic_weight_bound_by_parts(g, m).unwrap()
                );
                assert_eq!(bielliptic_weight_bound(g, m).unwrap().is_positive(), bound_is_positive(g, m));
            }
        }
    }

    #[test]
    fn classification() {
        let v = bielliptic_classify(11, 4).unwrap();
        assert_eq!(v.verdict, BiellipticStatus::Nonsemistable);
        let v = bielliptic_classify(11, 5).unwrap();
        assert_eq!(v.verdict, BiellipticStatus::Undetermined);
        assert!(v.note.unwrap().contains("(g-1)/2 = 5"));
        for m in 2..10 {
            assert_eq!(bielliptic_classify(4, m).unwrap().verdict, BiellipticStatus::Undetermined);
        }
        assert_eq!(bielliptic_classify(5, 2).unwrap().destabilizer, vec![-1, -1, -1, -1, 4]);
    }

    #[test]
    fn slopes() {
        assert_eq!(polarization_slope(2, 2).unwrap().slope, ratio::int(10));
        for g in 2..30 {
            assert_eq!(polarization_slope(g, 3).unwrap().slope, slope_at_three(g));
        }
        assert!(polarization_slope(4, 1).is_err());
        let t = trigonal_comparison(4).unwrap();
        assert_eq!(t.trigonal_max, ratio::frac(60, 7));
        assert_eq!(t.slope_m3, ratio::frac(103, 12));
        assert!(t.holds && t.equivalent);
        let t = trigonal_comparison(3).unwrap();
        assert!(t.boundary && t.holds);
        assert_eq!(t.trigonal_max, t.slope_m3);
    }

    #[test]
    fn table_text() {
        let rows = bielliptic_table([10], [2, 3]).unwrap();
        let text = render_table(&rows);
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("NONSEMISTABLE"));
    }
}

//! Which `L_{h,q,c_m}` are modules for the simple N=2 algebra `L_{c_m}`.

use serde::Serialize;

use crate::affine::{enumerate_s, RationalLevel};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, is_integer, q, qf, ExactRational};

/// `c_m = 3m/(m+2)`.
pub fn central_charge(m: &ExactRational) -> Result<ExactRational> {
    if *m == q(-2) {
        return Err(Error::LevelExcluded);
    }
    Ok(q(3) * m / (m + q(2)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WEntry {
    pub r: i64,
    pub i: i64,
    pub j: ExactRational,
    pub k: ExactRational,
    pub h: ExactRational,
    pub q: ExactRational,
}

impl WEntry {
    /// Both parametrizations, which must agree.
    pub fn new(r: i64, i: i64, m: &ExactRational) -> Self {
        let m2 = m + q(2);
        let j = q(i) + qf(1, 2);
        let k = q(r - i) + qf(1, 2);
        let h = (&j * &k - qf(1, 4)) / &m2;
        let qq = (&j - &k) / &m2;
        debug_assert_eq!(h, h_ir(r, i, m));
        debug_assert_eq!(qq, q_ir(r, i, m));
        WEntry { r, i, j, k, h, q: qq }
    }
}

/// `r(r+2)/(4(m+2)) − (r−2i)²/(4(m+2))`.
pub fn h_ir(r: i64, i: i64, m: &ExactRational) -> ExactRational {
    let m2 = q(4) * (m + q(2));
    q(r * (r + 2)) / &m2 - q((r - 2 * i) * (r - 2 * i)) / &m2
}

/// `−(r−2i)/(m+2)`.
pub fn q_ir(r: i64, i: i64, m: &ExactRational) -> ExactRational {
    q(2 * i - r) / (m + q(2))
}

fn admissible_level(m: &ExactRational) -> Result<RationalLevel> {
    let level = RationalLevel::new(m.clone())?;
    if level.is_admissible() {
        Ok(level)
    } else {
        Err(Error::NotAdmissible(fmt_rational(m)))
    }
}

/// `W^{c_m}`, one entry per distinct `(h, q)`, ordered by `(r, i)`.
pub fn enumerate_w(m: &ExactRational) -> Result<Vec<WEntry>> {
    let n = admissible_level(m)?.n_bound();
    let mut out: Vec<WEntry> = Vec::new();
    for r in 0..=n {
        for i in 0..=r {
            let e = WEntry::new(r, i, m);
            if !out.iter().any(|o| o.h == e.h && o.q == e.q) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Is `m` a non-negative integer, where `D^{c_m}` is empty?
pub fn is_nonneg_integral(m: &ExactRational) -> bool {
    is_integer(m) && *m >= q(0)
}

/// `q² + 4h/(m+2) = r(r+2)/(m+2)²`.
pub fn on_curve(h: &ExactRational, qq: &ExactRational, r: &ExactRational, m: &ExactRational) -> bool {
    let m2 = m + q(2);
    qq * qq + q(4) * h / &m2 == r * (r + q(2)) / (&m2 * &m2)
}

/// All `r ∈ S^m ∖ ℤ` putting `(h, q)` on the curve, ascending.
pub fn membership_d(h: &ExactRational, qq: &ExactRational, m: &ExactRational) -> Result<Vec<ExactRational>> {
    admissible_level(m)?;
    if is_nonneg_integral(m) {
        return Err(Error::DNotDefined(fmt_rational(m)));
    }
    Ok(enumerate_s(m)?.into_iter().filter(|r| !is_integer(r) && on_curve(h, qq, r, m)).collect())
}

/// Does the Casimir scalar `2(m+2)h + ½(m+2)²q²` equal `r(r+2)/2`?
pub fn casimir_witness_check(h: &ExactRational, qq: &ExactRational, m: &ExactRational, r: i64) -> bool {
    crate::coset::casimir_scalar(h, qq, m) == q(r * (r + 2)) / q(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationVerdict {
    InW(WEntry),
    /// Every matching `r`, ascending; `r` and `−2−r` lie on the same curve,
    /// so the last entry is the one with `r ≥ −1`.
    InD(Vec<ExactRational>),
    NotModule,
    NotAdmissible,
}

impl ClassificationVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassificationVerdict::InW(_) => "InW",
            ClassificationVerdict::InD(_) => "InD",
            ClassificationVerdict::NotModule => "NotModule",
            ClassificationVerdict::NotAdmissible => "NotAdmissible",
        }
    }

    pub fn is_module(&self) -> bool {
        matches!(self, ClassificationVerdict::InW(_) | ClassificationVerdict::InD(_))
    }

    pub fn witness_json(&self) -> serde_json::Value {
        match self {
            ClassificationVerdict::InW(e) => serde_json::json!({
                "r": e.r,
                "i": e.i,
                "j": fmt_rational(&e.j),
                "k": fmt_rational(&e.k),
            }),
            ClassificationVerdict::InD(rs) => serde_json::json!({
                "r": rs.last().map(fmt_rational),
                "all": rs.iter().map(fmt_rational).collect::<Vec<_>>(),
            }),
            _ => serde_json::Value::Null,
        }
    }
}

#[derive(Serialize)]
struct VerdictRecord {
    verdict: &'static str,
    witness: serde_json::Value,
}

impl Serialize for ClassificationVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VerdictRecord { verdict: self.tag(), witness: self.witness_json() }.serialize(s)
    }
}

pub fn classify(h: &ExactRational, qq: &ExactRational, m: &ExactRational) -> ClassificationVerdict {
    let Ok(w) = enumerate_w(m) else {
        return ClassificationVerdict::NotAdmissible;
    };
    if let Some(e) = w.into_iter().find(|e| e.h == *h && e.q == *qq) {
        return ClassificationVerdict::InW(e);
    }
    match membership_d(h, qq, m) {
        Ok(rs) if !rs.is_empty() => ClassificationVerdict::InD(rs),
        _ => ClassificationVerdict::NotModule,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_charges() {
        assert_eq!(central_charge(&q(1)).unwrap(), q(1));
        assert_eq!(central_charge(&q(0)).unwrap(), q(0));
        assert_eq!(central_charge(&qf(1, 2)).unwrap(), qf(3, 5));
        assert_eq!(central_charge(&q(-2)), Err(Error::LevelExcluded));
    }

    #[test]
    fn w_at_level_one() {
        let w = enumerate_w(&q(1)).unwrap();
        let hq: Vec<_> = w.iter().map(|e| (e.h.clone(), e.q.clone())).collect();
        assert_eq!(hq, vec![(q(0), q(0)), (qf(1, 6), qf(-1, 3)), (qf(1, 6), qf(1, 3))]);
        assert_eq!(enumerate_w(&qf(1, 2)).unwrap().len(), 10);
        for m in 1..=4 {
            assert_eq!(enumerate_w(&q(m)).unwrap().len() as i64, (m + 1) * (m + 2) / 2);
        }
        assert!(matches!(enumerate_w(&q(-3)), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn d_examples() {
        let m = qf(1, 2);
        assert_eq!(membership_d(&qf(1, 8), &q(0), &m).unwrap(), vec![qf(-5, 2), qf(1, 2)]);
        assert_eq!(membership_d(&qf(-3, 40), &q(0), &m).unwrap(), vec![qf(-3, 2), qf(-1, 2)]);
        assert!(membership_d(&q(1), &q(0), &m).unwrap().is_empty());
        assert!(matches!(membership_d(&q(0), &q(0), &q(1)), Err(Error::DNotDefined(_))));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&q(0), &q(0), &q(1)), ClassificationVerdict::InW(WEntry::new(0, 0, &q(1))));
        match classify(&qf(1, 6), &qf(1, 3), &q(1)) {
            ClassificationVerdict::InW(e) => {
                assert_eq!((e.r, e.i, e.j, e.k), (1, 1, qf(3, 2), qf(1, 2)));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(classify(&q(1), &q(0), &q(1)), ClassificationVerdict::NotModule);
        assert_eq!(classify(&qf(1, 8), &q(0), &qf(1, 2)), ClassificationVerdict::InD(vec![qf(-5, 2), qf(1, 2)]));
        assert_eq!(classify(&q(0), &q(0), &q(-2)), ClassificationVerdict::NotAdmissible);
    }

    #[test]
    fn w_entries_satisfy_curve_and_casimir() {
        for m in [q(1), q(2), qf(1, 2), qf(-1, 2), qf(4, 3)] {
            for e in enumerate_w(&m).unwrap() {
                assert!(on_curve(&e.h, &e.q, &q(e.r), &m));
                assert!(casimir_witness_check(&e.h, &e.q, &m, e.r));
            }
        }
    }

    #[test]
    fn verdict_json() {
        let v = serde_json::to_value(classify(&qf(1, 6), &qf(1, 3), &q(1))).unwrap();
        assert_eq!(v, serde_json::json!({"verdict": "InW", "witness": {"r": 1, "i": 1, "j": "3/2", "k": "1/2"}}));
        let v = serde_json::to_value(classify(&qf(1, 8), &q(0), &qf(1, 2))).unwrap();
        assert_eq!(v["witness"]["r"], "1/2");
    }
}

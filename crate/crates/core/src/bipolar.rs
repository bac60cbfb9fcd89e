//! Bipolar surfaces: `τ̃_{m,k}` (bipolar to Lawson surfaces) and `Õ_{p/q}`
//! (bipolar to Otsuki tori), both minimal in `S⁵`.
//!
//! For `τ̃_{m,k}` the topology, the extremal index and the value all follow
//! from `mk` modulo 4. For `Õ_{p/q}` only a strict upper bound on the
//! functional is available, so those records carry
//! [`ValueKind::UpperBound`].

use std::f64::consts::{PI, SQRT_2};

use crate::error::{invalid, Result};
use crate::lawson::LawsonParameter;
use crate::otsuki::OtsukiParameter;
use crate::record::{ExtremalRecord, Family, Topology, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BipolarLawsonCase {
    /// `mk ≡ 0 (mod 2)`: torus, `Λ_{4m-2} = 16πm E(·)`.
    Even,
    /// `mk ≡ 1 (mod 4)`: torus, `Λ_{2m-2} = 8πm E(·)`.
    OneModFour,
    /// `mk ≡ 3 (mod 4)`: Klein bottle, `Λ_{m-2} = 4πm E(·)`.
    ThreeModFour,
}

impl BipolarLawsonCase {
    pub fn classify(param: &LawsonParameter) -> Self {
        match (param.m() * param.k()) % 4 {
            1 => Self::OneModFour,
            3 => Self::ThreeModFour,
            _ => Self::Even,
        }
    }

    pub fn topology(self) -> Topology {
        match self {
            Self::Even | Self::OneModFour => Topology::Torus,
            Self::ThreeModFour => Topology::KleinBottle,
        }
    }

    /// Extremal index; may be `< 1` for the smallest `m`, in which case the
    /// case does not describe a valid record.
    pub fn index(self, m: u64) -> i64 {
        let m = m as i64;
        match self {
            Self::Even => 4 * m - 2,
            Self::OneModFour => 2 * m - 2,
            Self::ThreeModFour => m - 2,
        }
    }

    fn factor(self) -> f64 {
        match self {
            Self::Even => 16.0,
            Self::OneModFour => 8.0,
            Self::ThreeModFour => 4.0,
        }
    }

    fn formula(self) -> &'static str {
        match self {
            Self::Even => "16*pi*m*E(sqrt(m^2-k^2)/m)",
            Self::OneModFour => "8*pi*m*E(sqrt(m^2-k^2)/m)",
            Self::ThreeModFour => "4*pi*m*E(sqrt(m^2-k^2)/m)",
        }
    }
}

/// Record for `τ̃_{m,k}`. Fails when the case index is below 1, which
/// happens for `(1, 1)` (the Clifford torus) and would happen for a
/// 3-mod-4 pair with `m < 3`.
pub fn bipolar_lawson_record(param: &LawsonParameter) -> Result<ExtremalRecord> {
    let case = BipolarLawsonCase::classify(param);
    let index = case.index(param.m());
    if index < 1 {
        return Err(invalid(format!(
            "bipolar Lawson surface m = {}, k = {} ({case:?}) has index {index} < 1",
            param.m(),
            param.k()
        )));
    }
    let value = case.factor() * PI * param.m() as f64 * param.e_value();
    ExtremalRecord::new(
        Family::BipolarLawson,
        param.params(),
        case.topology(),
        index as u64,
        value,
        ValueKind::Exact,
        case.formula(),
    )
}

/// Record for `Õ_{p/q}`: index `2q+4p-2` with bound `4√2 qπ²` for odd `q`,
/// index `q+2p-2` with bound `2√2 qπ²` for even `q`.
pub fn bipolar_otsuki_record(param: &OtsukiParameter) -> Result<ExtremalRecord> {
    let (p, q) = (param.p(), param.q());
    let qf = q as f64;
    let (index, bound, formula) = if q % 2 == 1 {
        (
            2 * q + 4 * p - 2,
            4.0 * SQRT_2 * qf * PI * PI,
            "< 4*sqrt(2)*q*pi^2",
        )
    } else {
        (
            q + 2 * p - 2,
            2.0 * SQRT_2 * qf * PI * PI,
            "< 2*sqrt(2)*q*pi^2",
        )
    };
    ExtremalRecord::new(
        Family::BipolarOtsuki,
        param.params(),
        Topology::Torus,
        index,
        bound,
        ValueKind::UpperBound,
        formula,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::klein_bound;
    use crate::elliptic::complete_e;
    use crate::lawson::enumerate_parameters;

    fn lp(m: u64, k: u64) -> LawsonParameter {
        LawsonParameter::new(m, k).unwrap()
    }

    #[test]
    fn three_one_is_the_equality_case() {
        let r = bipolar_lawson_record(&lp(3, 1)).unwrap();
        assert_eq!(r.topology, Topology::KleinBottle);
        assert_eq!(r.index, 1);
        let e = complete_e(2.0 * 2f64.sqrt() / 3.0).unwrap();
        assert!((r.value - 12.0 * PI * e).abs() < 1e-12);
        assert!((r.value - klein_bound(1).unwrap().value).abs() < 1e-12);
        assert!(r.is_whitelisted() && r.satisfies_margin());
    }

    #[test]
    fn case_examples() {
        let r = bipolar_lawson_record(&lp(2, 1)).unwrap();
        assert_eq!((r.topology, r.index), (Topology::Torus, 6));
        assert!((r.value - 32.0 * PI * complete_e(3f64.sqrt() / 2.0).unwrap()).abs() < 1e-12);
        let r = bipolar_lawson_record(&lp(5, 1)).unwrap();
        assert_eq!((r.topology, r.index), (Topology::Torus, 8));
        assert!((r.value - 40.0 * PI * complete_e(24f64.sqrt() / 5.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn clifford_pair_has_no_bipolar_record() {
        assert_eq!(
            BipolarLawsonCase::classify(&lp(1, 1)),
            BipolarLawsonCase::OneModFour
        );
        assert!(bipolar_lawson_record(&lp(1, 1)).is_err());
    }

    #[test]
    fn every_pair_gets_exactly_one_case() {
        for p in enumerate_parameters(60) {
            let residue = (p.m() * p.k()) % 4;
            let case = BipolarLawsonCase::classify(&p);
            let expected = match residue {
                0 | 2 => BipolarLawsonCase::Even,
                1 => BipolarLawsonCase::OneModFour,
                _ => BipolarLawsonCase::ThreeModFour,
            };
            assert_eq!(case, expected);
        }
    }

    #[test]
    fn five_three_pair_verified_numerically() {
        let r = bipolar_lawson_record(&lp(5, 3)).unwrap();
        assert_eq!(
            BipolarLawsonCase::classify(&lp(5, 3)),
            BipolarLawsonCase::ThreeModFour
        );
        let bound = 8.0 * PI * 2.0 + 12.0 * PI * crate::bounds::e_two_sqrt2_over_3();
        assert!(r.value < bound);
        assert!(r.margin > 0.0);
    }

    #[test]
    fn bipolar_otsuki_examples() {
        let r = bipolar_otsuki_record(&OtsukiParameter::new(2, 3).unwrap()).unwrap();
        assert_eq!(r.index, 12);
        assert!((r.value - 12.0 * SQRT_2 * PI * PI).abs() < 1e-12);
        assert_eq!(r.value_kind, ValueKind::UpperBound);
        let r = bipolar_otsuki_record(&OtsukiParameter::new(5, 8).unwrap()).unwrap();
        assert_eq!(r.index, 16);
        assert!((r.value - 16.0 * SQRT_2 * PI * PI).abs() < 1e-12);
        assert!(r.margin > 0.0);
    }
}

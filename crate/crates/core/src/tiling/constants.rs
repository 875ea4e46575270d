//! The isoperimetric constant ledger: every constant in the hyperbolicity
//! proof chain, evaluated with its provenance recorded.

use super::TilingError;
use serde_json::{json, Value};
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub value: f64,
    pub provenance: &'static str,
}

/// Constants C(eps) and C(eps, M) of the linear isoperimetric chain.
#[derive(Clone, Debug)]
pub struct ConstantLedger {
    pub eps: f64,
    pub m_bound: usize,
    pub k: f64,
    pub entries: Vec<LedgerEntry>,
}

impl ConstantLedger {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.value)
    }

    pub fn c_length(&self) -> f64 {
        self.get("C_length").expect("ledger always carries C_length")
    }

    pub fn c_final(&self) -> f64 {
        self.get("C_final").expect("ledger always carries C_final")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eps": self.eps,
            "M": self.m_bound,
            "k": self.k,
            "entries": self.entries.iter().map(|e| json!({
                "name": e.name,
                "value": e.value,
                "provenance": e.provenance,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Evaluate the ledger for eps in (0, pi). Positive k is normalized to the
/// unit sphere, so only the sign of k matters here.
pub fn constant_ledger(eps: f64, m_bound: usize, k: f64) -> Result<ConstantLedger, TilingError> {
    if !(eps > 0.0 && eps < PI) {
        return Err(TilingError::Domain(format!("eps = {eps} outside (0, pi)")));
    }
    if m_bound < 1 {
        return Err(TilingError::Domain("cluster bound M must be >= 1".into()));
    }
    let c_length = if k > 0.0 {
        PI / ((eps / 2.0).sin() * eps.sin())
    } else {
        1.0 / eps.sin()
    };
    let c_liso = 9.0 * c_length * c_length / (2.0 * PI);
    let c_comb = 6.0 * (m_bound * m_bound) as f64 / eps;
    let c = c_liso * c_comb;
    let c_final = c * c + 2.0 * c;
    let entries = vec![
        LedgerEntry {
            name: "C_length",
            value: c_length,
            provenance: if k > 0.0 {
                "spherical law of sines with sin(gamma) >= sin(eps) and arc-vs-chord bound b <= pi sin(b)/sin(eps/2)"
            } else {
                "Euclidean law of sines with sin(gamma) >= sin(eps)"
            },
        },
        LedgerEntry {
            name: "C_liso",
            value: c_liso,
            provenance: "single-triangle linear isoperimetric bound 9*C_length^2/(2*pi) in the unit-side metric",
        },
        LedgerEntry {
            name: "C_comb",
            value: c_comb,
            provenance: "combinatorial face bound f <= (6 M^2 / eps) e0",
        },
        LedgerEntry {
            name: "C",
            value: c,
            provenance: "product C_liso * C_comb entering the triangle-by-triangle exhaustion",
        },
        LedgerEntry {
            name: "C_final",
            value: c_final,
            provenance: "final linear isoperimetric constant C^2 + 2C",
        },
    ];
    Ok(ConstantLedger { eps, m_bound, k, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_length_at_pi_over_6_is_exactly_2() {
        let ledger = constant_ledger(PI / 6.0, 1, 0.0).unwrap();
        assert_eq!(ledger.c_length(), 2.0);
    }

    #[test]
    fn c_length_spherical_value() {
        let ledger = constant_ledger(PI / 6.0, 1, 1.0).unwrap();
        let expected = PI / ((PI / 12.0).sin() * (PI / 6.0).sin());
        assert_eq!(ledger.c_length(), expected);
        assert!((expected - 24.276).abs() < 1e-2);
    }

    #[test]
    fn c_length_monotone_decreasing_to_pi_over_2() {
        let mut last = f64::INFINITY;
        for i in 1..=50 {
            let eps = (PI / 2.0) * i as f64 / 50.0;
            let v = constant_ledger(eps, 1, 0.0).unwrap().c_length();
            assert!(v < last, "C_length must strictly decrease on (0, pi/2]");
            last = v;
        }
        assert!((last - 1.0).abs() < 1e-12, "C_length(pi/2) = 1");
    }

    #[test]
    fn all_entries_finite_positive() {
        for i in 1..=15 {
            let eps = 0.1 * i as f64;
            for m in 1..=10 {
                for k in [0.0, 1.0] {
                    let ledger = constant_ledger(eps, m, k).unwrap();
                    for e in &ledger.entries {
                        assert!(
                            e.value.is_finite() && e.value > 0.0,
                            "{} = {} at eps={eps} M={m} k={k}",
                            e.name,
                            e.value
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(constant_ledger(0.0, 1, 0.0).is_err());
        assert!(constant_ledger(PI, 1, 0.0).is_err());
        assert!(constant_ledger(1.0, 0, 0.0).is_err());
    }
}

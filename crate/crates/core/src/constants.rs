//! Sharp constants: Babenko–Beckner `A_p`, the Gabor constant `H(p, q)`, the
//! Wigner constant `C(p, q)` and the operator-norm bounds built from them.
//!
//! Powers of the form `b^{b·c}` are evaluated as `exp(c·b·ln b)` with
//! `0·ln 0 = 0`, which is the `0⁰ = 1` convention.

use crate::error::{Error, Result};
use crate::exponent::{Exponent, RECIPROCAL_TOL};

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `ln(p)/p`, zero at `p = ∞`.
fn ln_over(p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => 0.0,
        Exponent::Finite(v) => v.ln() / v,
    }
}

/// `A_p = (p^{1/p} / p'^{1/p'})^{1/2}`, with `A_1 = A_∞ = 1`.
pub fn babenko(p: Exponent) -> f64 {
    (0.5 * (ln_over(p) - ln_over(p.conj()))).exp()
}

/// Whether `2 ≤ p ≤ ∞` and `p' ≤ q ≤ p`.
pub fn h_admissible(p: Exponent, q: Exponent) -> bool {
    Exponent::TWO.approx_le(p) && p.conj().approx_le(q) && q.approx_le(p)
}

fn require_h(p: Exponent, q: Exponent) -> Result<()> {
    if !h_admissible(p, q) {
        return Err(Error::Inadmissible(format!(
            "need 2 <= p <= inf and p' <= q <= p, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `H(p, q)`, the sharp constant of `‖V_g f‖_p ≤ H(p,q)‖f‖_q‖g‖_{q'}`.
pub fn h_const(p: Exponent, q: Exponent, d: u32) -> Result<f64> {
    require_h(p, q)?;
    let (p, q) = match (p, q) {
        (Exponent::Infinity, _) => return Ok(1.0),
        (Exponent::Finite(p), Exponent::Finite(q)) => (p, q),
        // q ≤ p rules out q = ∞ for finite p
        (Exponent::Finite(_), Exponent::Infinity) => unreachable!(),
    };
    let d = d as f64;
    let mixed = (q * p - p - q).max(0.0);
    let ln = d / p * (q / p).ln() + d / (2.0 * p * q) * (xlnx((p - q).max(0.0)) + xlnx(mixed))
        - d / (2.0 * q) * xlnx(q - 1.0)
        - d / (2.0 * p) * xlnx(p - 2.0);
    Ok(ln.exp())
}

/// `C(p, q) = 2^{(p-2)d/p}·H(p, q)`, the sharp Wigner constant.
pub fn c_const(p: Exponent, q: Exponent, d: u32) -> Result<f64> {
    let h = h_const(p, q, d)?;
    let e = d as f64 * (1.0 - 2.0 * p.recip());
    Ok(2f64.powf(e) * h)
}

/// Whether `Wig: Lʳ × Lˢ → Lᵖ` is bounded: `s = r'`, `p ≥ 2` and
/// `p' ≤ r ≤ p`.
pub fn wigner_bounded(r: Exponent, s: Exponent, p: Exponent) -> bool {
    s.approx_eq(r.conj()) && Exponent::TWO.approx_le(p) && p.conj().approx_le(r) && r.approx_le(p)
}

/// `(1/q')^{d/q'}·nφ·nψ·na`, with the factor equal to 1 at `q ∈ {1, ∞}`.
pub fn loc_norm_bound(q: Exponent, d: u32, n_phi: f64, n_psi: f64, n_a: f64) -> f64 {
    let factor = match q.conj() {
        Exponent::Infinity => 1.0,
        Exponent::Finite(qc) => (-(d as f64) / qc * qc.ln()).exp(),
    };
    factor * n_phi * n_psi * n_a
}

/// Whether `(r, s, q, p)` satisfies `q ∈ [1, 2]`, `1/r + 1/s = 1 + 1/q` and
/// `p ∈ [q, q']`.
pub fn cohen_admissible(r: Exponent, s: Exponent, q: Exponent, p: Exponent) -> bool {
    q.approx_le(Exponent::TWO)
        && (r.recip() + s.recip() - 1.0 - q.recip()).abs() <= RECIPROCAL_TOL
        && q.approx_le(p)
        && p.approx_le(q.conj())
}

/// `(A_r·A_s·A_{q'})ᵈ·C(q', p)`: bound on `‖T_σ^a‖_{B(Lᵖ)}` per unit
/// `‖a‖_r·‖σ‖_s`.
pub fn cohen_norm_bound(r: Exponent, s: Exponent, q: Exponent, p: Exponent, d: u32) -> Result<f64> {
    if !cohen_admissible(r, s, q, p) {
        return Err(Error::Inadmissible(format!(
            "need q in [1,2], 1/r + 1/s = 1 + 1/q, p in [q, q'], got r = {r}, s = {s}, q = {q}, p = {p}"
        )));
    }
    let a = babenko(r) * babenko(s) * babenko(q.conj());
    Ok(a.powi(d as i32) * c_const(q.conj(), p, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    // reference values from 30-digit evaluations of the closed forms
    const A4: f64 = 1.0675923980983514;
    const A3: f64 = 1.0491150634216482;
    const A8: f64 = 1.0741666075001347;
    const A4_3: f64 = 0.9366870743752481;

    #[test]
    fn babenko_values() {
        assert_eq!(babenko(Exponent::TWO), 1.0);
        assert_eq!(babenko(Exponent::ONE), 1.0);
        assert_eq!(babenko(Exponent::Infinity), 1.0);
        assert!((babenko(e(4.0)) - A4).abs() < 1e-12);
        assert!((babenko(e(3.0)) - A3).abs() < 1e-12);
        assert!((babenko(e(8.0)) - A8).abs() < 1e-12);
        assert!((babenko(e(4.0 / 3.0)) - A4_3).abs() < 1e-12);
    }

    #[test]
    fn babenko_is_below_one_on_the_young_side() {
        for p in [1.1, 1.5, 1.9] {
            assert!(babenko(e(p)) < 1.0);
        }
        for p in [3.0, 4.0, 8.0] {
            assert!(babenko(e(p)) > 1.0);
            assert!((babenko(e(p)) * babenko(e(p).conj()) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn h_special_cases() {
        assert!((h_const(e(4.0), e(2.0), 1).unwrap() - 0.8408964152537145).abs() < 1e-12);
        assert_eq!(h_const(e(2.0), e(2.0), 1).unwrap(), 1.0);
        for p in [2.0, 3.0, 4.0, 10.0] {
            for d in 1..=3 {
                let hp2 = h_const(e(p), e(2.0), d).unwrap();
                assert!((hp2 - (2.0 / p).powf(d as f64 / p)).abs() < 1e-12);
                let hpp = h_const(e(p), e(p), d).unwrap();
                assert!((hpp - babenko(e(p).conj()).powi(d as i32)).abs() < 1e-12);
            }
        }
        assert_eq!(h_const(Exponent::Infinity, Exponent::ONE, 2).unwrap(), 1.0);
        assert_eq!(h_const(Exponent::Infinity, Exponent::Infinity, 1).unwrap(), 1.0);
    }

    #[test]
    fn h_rejects_outside_region() {
        assert!(h_const(e(1.5), e(1.5), 1).is_err());
        assert!(h_const(e(4.0), e(1.2), 1).is_err());
        assert!(h_const(e(4.0), e(5.0), 1).is_err());
    }

    #[test]
    fn h_tends_to_one() {
        for q in [2.0, 4.0] {
            let h = h_const(e(1e6), e(q), 1).unwrap();
            assert!((0.999..=1.001).contains(&h), "q {q}: {h}");
        }
    }

    #[test]
    fn c_special_cases() {
        assert_eq!(c_const(e(2.0), e(2.0), 1).unwrap(), 1.0);
        let c44 = c_const(e(4.0), e(4.0), 1).unwrap();
        let ours = 2f64.powf(0.5) * babenko(e(4.0 / 3.0));
        assert!((c44 - ours).abs() < 1e-12);
        // 2^{-d}4^{d/p}A_pᵈ is the reciprocal of C(p,p), not equal to it
        let alt = 0.5 * 4f64.powf(0.25) * babenko(e(4.0));
        assert!((alt * c44 - 1.0).abs() < 1e-12);
        for d in 1..=3 {
            assert_eq!(c_const(Exponent::Infinity, e(3.0), d).unwrap(), 2f64.powi(d as i32));
            for qc in [2.0, 4.0] {
                let lhs = c_const(e(qc), e(2.0), d).unwrap();
                let rhs = (2f64.powf(qc - 1.0) / qc).powf(d as f64 / qc);
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wigner_region() {
        assert!(wigner_bounded(e(2.0), e(2.0), e(2.0)));
        assert!(!wigner_bounded(e(4.0), e(4.0), e(4.0)));
        assert!(wigner_bounded(e(3.0), e(1.5), e(4.0)));
        assert!(!wigner_bounded(e(5.0), e(1.25), e(4.0)));
        assert!(!wigner_bounded(e(1.5), e(3.0), e(1.8)));
    }

    #[test]
    fn loc_bound_conventions() {
        assert_eq!(loc_norm_bound(Exponent::Infinity, 1, 1.0, 1.0, 1.0), 1.0);
        assert_eq!(loc_norm_bound(Exponent::ONE, 2, 2.0, 3.0, 0.5), 3.0);
        let b = loc_norm_bound(Exponent::TWO, 1, 2.0, 3.0, 0.5);
        assert!((b - 0.5f64.sqrt() * 3.0).abs() < 1e-15);
    }

    #[test]
    fn cohen_bound_examples() {
        let q = e(4.0 / 3.0);
        let r = e(8.0 / 7.0);
        let v = cohen_norm_bound(r, r, q, Exponent::TWO, 1).unwrap();
        let a = babenko(r) * babenko(r) * babenko(e(4.0));
        assert!((v - a * (2f64.powi(3) / 4.0).powf(0.25)).abs() < 1e-12);

        let v = cohen_norm_bound(Exponent::ONE, e(2.0), e(2.0), e(2.0), 1).unwrap();
        assert!((v - c_const(e(2.0), e(2.0), 1).unwrap()).abs() < 1e-15);
        for d in 1..=2 {
            let v = cohen_norm_bound(Exponent::ONE, Exponent::ONE, Exponent::ONE, e(3.0), d).unwrap();
            assert_eq!(v, 2f64.powi(d as i32));
        }
        assert!(cohen_norm_bound(e(2.0), e(2.0), e(2.0), e(2.0), 1).is_err());
        assert!(cohen_norm_bound(Exponent::ONE, e(2.0), e(2.0), e(3.0), 1).is_err());
    }

    proptest! {
        #[test]
        fn constants_positive_and_finite(pr in 0.0..0.5f64, t in 0.0..1.0f64, d in 1u32..4) {
            let p = Exponent::from_recip(pr).unwrap();
            // q between p' and p
            let qr = (1.0 - pr) * (1.0 - t) + pr * t;
            let q = Exponent::from_recip(qr).unwrap();
            let h = h_const(p, q, d).unwrap();
            let c = c_const(p, q, d).unwrap();
            prop_assert!(h.is_finite() && h > 0.0 && h <= 1.0 + 1e-12);
            prop_assert!(c.is_finite() && c > 0.0);
        }

        #[test]
        fn conjugation_round_trip(p in 1.0..50.0f64) {
            let e = Exponent::new(p).unwrap();
            prop_assert!(e.conj().conj().approx_eq(e));
        }
    }
}

//! Divisor-class arithmetic on the plane blown up at s points.
//!
//! Classes are written a·h − Σ mᵢ·eᵢ in the standard basis with pairing
//! h² = 1, eᵢ² = −1, h·eᵢ = 0. [`surface_invariants`] assembles the surface
//! numerology attached to a degree-d curve: the number of blown-up points,
//! the hyperplane and quadric-section classes, the discriminant-curve
//! class with its degree and arithmetic genus, and the theta-characteristic
//! degree bookkeeping — each field pinned to its closed-form value and
//! cross-checkable against the lattice pairing.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    PointCountMismatch { left: usize, right: usize },
    DegreeTooSmall { d: i64, min: i64 },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::PointCountMismatch { left, right } => {
                write!(f, "classes live on different blow-ups: s = {left} vs {right}")
            }
            LatticeError::DegreeTooSmall { d, min } => {
                write!(f, "degree d = {d} is below the supported minimum {min}")
            }
        }
    }
}

impl std::error::Error for LatticeError {}

/// The divisor class a·h − Σ mᵢ·eᵢ on the plane blown up at s points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClass {
    /// number of blown-up points
    pub s: usize,
    /// coefficient of h
    pub a: i64,
    /// multiplicities mᵢ (the eᵢ coefficients are −mᵢ)
    pub m: Vec<i64>,
}

impl SurfaceClass {
    pub fn new(s: usize, a: i64, m: Vec<i64>) -> SurfaceClass {
        assert_eq!(m.len(), s, "need one multiplicity per blown-up point");
        SurfaceClass { s, a, m }
    }

    /// a·h − mult·Σ eᵢ
    pub fn uniform(s: usize, a: i64, mult: i64) -> SurfaceClass {
        SurfaceClass {
            s,
            a,
            m: vec![mult; s],
        }
    }

    /// The hyperplane class h.
    pub fn line(s: usize) -> SurfaceClass {
        SurfaceClass::uniform(s, 1, 0)
    }

    /// The canonical class K = −3h + Σ eᵢ.
    pub fn canonical(s: usize) -> SurfaceClass {
        SurfaceClass::uniform(s, -3, -1)
    }

    pub fn scale(&self, c: i64) -> SurfaceClass {
        SurfaceClass {
            s: self.s,
            a: c * self.a,
            m: self.m.iter().map(|&m| c * m).collect(),
        }
    }

    pub fn add(&self, other: &SurfaceClass) -> Result<SurfaceClass, LatticeError> {
        self.check(other)?;
        Ok(SurfaceClass {
            s: self.s,
            a: self.a + other.a,
            m: self.m.iter().zip(&other.m).map(|(x, y)| x + y).collect(),
        })
    }

    fn check(&self, other: &SurfaceClass) -> Result<(), LatticeError> {
        if self.s != other.s {
            return Err(LatticeError::PointCountMismatch {
                left: self.s,
                right: other.s,
            });
        }
        Ok(())
    }

    /// Intersection pairing: h² = 1, eᵢ² = −1, mixed products 0.
    pub fn intersect(&self, other: &SurfaceClass) -> Result<i64, LatticeError> {
        self.check(other)?;
        let e_part: i64 = self.m.iter().zip(&other.m).map(|(x, y)| x * y).sum();
        Ok(self.a * other.a - e_part)
    }

    pub fn self_intersection(&self) -> i64 {
        self.intersect(self).expect("same surface")
    }

    /// Arithmetic genus by adjunction: D·(D+K)/2 + 1.
    pub fn pa(&self) -> i64 {
        let k = SurfaceClass::canonical(self.s);
        let d_dk = self.self_intersection() + self.intersect(&k).expect("same surface");
        debug_assert!(d_dk % 2 == 0, "adjunction pairing is always even");
        d_dk / 2 + 1
    }

    /// Euler characteristic by Riemann–Roch on a rational surface:
    /// χ(O(D)) = 1 + D·(D−K)/2.
    pub fn chi(&self) -> i64 {
        let k = SurfaceClass::canonical(self.s);
        let d_dmk = self.self_intersection() - self.intersect(&k).expect("same surface");
        debug_assert!(d_dmk % 2 == 0);
        1 + d_dmk / 2
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}h", self.a)?;
        if self.s == 0 {
            return Ok(());
        }
        if self.m.iter().all(|&m| m == self.m[0]) {
            let m = self.m[0];
            if m == 0 {
                return Ok(());
            }
            if m > 0 {
                write!(f, "-{}Σe", if m == 1 { String::new() } else { m.to_string() })
            } else {
                write!(f, "+{}Σe", if m == -1 { String::new() } else { (-m).to_string() })
            }
        } else {
            for (i, &m) in self.m.iter().enumerate() {
                match m.cmp(&0) {
                    std::cmp::Ordering::Greater if m == 1 => write!(f, "-e{}", i + 1)?,
                    std::cmp::Ordering::Greater => write!(f, "-{}e{}", m, i + 1)?,
                    std::cmp::Ordering::Less if m == -1 => write!(f, "+e{}", i + 1)?,
                    std::cmp::Ordering::Less => write!(f, "+{}e{}", -m, i + 1)?,
                    std::cmp::Ordering::Equal => {}
                }
            }
            Ok(())
        }
    }
}

/// Genus of the marked-line curve by the Hurwitz formula for its triple
/// cover of a rational curve with 2d simple branch points:
/// 2g − 2 = 3·(−2) + 2d.
pub fn hurwitz_genus(d: i64) -> Result<i64, LatticeError> {
    if d < 2 {
        return Err(LatticeError::DegreeTooSmall { d, min: 2 });
    }
    Ok(d - 2)
}

/// The full numerology attached to a degree-d curve, every field pinned to
/// its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub d: i64,
    /// number of blown-up points: (d−2)(d−3)/2
    pub s: i64,
    /// power-sum length: (d−1)(d−2)/2
    pub n: i64,
    /// genus of the line curve: d−2
    pub g: i64,
    pub class_dl: SurfaceClass,
    pub class_dq: SurfaceClass,
    pub class_gamma: SurfaceClass,
    pub class_k: SurfaceClass,
    /// D_l² = (d−3)(d−4)/2
    pub dl_squared: i64,
    /// Γ·D_l = g(g−1)
    pub deg_gamma: i64,
    /// (3/2)g(g−1) + 1
    pub pa_gamma: i64,
    /// χ(O(D_l)) = d−2
    pub chi_dl: i64,
    /// reported equal to χ(D_l); see `vanishing_assumed`
    pub h0_dl: i64,
    /// g − 1
    pub deg_theta: i64,
    /// n = C(d−1, 2), the bridge to dim S²V̌ with dim V = d−2
    pub n_equals_dim_s2: bool,
    /// h⁰ = χ relies on the vanishing h¹ = h² = 0, which is recorded as an
    /// assumption rather than re-proved in lattice arithmetic
    pub vanishing_assumed: bool,
    /// |D_l| embeds the surface only for d ≥ 6; at d = 5 the image is the
    /// plane (D_l² = 1)
    pub embeds: bool,
}

/// Assemble the surface report for d ≥ 5.
pub fn surface_invariants(d: i64) -> Result<SurfaceReport, LatticeError> {
    if d < 5 {
        return Err(LatticeError::DegreeTooSmall { d, min: 5 });
    }
    let s = (d - 2) * (d - 3) / 2;
    let n = (d - 1) * (d - 2) / 2;
    let g = d - 2;
    let su = s as usize;
    let class_dl = SurfaceClass::uniform(su, d - 3, 1);
    let class_dq = class_dl.scale(2);
    let class_gamma = SurfaceClass::uniform(su, 3 * (d - 2), 4);
    let class_k = SurfaceClass::canonical(su);
    let dl_squared = class_dl.self_intersection();
    let deg_gamma = class_gamma.intersect(&class_dl).expect("same surface");
    let pa_gamma = class_gamma.pa();
    let chi_dl = class_dl.chi();
    debug_assert_eq!(dl_squared, (d - 3) * (d - 4) / 2);
    debug_assert_eq!(deg_gamma, g * (g - 1));
    Ok(SurfaceReport {
        d,
        s,
        n,
        g,
        class_dl,
        class_dq,
        class_gamma,
        class_k,
        dl_squared,
        deg_gamma,
        pa_gamma,
        chi_dl,
        h0_dl: chi_dl,
        deg_theta: g - 1,
        n_equals_dim_s2: n == binom2(d - 1),
        vanishing_assumed: true,
        embeds: d >= 6,
    })
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_basics() {
        let h = SurfaceClass::line(6);
        assert_eq!(h.intersect(&h).unwrap(), 1);
        let e1 = SurfaceClass::new(6, 0, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(e1.self_intersection(), -1);
        assert_eq!(h.intersect(&e1).unwrap(), 0);
        let other = SurfaceClass::line(3);
        assert!(h.intersect(&other).is_err());
    }

    #[test]
    fn gamma_genus_at_d_six() {
        // Γ = 12h − 4Σe on s = 6 points: Γ² = 48, Γ·K = −12, pa = 19
        let gamma = SurfaceClass::uniform(6, 12, 4);
        assert_eq!(gamma.self_intersection(), 48);
        assert_eq!(
            gamma.intersect(&SurfaceClass::canonical(6)).unwrap(),
            -12
        );
        assert_eq!(gamma.pa(), 19);
    }

    #[test]
    fn chi_dl_at_d_six() {
        let dl = SurfaceClass::uniform(6, 3, 1);
        assert_eq!(dl.chi(), 4);
    }

    #[test]
    fn report_d_six() {
        let r = surface_invariants(6).unwrap();
        assert_eq!((r.s, r.n, r.g), (6, 10, 4));
        assert_eq!(r.dl_squared, 3);
        assert_eq!(r.deg_gamma, 12);
        assert_eq!(r.pa_gamma, 19);
        assert_eq!(r.h0_dl, 4);
        assert_eq!(r.deg_theta, 3);
        assert!(r.n_equals_dim_s2);
        assert!(r.embeds);
    }

    #[test]
    fn report_d_seven() {
        let r = surface_invariants(7).unwrap();
        assert_eq!((r.s, r.n, r.g), (10, 15, 5));
        assert_eq!(r.dl_squared, 6);
        assert_eq!(r.deg_gamma, 20);
        assert_eq!(r.pa_gamma, 31);
    }

    #[test]
    fn report_d_five_degenerates() {
        let r = surface_invariants(5).unwrap();
        assert_eq!((r.s, r.n, r.g), (3, 6, 3));
        assert_eq!(r.dl_squared, 1);
        assert!(!r.embeds);
        assert!(surface_invariants(4).is_err());
    }

    #[test]
    fn hurwitz_cases() {
        assert_eq!(hurwitz_genus(5).unwrap(), 3);
        assert_eq!(hurwitz_genus(6).unwrap(), 4);
        assert_eq!(hurwitz_genus(2).unwrap(), 0);
        assert!(hurwitz_genus(1).is_err());
    }

    #[test]
    fn consistency_chain() {
        for d in 5..=30 {
            let r = surface_invariants(d).unwrap();
            let g = r.g;
            assert_eq!(r.deg_gamma, g * (g - 1));
            assert_eq!(r.pa_gamma, 3 * g * (g - 1) / 2 + 1);
            assert_eq!(r.dl_squared, (d - 3) * (d - 4) / 2);
            assert_eq!(r.chi_dl, d - 2);
            assert!(r.n_equals_dim_s2);
            assert_eq!(r.s, (d - 2) * (d - 3) / 2);
            // θ is a theta characteristic: 2·deg θ = 2g − 2
            assert_eq!(2 * r.deg_theta, 2 * g - 2);
            // D_q is the quadric section 2·D_l
            assert_eq!(r.class_dq, r.class_dl.scale(2));
        }
    }

    #[test]
    fn class_display() {
        assert_eq!(SurfaceClass::uniform(6, 12, 4).to_string(), "12h-4Σe");
        assert_eq!(SurfaceClass::canonical(3).to_string(), "-3h+Σe");
        assert_eq!(SurfaceClass::line(2).to_string(), "1h");
    }
}

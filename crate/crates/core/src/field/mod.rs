//! Periodic 1+1-dimensional lattice free scalar field: the harmonic-chain
//! vacuum and its covariance, wedge regions with smearing functions, Weyl
//! expectation values, and lattice translations. The strictly positive mass
//! removes the zero mode and keeps the vacuum exactly circulant, so
//! translations act as exact symmetries.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

mod gaussian;
mod pseudospin;

pub use gaussian::{reduce_two_modes, GaussianReduction, StandardForm};
pub use pseudospin::{
    pseudospin_observable, pseudospin_quadruple, pseudospin_x, pseudospin_z, tmsv_chsh,
    tmsv_density, tmsv_density_embedded, wedge_chsh, TmsvChsh, WedgeChsh, WedgeChshOptions,
};

/// Periodic harmonic chain of `sites` oscillators with lattice `spacing` and
/// field `mass` (both in lattice units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeModel {
    sites: usize,
    spacing: f64,
    mass: f64,
}

impl LatticeModel {
    pub fn new(sites: usize, spacing: f64, mass: f64) -> Result<Self> {
        if sites < 8 || sites % 2 != 0 {
            return Err(Error::InvalidModel {
                reason: format!("site count must be even and >= 8, got {sites}"),
            });
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidModel {
                reason: format!("lattice spacing must be positive, got {spacing}"),
            });
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::MasslessUnsupported { mass });
        }
        Ok(Self {
            sites,
            spacing,
            mass,
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Mode frequency `omega_k = sqrt(m^2 + (4/a^2) sin^2(pi k / N))`.
    pub fn dispersion(&self, k: usize) -> f64 {
        let s = (std::f64::consts::PI * k as f64 / self.sites as f64).sin();
        (self.mass * self.mass + 4.0 / (self.spacing * self.spacing) * s * s).sqrt()
    }
}

/// Which side of the bipartition a wedge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeLabel {
    Left,
    Right,
}

/// Contiguous arc of lattice sites (cyclically, so translates may wrap).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeRegion {
    start: usize,
    len: usize,
    sites_total: usize,
    label: WedgeLabel,
}

impl WedgeRegion {
    pub fn new(start: usize, len: usize, sites_total: usize, label: WedgeLabel) -> Result<Self> {
        if len == 0 || len >= sites_total || start >= sites_total {
            return Err(Error::InvalidModel {
                reason: format!(
                    "wedge [{start}, {start}+{len}) does not fit a lattice of {sites_total} sites"
                ),
            });
        }
        Ok(Self {
            start,
            len,
            sites_total,
            label,
        })
    }

    pub fn label(&self) -> WedgeLabel {
        self.label
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, site: usize) -> bool {
        let offset = (site + self.sites_total - self.start) % self.sites_total;
        offset < self.len
    }

    pub fn sites(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| (self.start + i) % self.sites_total)
    }

    pub fn is_disjoint_from(&self, other: &WedgeRegion) -> bool {
        self.sites().all(|s| !other.contains(s))
    }

    fn translated(&self, shift: i64) -> WedgeRegion {
        let n = self.sites_total as i64;
        let start = ((self.start as i64 + shift) % n + n) % n;
        WedgeRegion {
            start: start as usize,
            ..*self
        }
    }
}

/// Symmetric pair of complementary wedges separated by `gap` sites on both
/// ends of the circle.
pub fn complementary_wedge_pair(
    model: &LatticeModel,
    gap: usize,
) -> Result<(WedgeRegion, WedgeRegion)> {
    let n = model.sites();
    if 2 * gap + 4 > n {
        return Err(Error::InvalidModel {
            reason: format!("gap {gap} leaves no room for two wedges on {n} sites"),
        });
    }
    let len = (n - 2 * gap) / 2;
    let left = WedgeRegion::new(0, len, n, WedgeLabel::Left)?;
    let right = WedgeRegion::new(len + gap, n - 2 * gap - len, n, WedgeLabel::Right)?;
    Ok((left, right))
}

/// Real test function supported inside one wedge, normalized to unit
/// Euclidean norm so the smeared pair `(phi(f), pi(f))` is canonical.
#[derive(Debug, Clone, PartialEq)]
pub struct SmearingFunction {
    coefficients: Vec<f64>,
    support: WedgeRegion,
}

impl SmearingFunction {
    /// Validate support containment and normalize.
    pub fn new(coefficients: Vec<f64>, support: WedgeRegion) -> Result<Self> {
        if coefficients.len() != support.sites_total {
            return Err(Error::InvalidSmearing {
                reason: format!(
                    "coefficient vector has length {}, lattice has {} sites",
                    coefficients.len(),
                    support.sites_total
                ),
            });
        }
        for (site, &c) in coefficients.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::InvalidSmearing {
                    reason: format!("non-finite coefficient at site {site}"),
                });
            }
            if c != 0.0 && !support.contains(site) {
                return Err(Error::SupportViolation {
                    reason: format!("nonzero coefficient at site {site} outside the wedge"),
                });
            }
        }
        let norm_sq: f64 = coefficients.iter().map(|c| c * c).sum();
        if norm_sq <= 0.0 {
            return Err(Error::InvalidSmearing {
                reason: "smearing function must be nonzero".into(),
            });
        }
        let norm = norm_sq.sqrt();
        Ok(Self {
            coefficients: coefficients.into_iter().map(|c| c / norm).collect(),
            support,
        })
    }

    /// Constant profile over the wedge.
    pub fn uniform(support: WedgeRegion) -> Self {
        let mut coefficients = vec![0.0; support.sites_total];
        for site in support.sites() {
            coefficients[site] = 1.0;
        }
        Self::new(coefficients, support).expect("uniform profile is valid")
    }

    /// Profile weighted toward the wedge ends, `exp(-m a d)` with `d` the
    /// distance to the nearer end. The ends face the gaps, which is where the
    /// cross-wedge vacuum correlations live.
    pub fn edge_profile(model: &LatticeModel, support: WedgeRegion) -> Self {
        let decay = model.mass() * model.spacing();
        let mut coefficients = vec![0.0; support.sites_total];
        let len = support.len();
        for (offset, site) in support.sites().enumerate() {
            let d = offset.min(len - 1 - offset) as f64;
            coefficients[site] = (-decay * d).exp();
        }
        Self::new(coefficients, support).expect("edge profile is valid")
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn support(&self) -> &WedgeRegion {
        &self.support
    }
}

/// Equal-time vacuum covariance of the chain. Both matrices are circulant
/// and built from a single row profile, so translation invariance is exact;
/// field-momentum cross correlations vanish identically in the vacuum.
#[derive(Debug, Clone)]
pub struct VacuumCovariance {
    g_phi: ComplexMatrix,
    g_pi: ComplexMatrix,
}

impl VacuumCovariance {
    /// `<phi_i phi_j>` as a real symmetric matrix.
    pub fn g_phi(&self) -> &ComplexMatrix {
        &self.g_phi
    }

    /// `<pi_i pi_j>` as a real symmetric matrix.
    pub fn g_pi(&self) -> &ComplexMatrix {
        &self.g_pi
    }
}

/// Ground-state covariance from the dispersion sums
/// `G_phi[d] = (1/N) sum_k cos(2 pi k d / N) / (2 omega_k)` and
/// `G_pi[d] = (1/N) sum_k omega_k cos(2 pi k d / N) / 2`.
pub fn vacuum_covariance(model: &LatticeModel) -> VacuumCovariance {
    let n = model.sites();
    let mut phi_row = vec![0.0f64; n];
    let mut pi_row = vec![0.0f64; n];
    for d in 0..n {
        let mut phi_acc = 0.0;
        let mut pi_acc = 0.0;
        for k in 0..n {
            let omega = model.dispersion(k);
            let c = (2.0 * std::f64::consts::PI * k as f64 * d as f64 / n as f64).cos();
            phi_acc += c / (2.0 * omega);
            pi_acc += omega * c / 2.0;
        }
        phi_row[d] = phi_acc / n as f64;
        pi_row[d] = pi_acc / n as f64;
    }
    let circulant = |row: &[f64]| {
        ComplexMatrix::from_fn(n, |i, j| C64::new(row[(i + n - j) % n], 0.0))
    };
    VacuumCovariance {
        g_phi: circulant(&phi_row),
        g_pi: circulant(&pi_row),
    }
}

/// `f^T G g` for real coefficient vectors against a real symmetric matrix.
pub(crate) fn quadratic_form(g: &ComplexMatrix, f: &[f64], h: &[f64]) -> f64 {
    let n = g.dim();
    let mut acc = 0.0;
    for i in 0..n {
        if f[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            acc += f[i] * g.get(i, j).re * h[j];
        }
    }
    acc
}

/// Vacuum expectation of the Weyl operator `W(f) = exp(i phi(f))`:
/// `exp(-q(f,f)/4)` with `q(f,f) = 2 <phi(f)^2> = 2 f^T G_phi f`.
pub fn weyl_vacuum_expectation(model: &LatticeModel, f: &SmearingFunction) -> f64 {
    let cov = vacuum_covariance(model);
    weyl_vacuum_expectation_raw(&cov, f.coefficients())
}

/// Same as [`weyl_vacuum_expectation`] on raw coefficients (no support or
/// normalization requirements; the zero function gives exactly 1).
pub fn weyl_vacuum_expectation_raw(cov: &VacuumCovariance, coefficients: &[f64]) -> f64 {
    let q = 2.0 * quadratic_form(cov.g_phi(), coefficients, coefficients);
    (-0.25 * q).exp()
}

/// Cyclic lattice translation of a smearing function by `shift` sites.
/// Returns the translated function and whether its support wrapped around
/// the periodic boundary.
pub fn translate_smearing(f: &SmearingFunction, shift: i64) -> (SmearingFunction, bool) {
    let n = f.coefficients.len();
    let n_i = n as i64;
    let shift_mod = (((shift % n_i) + n_i) % n_i) as usize;
    let mut coefficients = vec![0.0; n];
    for (i, &c) in f.coefficients.iter().enumerate() {
        coefficients[(i + shift_mod) % n] = c;
    }
    let support = f.support.translated(shift);
    let wrapped = support.start + support.len > n;
    (
        SmearingFunction {
            coefficients,
            support,
        },
        wrapped,
    )
}

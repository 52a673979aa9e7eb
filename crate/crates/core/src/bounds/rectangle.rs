//! The rectangle bound `R[f] ≥ |f| / (d(f,r) · d(f,m−r))`.

use serde::{Deserialize, Serialize};

use super::{CertKind, Certificate, MeasureId, Witness};
use crate::circuit::Measure;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::semiring::ExtInt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleRow {
    pub r: u64,
    pub density_r: u64,
    pub density_m_minus_r: u64,
    pub value: u64,
}

/// Minimum of `⌈|f| / (d(f,r)·d(f,m−r))⌉` over `⌈m/3⌉ ≤ r ≤ ⌊2m/3⌋`, where
/// `m` is the minimum degree (or minimum length) of `f`.
///
/// The balanced-product argument only shows that *some* `r` in the window
/// works, so the certificate is the minimum over the window. The closed
/// window contains the half-open one `m/3 < r ≤ 2m/3`, which keeps the
/// minimum sound.
pub fn rectangle_bound(f: &Polynomial, measure: Measure) -> Result<Certificate> {
    let m = match measure {
        Measure::Degree => match f.min_degree() {
            ExtInt::Fin(d) => d as u64,
            _ => return Err(Error::precondition("rectangle bound of the empty polynomial")),
        },
        Measure::Length => match f.min_length() {
            Some(l) => l as u64,
            None => return Err(Error::precondition("rectangle bound of the empty polynomial")),
        },
    };
    if m < 3 {
        return Err(Error::precondition(format!("rectangle bound needs minimum {} m ≥ 3, got {m}", match measure {
            Measure::Degree => "degree",
            Measure::Length => "length",
        })));
    }
    let size = f.len() as u64;
    let mut window = Vec::new();
    for r in m.div_ceil(3)..=(2 * m) / 3 {
        let dr = f.factor_density(r)?;
        let dmr = f.factor_density(m - r)?;
        window.push(RectangleRow { r, density_r: dr, density_m_minus_r: dmr, value: size.div_ceil(dr * dmr) });
    }
    let best = window
        .iter()
        .min_by_key(|row| (row.value, row.r))
        .cloned()
        .ok_or_else(|| Error::Internal("empty rectangle window".into()))?;
    Ok(Certificate::new(
        CertKind::Rectangle,
        best.value,
        MeasureId::ProduceSize,
        f,
        Witness::Rectangle {
            measure,
            m,
            r: best.r,
            density_r: best.density_r,
            density_m_minus_r: best.density_m_minus_r,
            window,
        },
        "minimum over the whole split window; the argument guarantees only some r",
    ))
}

use rustfft::FftPlanner;

use super::phase::PhaseTable;
use super::signal::{unit_root, Signal, C64};
use crate::error::Result;

/// Short-time Fourier transform `V_phi psi(k, l) = <psi, pi(k,l) phi>`.
///
/// For each time shift `k` this is the length-`L` DFT of
/// `psi(t) conj(phi(t - k))`.
pub fn stft(psi: &Signal, phi: &Signal) -> Result<PhaseTable<C64>> {
    psi.check_len(phi.len())?;
    let len = psi.len();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(len);
    let mut out = Vec::with_capacity(len * len);
    let mut row = vec![C64::new(0.0, 0.0); len];
    for k in 0..len {
        for (t, slot) in row.iter_mut().enumerate() {
            *slot = psi[t] * phi[(t + len - k) % len].conj();
        }
        fft.process(&mut row);
        out.extend_from_slice(&row);
    }
    PhaseTable::from_vec(len, out)
}

/// Reference O(L^3) evaluation of the defining sum.
pub fn stft_direct(psi: &Signal, phi: &Signal) -> Result<PhaseTable<C64>> {
    psi.check_len(phi.len())?;
    let len = psi.len();
    Ok(PhaseTable::from_fn(len, |z| {
        (0..len)
            .map(|t| {
                let shifted = unit_root(z.l * t, len) * phi[(t + len - z.k) % len];
                psi[t] * shifted.conj()
            })
            .sum()
    }))
}

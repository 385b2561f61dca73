//! Scalar LLR helpers shared by the decoders.

/// Magnitude at which LLRs are clipped; values at the bound are certainties.
pub const LLR_CLIP: f64 = 30.0;

/// Largest magnitude passed to `atanh`.
pub const ATANH_LIMIT: f64 = 1.0 - 1e-12;

#[inline]
pub fn clip(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(-LLR_CLIP, LLR_CLIP)
    }
}

#[inline]
pub fn atanh2(t: f64) -> f64 {
    // std's atanh loses precision near -1, so evaluate on |t|
    2.0 * t.signum() * t.abs().min(ATANH_LIMIT).atanh()
}

/// `2 atanh(tanh(a/2) tanh(b/2))`, the LLR of the XOR of two bits.
///
/// Inputs are clipped to `±LLR_CLIP`; two saturated inputs give a saturated
/// output with the product sign.
#[inline]
pub fn boxplus(a: f64, b: f64) -> f64 {
    let (a, b) = (clip(a), clip(b));
    if a.abs() == LLR_CLIP && b.abs() == LLR_CLIP {
        return LLR_CLIP * a.signum() * b.signum();
    }
    atanh2((a / 2.0).tanh() * (b / 2.0).tanh())
}

/// `â = 1[L < 0]`.
#[inline]
pub fn hard(x: f64) -> bool {
    x < 0.0
}

use num_complex::Complex64;

use crate::pair_state::PairState;

/// Componentwise distance between `computed` and `stated` after rotating
/// `computed` by the global phase that aligns the largest-magnitude stated
/// component.
pub fn phase_aligned_residual(computed: &PairState, stated: &PairState) -> f64 {
    let s = stated.vector();
    let c = computed.vector();
    let pivot = (0..9).fold(0, |best, k| if s[k].norm() > s[best].norm() { k } else { best });
    let phase = if s[pivot].norm() == 0.0 || c[pivot].norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        let ratio = s[pivot] / c[pivot];
        ratio / ratio.norm()
    };
    computed.scaled(phase).max_abs_diff(stated)
}

/// Same comparison on unit-normalized copies, i.e. component ratios only.
/// Returns `None` when either vector vanishes.
pub fn ratio_residual(computed: &PairState, stated: &PairState) -> Option<f64> {
    let (nc, ns) = (computed.norm(), stated.norm());
    if nc == 0.0 || ns == 0.0 {
        return None;
    }
    Some(phase_aligned_residual(
        &(*computed * (1.0 / nc)),
        &(*stated * (1.0 / ns)),
    ))
}

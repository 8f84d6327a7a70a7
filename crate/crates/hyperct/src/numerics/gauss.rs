//! Fixed quadrature rules: 15-point Gauss-Kronrod and tensor Gauss-Legendre.

use crate::Complex;

/// Positive Kronrod abscissae of the G7K15 pair (node 0 listed once).
pub(crate) const GK15_NODES: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

pub(crate) const GK15_WEIGHTS: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// Embedded 7-point Gauss weights (for nodes 0, 2, 4, 6 above).
pub(crate) const G7_WEIGHTS: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

/// One G7K15 panel over [a, b]: returns (kronrod value, |kronrod - gauss|).
pub(crate) fn gk15_panel<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64) -> (Complex, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = GK15_WEIGHTS[0] * fc;
    let mut gauss = G7_WEIGHTS[0] * fc;
    for i in 1..8 {
        let dx = GK15_NODES[i] * half;
        let s = f(mid - dx) + f(mid + dx);
        kron += GK15_WEIGHTS[i] * s;
        if i % 2 == 0 {
            gauss += G7_WEIGHTS[i / 2] * s;
        }
    }
    let value = half * kron;
    (value, (value - half * gauss).norm())
}

pub(crate) const GL5_NODES: [f64; 5] = [
    -9.06179845938663964e-1,
    -5.38469310105683108e-1,
    0.0,
    5.38469310105683108e-1,
    9.06179845938663964e-1,
];

pub(crate) const GL5_WEIGHTS: [f64; 5] = [
    2.36926885056189418e-1,
    4.78628670499366193e-1,
    5.68888888888888889e-1,
    4.78628670499366193e-1,
    2.36926885056189418e-1,
];

pub(crate) const GL10_NODES: [f64; 10] = [
    -9.73906528517171743e-1,
    -8.65063366688984536e-1,
    -6.79409568299024436e-1,
    -4.33395394129247213e-1,
    -1.48874338981631216e-1,
    1.48874338981631216e-1,
    4.33395394129247213e-1,
    6.79409568299024436e-1,
    8.65063366688984536e-1,
    9.73906528517171743e-1,
];

pub(crate) const GL10_WEIGHTS: [f64; 10] = [
    6.66713443086880686e-2,
    1.49451349150580365e-1,
    2.19086362515982014e-1,
    2.69266719309996516e-1,
    2.95524224714752981e-1,
    2.95524224714752981e-1,
    2.69266719309996516e-1,
    2.19086362515982014e-1,
    1.49451349150580365e-1,
    6.66713443086880686e-2,
];

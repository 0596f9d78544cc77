#![allow(dead_code)]

use proptest::prelude::*;
use udw_core::channel::{ChannelParams, Regime};
use udw_core::{ComplexMatrix, DensityMatrix, C64};

fn shrink_into_ball(v: [f64; 3], radius: f64) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n <= radius {
        v
    } else {
        let s = radius / n;
        [v[0] * s, v[1] * s, v[2] * s]
    }
}

pub fn bloch() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64].prop_map(|v| shrink_into_ball(v, 1.0))
}

/// Bloch vectors strictly inside the ball, so states have full rank.
pub fn interior_bloch() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64].prop_map(|v| shrink_into_ball(v, 0.95))
}

pub fn qubit() -> impl Strategy<Value = DensityMatrix> {
    bloch().prop_map(|r| DensityMatrix::from_bloch(r).unwrap())
}

pub fn axis() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
        .prop_filter("non-degenerate", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        })
}

pub fn nu() -> impl Strategy<Value = C64> {
    (0.0..=1.0f64, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(r, t)| C64::from_polar(r, t))
}

pub fn params() -> impl Strategy<Value = ChannelParams> {
    (nu(), axis(), any::<bool>()).prop_map(|(nu, axis, delta)| {
        let regime = if delta { Regime::Delta } else { Regime::Gapless };
        ChannelParams::new(nu, axis, regime).unwrap()
    })
}

pub fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(-1.0..1.0f64, dim * dim * 2).prop_map(move |xs| {
        let mut m = ComplexMatrix::zeros(dim).unwrap();
        for i in 0..dim {
            for j in 0..dim {
                let k = 2 * (i * dim + j);
                m[(i, j)] = C64::new(xs[k], xs[k + 1]);
            }
        }
        m.hermitian_part()
    })
}

pub fn four_level_state() -> impl Strategy<Value = DensityMatrix> {
    proptest::collection::vec(-1.0..1.0f64, 32).prop_map(|xs| {
        let mut a = ComplexMatrix::zeros(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let k = 2 * (i * 4 + j);
                a[(i, j)] = C64::new(xs[k], xs[k + 1]);
            }
        }
        let g = &a * &a.adjoint();
        let tr = g.trace().re.max(1e-12);
        DensityMatrix::new(g.scale_re(1.0 / tr).hermitian_part()).unwrap()
    })
}

//! Adaptive Dormand-Prince 5(4) integrator over complex state vectors.
//!
//! Shared by the coupled-wave reference integrator and the folded-scheme
//! master-equation oracle. Step control is the usual PI controller on the
//! embedded error estimate with a hard floor that reports stiffness instead
//! of spinning.

use num_complex::Complex64 as C64;

use crate::error::{LicsError, Result};

pub struct DormandPrince {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for DormandPrince {
    fn default() -> Self {
        DormandPrince {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 50_000_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// embedded 4th-order weights
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

impl DormandPrince {
    /// Integrate `dy/dt = rhs(t, y)` from `t0` to `t1`, calling `observe`
    /// after every accepted step. Returns the final state.
    pub fn integrate<F, O>(
        &self,
        mut rhs: F,
        t0: f64,
        t1: f64,
        y0: &[C64],
        mut observe: O,
    ) -> Result<Vec<C64>>
    where
        F: FnMut(f64, &[C64], &mut [C64]),
        O: FnMut(f64, f64, &[C64]),
    {
        let n = y0.len();
        let mut y = y0.to_vec();
        let mut t = t0;
        let span = t1 - t0;
        if span == 0.0 {
            return Ok(y);
        }
        let dir = span.signum();

        let mut k1 = vec![C64::new(0.0, 0.0); n];
        let mut k2 = k1.clone();
        let mut k3 = k1.clone();
        let mut k4 = k1.clone();
        let mut k5 = k1.clone();
        let mut k6 = k1.clone();
        let mut k7 = k1.clone();
        let mut stage = k1.clone();
        let mut y_new = k1.clone();

        rhs(t, &y, &mut k1);
        let mut h = self.initial_step(&y, &k1, span.abs()) * dir;
        let h_min = span.abs() * 1e-14;
        let mut err_prev: f64 = 1.0;

        for _ in 0..self.max_steps {
            if (t - t1) * dir >= 0.0 {
                return Ok(y);
            }
            if (t + h - t1) * dir > 0.0 {
                h = t1 - t;
            }
            if h.abs() < h_min {
                return Err(LicsError::StepSizeUnderflow { t });
            }

            macro_rules! combine {
                ($($w:expr => $k:ident),+) => {{
                    for i in 0..n {
                        stage[i] = y[i] $( + h * $w * $k[i] )+;
                    }
                }};
            }

            combine!(A21 => k1);
            rhs(t + C2 * h, &stage, &mut k2);
            combine!(A31 => k1, A32 => k2);
            rhs(t + C3 * h, &stage, &mut k3);
            combine!(A41 => k1, A42 => k2, A43 => k3);
            rhs(t + C4 * h, &stage, &mut k4);
            combine!(A51 => k1, A52 => k2, A53 => k3, A54 => k4);
            rhs(t + C5 * h, &stage, &mut k5);
            combine!(A61 => k1, A62 => k2, A63 => k3, A64 => k4, A65 => k5);
            rhs(t + h, &stage, &mut k6);
            for i in 0..n {
                y_new[i] = y[i]
                    + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
            }
            rhs(t + h, &y_new, &mut k7);

            let mut err: f64 = 0.0;
            for i in 0..n {
                let e5 = B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i];
                let e4 = E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                    + E7 * k7[i];
                let scale = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
                let d = (h * (e5 - e4)).norm() / scale;
                err += d * d;
            }
            err = (err / n as f64).sqrt().max(1e-30);

            if err <= 1.0 {
                t += h;
                std::mem::swap(&mut y, &mut y_new);
                std::mem::swap(&mut k1, &mut k7);
                observe(t, h.abs(), &y);
                // PI controller
                let fac = 0.9 * err.powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
                h *= fac.clamp(0.2, 5.0);
                err_prev = err;
            } else {
                h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            }
        }
        Err(LicsError::StepSizeUnderflow { t })
    }

    fn initial_step(&self, y: &[C64], dy: &[C64], span: f64) -> f64 {
        let ynorm: f64 = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let dynorm: f64 = dy.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let h = if dynorm > 1e-300 {
            0.01 * (ynorm.max(1e-6) / dynorm)
        } else {
            span * 1e-6
        };
        h.min(span * 0.1).max(span * 1e-12)
    }
}

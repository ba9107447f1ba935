//! Explicit Runge-Kutta integration with a 9-stage, order-7 tableau.

use crate::error::{Error, Result};

pub const STAGES: usize = 9;

/// Butcher tableau of an explicit method with [`STAGES`] stages.
#[derive(Debug, Clone, PartialEq)]
pub struct RkTableau {
    pub a: [[f64; STAGES]; STAGES],
    pub b: [f64; STAGES],
    pub c: [f64; STAGES],
}

impl RkTableau {
    /// Butcher's 9-stage method of order 7.
    pub fn rk7() -> Self {
        let mut a = [[0.0; STAGES]; STAGES];
        a[1][0] = 1.0 / 6.0;
        a[2][1] = 1.0 / 3.0;
        a[3][0] = 1.0 / 8.0;
        a[3][2] = 3.0 / 8.0;
        a[4][0] = 148.0 / 1331.0;
        a[4][2] = 150.0 / 1331.0;
        a[4][3] = -56.0 / 1331.0;
        a[5][0] = -404.0 / 243.0;
        a[5][2] = -170.0 / 27.0;
        a[5][3] = 4024.0 / 1701.0;
        a[5][4] = 10648.0 / 1701.0;
        a[6][0] = 2466.0 / 2401.0;
        a[6][2] = 1242.0 / 343.0;
        a[6][3] = -19176.0 / 16807.0;
        a[6][4] = -51909.0 / 16807.0;
        a[6][5] = 1053.0 / 2401.0;
        a[7][0] = 5.0 / 154.0;
        a[7][3] = 96.0 / 539.0;
        a[7][4] = -1815.0 / 20384.0;
        a[7][5] = -405.0 / 2464.0;
        a[7][6] = 49.0 / 1144.0;
        a[8][0] = -113.0 / 32.0;
        a[8][2] = -195.0 / 22.0;
        a[8][3] = 32.0 / 7.0;
        a[8][4] = 29403.0 / 3584.0;
        a[8][5] = -729.0 / 512.0;
        a[8][6] = 1029.0 / 1408.0;
        a[8][7] = 21.0 / 16.0;
        let b = [
            0.0,
            0.0,
            0.0,
            32.0 / 105.0,
            1771561.0 / 6289920.0,
            243.0 / 2560.0,
            16807.0 / 74880.0,
            77.0 / 1440.0,
            11.0 / 270.0,
        ];
        let c = [
            0.0,
            1.0 / 6.0,
            1.0 / 3.0,
            1.0 / 2.0,
            2.0 / 11.0,
            2.0 / 3.0,
            6.0 / 7.0,
            0.0,
            1.0,
        ];
        Self { a, b, c }
    }

    /// Explicitness, `sum b = 1` and row sums equal to `c`.
    pub fn check(&self) -> Result<()> {
        for i in 0..STAGES {
            if self.a[i][i..].iter().any(|v| *v != 0.0) {
                return Err(Error::InvalidArgument(format!("row {i} is not explicit")));
            }
            let row: f64 = self.a[i].iter().sum();
            if (row - self.c[i]).abs() > 1e-14 {
                return Err(Error::InvalidArgument(format!(
                    "row {i} sums to {row}, c = {}",
                    self.c[i]
                )));
            }
        }
        let sb: f64 = self.b.iter().sum();
        if (sb - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidArgument(format!("weights sum to {sb}")));
        }
        Ok(())
    }
}

/// Stage storage reused across steps.
#[derive(Debug, Clone, Default)]
pub struct RkWorkspace {
    k: Vec<Vec<f64>>,
    stage: Vec<f64>,
}

impl RkWorkspace {
    pub fn new(len: usize) -> Self {
        Self {
            k: vec![vec![0.0; len]; STAGES],
            stage: vec![0.0; len],
        }
    }

    fn ensure(&mut self, len: usize) {
        if self.stage.len() != len {
            *self = Self::new(len);
        }
    }
}

/// Advances `y` by one step of size `dt`. The right-hand side receives the
/// stage time, the stage state (mutable so that it may fill ghost cells) and
/// the output slice.
pub fn rk_step<F>(
    tab: &RkTableau,
    y: &mut [f64],
    t: f64,
    dt: f64,
    ws: &mut RkWorkspace,
    mut f: F,
) -> Result<()>
where
    F: FnMut(f64, &mut [f64], &mut [f64]) -> Result<()>,
{
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let n = y.len();
    ws.ensure(n);
    let RkWorkspace { k, stage } = ws;
    for i in 0..STAGES {
        stage.copy_from_slice(y);
        for (j, kj) in k.iter().enumerate().take(i) {
            let a = tab.a[i][j];
            if a != 0.0 {
                let s = dt * a;
                for (st, kv) in stage.iter_mut().zip(kj.iter()) {
                    *st += s * kv;
                }
            }
        }
        f(t + tab.c[i] * dt, stage, &mut k[i])?;
    }
    for (i, ki) in k.iter().enumerate() {
        let b = tab.b[i];
        if b != 0.0 {
            let s = dt * b;
            for (yv, kv) in y.iter_mut().zip(ki.iter()) {
                *yv += s * kv;
            }
        }
    }
    Ok(())
}

//! Scalar trait, compensated summation and deterministic parallel reduction.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rayon::prelude::*;
use std::fmt::{Debug, Display};

use crate::value::ValueWithError;

pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier<T> {
    sum: T,
    comp: T,
}

impl<T: Float> Neumaier<T> {
    pub fn new() -> Self {
        Neumaier {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Compensated sum of complex numbers, one accumulator per component.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum<T> {
    re: Neumaier<T>,
    im: Neumaier<T>,
}

impl<T: Float> ComplexSum<T> {
    pub fn new() -> Self {
        ComplexSum {
            re: Neumaier::new(),
            im: Neumaier::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

/// Block size for parallel reductions. Fixed so that results do not depend
/// on the number of worker threads.
pub const BLOCK: usize = 64;

/// Sums `f(i)` for `i in 0..n`.
///
/// Blocks of [`BLOCK`] consecutive indices are summed sequentially (possibly
/// on different threads) and the block totals are then combined in index
/// order, so the result is bit-identical for any thread count.
pub fn par_block_sum<F>(n: usize, f: F) -> ValueWithError<f64>
where
    F: Fn(usize) -> ValueWithError<f64> + Sync,
{
    let nblocks = n.div_ceil(BLOCK);
    let partial: Vec<(Complex<f64>, f64, f64)> = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = ComplexSum::new();
            let mut err = Neumaier::new();
            let mut mag = 0.0;
            for i in b * BLOCK..((b + 1) * BLOCK).min(n) {
                let v = f(i);
                acc.add(v.value);
                err.add(v.abs_error);
                mag += v.value.norm();
            }
            (acc.value(), err.value(), mag)
        })
        .collect();
    let mut acc = ComplexSum::new();
    let mut err = Neumaier::new();
    let mut mag = 0.0;
    for (v, e, m) in partial {
        acc.add(v);
        err.add(e);
        mag += m;
    }
    ValueWithError::new(acc.value(), err.value() + 4.0 * f64::EPSILON * mag)
}

/// Order-preserving parallel map.
pub fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

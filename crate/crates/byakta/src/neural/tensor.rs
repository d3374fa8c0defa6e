use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use super::NeuralError;

/// Element type of the kernel: f32 for training, f64 for verification.
pub trait Scalar:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    const ONE: Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn maximum(self, other: Self) -> Self;
    fn is_finite(self) -> bool;
    fn sample_uniform<R: Rng>(rng: &mut R, lo: Self, hi: Self) -> Self;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const ZERO: Self = 0.0;
            const ONE: Self = 1.0;
            fn from_f64(v: f64) -> Self {
                v as $t
            }
            fn to_f64(self) -> f64 {
                self as f64
            }
            fn exp(self) -> Self {
                self.exp()
            }
            fn ln(self) -> Self {
                self.ln()
            }
            fn sqrt(self) -> Self {
                self.sqrt()
            }
            fn abs(self) -> Self {
                self.abs()
            }
            fn maximum(self, other: Self) -> Self {
                self.max(other)
            }
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
            fn sample_uniform<R: Rng>(rng: &mut R, lo: Self, hi: Self) -> Self {
                rng.gen_range(lo..hi)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// A shaped row-major float array. A scalar has the empty shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn new(shape: Vec<usize>, data: Vec<T>) -> Result<Self, NeuralError> {
        let expect: usize = shape.iter().product();
        if expect != data.len() {
            return Err(NeuralError::ShapeMismatch(format!(
                "shape {:?} needs {} elements, got {}",
                shape,
                expect,
                data.len()
            )));
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Tensor {
            shape: shape.to_vec(),
            data: vec![T::ZERO; shape.iter().product()],
        }
    }

    pub fn filled(shape: &[usize], v: T) -> Self {
        Tensor {
            shape: shape.to_vec(),
            data: vec![v; shape.iter().product()],
        }
    }

    pub fn scalar(v: T) -> Self {
        Tensor {
            shape: vec![],
            data: vec![v],
        }
    }

    /// Uniform samples in [lo, hi).
    pub fn rand_uniform<R: Rng>(shape: &[usize], lo: T, hi: T, rng: &mut R) -> Self {
        let n: usize = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: (0..n).map(|_| T::sample_uniform(rng, lo, hi)).collect(),
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    /// The single element of a scalar or one-element tensor.
    pub fn item(&self) -> T {
        assert_eq!(self.data.len(), 1, "item() on a tensor of {:?}", self.shape);
        self.data[0]
    }

    /// (batch, channels, length) of a rank-3 tensor.
    pub fn dim3(&self) -> (usize, usize, usize) {
        assert_eq!(self.shape.len(), 3, "expected rank 3, got {:?}", self.shape);
        (self.shape[0], self.shape[1], self.shape[2])
    }

    pub fn dim2(&self) -> (usize, usize) {
        assert_eq!(self.shape.len(), 2, "expected rank 2, got {:?}", self.shape);
        (self.shape[0], self.shape[1])
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Row view of a rank-3 tensor at (batch, channel).
    pub fn row(&self, b: usize, c: usize) -> &[T] {
        let (_, channels, l) = self.dim3();
        let start = (b * channels + c) * l;
        &self.data[start..start + l]
    }

    pub fn cast<U: Scalar>(&self) -> Tensor<U> {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| U::from_f64(v.to_f64())).collect(),
        }
    }
}

use crate::error::{ensure_dims, Error, Result};
use crate::tensor::ComplexMatrix;
use crate::C64;

/// Dense 3-way complex tensor. Entry `(i1, i2, i3)` lives at
/// `i1 + d1·(i2 + d2·i3)`, so each frontal slice is a contiguous
/// column-major `d1 × d2` block.
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexTensor3 {
    dims: [usize; 3],
    data: Vec<C64>,
}

/// Unfolding mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
    Three,
}

impl TryFrom<usize> for Mode {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            3 => Ok(Mode::Three),
            _ => Err(Error::Contract(format!("unfolding mode must be 1, 2 or 3, got {n}"))),
        }
    }
}

impl ComplexTensor3 {
    pub fn zeros(d1: usize, d2: usize, d3: usize) -> Self {
        Self {
            dims: [d1, d2, d3],
            data: vec![C64::new(0.0, 0.0); d1 * d2 * d3],
        }
    }

    pub fn from_raw(dims: [usize; 3], data: Vec<C64>) -> Result<Self> {
        ensure_dims!(
            data.len() == dims.iter().product::<usize>(),
            "{} entries cannot fill a {:?} tensor",
            data.len(),
            dims
        );
        Ok(Self { dims, data })
    }

    /// Stacks equally shaped matrices as frontal slices (the mode-3 concatenation).
    pub fn fold_from_slices(slices: &[ComplexMatrix]) -> Result<Self> {
        let Some(first) = slices.first() else {
            return Err(Error::Dimension("no slices to stack".into()));
        };
        let (d1, d2) = first.shape();
        ensure_dims!(
            slices.iter().all(|s| s.shape() == (d1, d2)),
            "frontal slices must share the shape {d1}x{d2}"
        );
        let mut data = Vec::with_capacity(d1 * d2 * slices.len());
        for s in slices {
            data.extend_from_slice(s.as_slice());
        }
        Ok(Self {
            dims: [d1, d2, slices.len()],
            data,
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i1: usize, i2: usize, i3: usize) -> C64 {
        let [d1, d2, _] = self.dims;
        self.data[i1 + d1 * (i2 + d2 * i3)]
    }

    pub fn frontal_slice(&self, i: usize) -> ComplexMatrix {
        let [d1, d2, _] = self.dims;
        let n = d1 * d2;
        ComplexMatrix::from_col_major(d1, d2, self.data[i * n..(i + 1) * n].to_vec()).expect("slice length is d1*d2")
    }

    pub fn frontal_slices(&self) -> Vec<ComplexMatrix> {
        (0..self.dims[2]).map(|i| self.frontal_slice(i)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Kolda mode-n unfolding.
    ///
    /// * mode 1: `d1 × d2·d3`, the frontal slices side by side `[Y_1, …, Y_I]`
    /// * mode 2: `d2 × d1·d3`, the transposed slices `[Y_1ᵀ, …, Y_Iᵀ]`
    /// * mode 3: `d3 × d1·d2`, row `i` is `vec(Y_i)ᵀ`
    pub fn unfold(&self, mode: Mode) -> ComplexMatrix {
        let [d1, d2, d3] = self.dims;
        match mode {
            // already laid out as the mode-1 unfolding
            Mode::One => ComplexMatrix::from_col_major(d1, d2 * d3, self.data.clone()).unwrap(),
            Mode::Two => {
                let mut out = ComplexMatrix::zeros(d2, d1 * d3);
                for i3 in 0..d3 {
                    for i2 in 0..d2 {
                        for i1 in 0..d1 {
                            out[(i2, i1 + d1 * i3)] = self.get(i1, i2, i3);
                        }
                    }
                }
                out
            }
            Mode::Three => {
                let mut out = ComplexMatrix::zeros(d3, d1 * d2);
                for i3 in 0..d3 {
                    for i2 in 0..d2 {
                        for i1 in 0..d1 {
                            out[(i3, i1 + d1 * i2)] = self.get(i1, i2, i3);
                        }
                    }
                }
                out
            }
        }
    }

    /// Unfolding with an integer mode; anything outside `1..=3` is a contract violation.
    pub fn unfold_n(&self, mode: usize) -> Result<ComplexMatrix> {
        Ok(self.unfold(Mode::try_from(mode)?))
    }

    /// Entry-wise sum with another tensor of the same shape.
    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_dims!(
            self.dims == other.dims,
            "tensor shapes {:?} vs {:?}",
            self.dims,
            other.dims
        );
        Ok(Self {
            dims: self.dims,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        ensure_dims!(
            self.dims == other.dims,
            "tensor shapes {:?} vs {:?}",
            self.dims,
            other.dims
        );
        Ok(Self {
            dims: self.dims,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Fully connected layer of integrate-and-fire neurons.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub inputs: usize,
    pub outputs: usize,
    /// Row-major `outputs x inputs`.
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
    pub threshold: f64,
}

impl Layer {
    pub fn zeros(inputs: usize, outputs: usize, threshold: f64) -> Self {
        Self {
            inputs,
            outputs,
            weights: vec![0.0; inputs * outputs],
            bias: vec![0.0; outputs],
            threshold,
        }
    }

    pub fn weight(&self, o: usize, i: usize) -> f64 {
        self.weights[o * self.inputs + i]
    }

    pub fn weight_mut(&mut self, o: usize, i: usize) -> &mut f64 {
        &mut self.weights[o * self.inputs + i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnnModel {
    pub layers: Vec<Layer>,
    /// Height and inverse width of the rectangular surrogate derivative.
    pub surrogate_slope: f64,
}

/// Layer widths plus neuron parameters for a fresh model.
#[derive(Debug, Clone, PartialEq)]
pub struct Architecture {
    /// `[input, hidden..., classes]`.
    pub sizes: Vec<usize>,
    pub threshold: f64,
    pub surrogate_slope: f64,
}

impl Architecture {
    /// 256 -> 128 -> classes, for 16x16 single-channel input.
    pub fn desk(classes: usize) -> Self {
        Self {
            sizes: vec![256, 128, classes],
            threshold: 1.0,
            surrogate_slope: 1.0,
        }
    }
}

/// Weight scale of the output layer at initialisation.
pub const OUTPUT_GAIN: f64 = 0.1;
/// Output bias at initialisation, as a fraction of the threshold.
pub const OUTPUT_BIAS: f64 = 0.5;

impl SnnModel {
    pub fn new(layers: Vec<Layer>, surrogate_slope: f64) -> Result<Self> {
        let model = Self {
            layers,
            surrogate_slope,
        };
        model.validate()?;
        Ok(model)
    }

    /// Uniform initialisation in `+-sqrt(6 / fan_in)`, zero biases.
    ///
    /// When there is a hidden layer, the output layer is damped instead:
    /// weights scaled by [`OUTPUT_GAIN`] and biases set to
    /// [`OUTPUT_BIAS`] times the threshold, so every class neuron starts
    /// near its threshold and receives surrogate gradient.
    pub fn init(arch: &Architecture, seed: u64) -> Result<Self> {
        if arch.sizes.len() < 2 || arch.sizes.contains(&0) {
            return Err(Error::ShapeMismatch(format!("bad layer sizes {:?}", arch.sizes)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let last = arch.sizes.len() - 2;
        let layers = arch
            .sizes
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                let mut layer = Layer::zeros(w[0], w[1], arch.threshold);
                let damped = k == last && last > 0;
                let gain = if damped { OUTPUT_GAIN } else { 1.0 };
                let bound = (6.0 / w[0] as f64).sqrt();
                for v in &mut layer.weights {
                    *v = gain * rng.gen_range(-bound..bound);
                }
                if damped {
                    layer.bias.fill(OUTPUT_BIAS * arch.threshold);
                }
                layer
            })
            .collect();
        Self::new(layers, arch.surrogate_slope)
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::ShapeMismatch("model has no layers".into()));
        }
        if !(self.surrogate_slope.is_finite() && self.surrogate_slope > 0.0) {
            return Err(Error::InvalidConfig("surrogate slope must be positive".into()));
        }
        for (k, layer) in self.layers.iter().enumerate() {
            if layer.weights.len() != layer.inputs * layer.outputs || layer.bias.len() != layer.outputs {
                return Err(Error::ShapeMismatch(format!("layer {k} storage does not match its size")));
            }
            if !(layer.threshold.is_finite() && layer.threshold > 0.0) {
                return Err(Error::InvalidConfig(format!("layer {k} threshold must be positive")));
            }
            if layer.weights.iter().chain(&layer.bias).any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!("layer {k} has non-finite parameters")));
            }
        }
        for (k, pair) in self.layers.windows(2).enumerate() {
            if pair[0].outputs != pair[1].inputs {
                return Err(Error::ShapeMismatch(format!(
                    "layer {k} emits {} values but layer {} takes {}",
                    pair[0].outputs,
                    k + 1,
                    pair[1].inputs
                )));
            }
        }
        Ok(())
    }

    pub fn input_size(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn class_count(&self) -> usize {
        self.layers.last().map_or(0, |l| l.outputs)
    }

    pub fn parameter_count(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.bias.len()).sum()
    }

    /// `params -= rate * grads`.
    pub fn apply_gradients(&mut self, grads: &Gradients, rate: f64) {
        for (layer, g) in self.layers.iter_mut().zip(&grads.layers) {
            for (w, dw) in layer.weights.iter_mut().zip(&g.weights) {
                *w -= rate * dw;
            }
            for (b, db) in layer.bias.iter_mut().zip(&g.bias) {
                *b -= rate * db;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerGradients {
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

/// Loss gradients, shaped like the model's parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub layers: Vec<LayerGradients>,
}

impl Gradients {
    pub fn zeros_like(model: &SnnModel) -> Self {
        Self {
            layers: model
                .layers
                .iter()
                .map(|l| LayerGradients {
                    weights: vec![0.0; l.weights.len()],
                    bias: vec![0.0; l.bias.len()],
                })
                .collect(),
        }
    }

    pub fn scale(&mut self, k: f64) {
        for l in &mut self.layers {
            l.weights.iter_mut().chain(l.bias.iter_mut()).for_each(|v| *v *= k);
        }
    }

    /// Parameters flattened layer by layer, weights before biases.
    pub fn flatten(&self) -> Vec<f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(&l.bias).copied())
            .collect()
    }
}

//! Forward simulation and backpropagation through time.
//!
//! Per layer and step:
//!
//! ```text
//! u[t]      = u_post[t-1] + W s_in[t] + b
//! s[t]      = H(u[t] - theta)               (hard)   or  ramp(u[t] - theta)  (relaxed)
//! u_post[t] = u[t] - theta * s[t]
//! ```
//!
//! The backward pass uses the rectangular surrogate `ds/du = k` for
//! `|u - theta| <= 1 / (2k)`, zero elsewhere, and lets the gradient flow
//! through the reset term. The relaxed forward uses the ramp whose derivative
//! is exactly that rectangle, which makes the analytic gradient checkable by
//! finite differences.

use crate::error::{Error, Result};
use crate::snn::model::{Gradients, SnnModel};
use crate::types::SpikeTensor;

/// Binary network input: the active input indices at every step, plus a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpikeSample {
    pub input_size: usize,
    pub steps: Vec<Vec<u32>>,
    pub label: usize,
}

impl SpikeSample {
    /// Flattens each time step of the tensor in `(c, y, x)` order.
    pub fn from_tensor(tensor: &SpikeTensor, label: usize) -> Self {
        let steps = (0..tensor.time_steps())
            .map(|t| {
                tensor
                    .frame(t)
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        Self {
            input_size: tensor.channels() * tensor.width() * tensor.height(),
            steps,
            label,
        }
    }

    pub fn time_steps(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Heaviside firing; only the backward pass uses the surrogate.
    Hard,
    /// Firing replaced by its ramp surrogate in the forward pass as well.
    Relaxed,
}

fn fire(mode: Mode, v: f64, slope: f64) -> f64 {
    match mode {
        Mode::Hard => (v >= 0.0) as u8 as f64,
        Mode::Relaxed => (slope * v + 0.5).clamp(0.0, 1.0),
    }
}

fn surrogate(v: f64, slope: f64) -> f64 {
    if v.abs() <= 0.5 / slope {
        slope
    } else {
        0.0
    }
}

struct Trace {
    /// `[t][layer]` membrane before reset.
    membrane: Vec<Vec<Vec<f64>>>,
    /// `[t][layer]` layer outputs.
    spikes: Vec<Vec<Vec<f64>>>,
    counts: Vec<f64>,
}

fn check_input(model: &SnnModel, sample: &SpikeSample) -> Result<()> {
    if sample.input_size != model.input_size() {
        return Err(Error::ShapeMismatch(format!(
            "input has {} neurons, model expects {}",
            sample.input_size,
            model.input_size()
        )));
    }
    if let Some(&bad) = sample.steps.iter().flatten().find(|&&i| i as usize >= sample.input_size) {
        return Err(Error::ShapeMismatch(format!("input index {bad} out of range")));
    }
    Ok(())
}

fn simulate(model: &SnnModel, sample: &SpikeSample, mode: Mode, keep_trace: bool) -> Trace {
    let slope = model.surrogate_slope;
    let mut post: Vec<Vec<f64>> = model.layers.iter().map(|l| vec![0.0; l.outputs]).collect();
    let mut counts = vec![0.0; model.class_count()];
    let mut trace = Trace {
        membrane: Vec::new(),
        spikes: Vec::new(),
        counts: Vec::new(),
    };

    for active in &sample.steps {
        let mut step_membrane = Vec::with_capacity(model.layers.len());
        let mut step_spikes: Vec<Vec<f64>> = Vec::with_capacity(model.layers.len());
        for (k, layer) in model.layers.iter().enumerate() {
            let mut u = post[k].clone();
            for (o, uo) in u.iter_mut().enumerate() {
                let row = &layer.weights[o * layer.inputs..(o + 1) * layer.inputs];
                let drive: f64 = if k == 0 {
                    active.iter().map(|&i| row[i as usize]).sum()
                } else {
                    row.iter().zip(&step_spikes[k - 1]).map(|(w, s)| w * s).sum()
                };
                *uo += drive + layer.bias[o];
            }
            let s: Vec<f64> = u.iter().map(|&v| fire(mode, v - layer.threshold, slope)).collect();
            for ((p, &uo), &so) in post[k].iter_mut().zip(&u).zip(&s) {
                *p = uo - layer.threshold * so;
            }
            step_membrane.push(u);
            step_spikes.push(s);
        }
        for (c, s) in counts.iter_mut().zip(step_spikes.last().unwrap()) {
            *c += s;
        }
        if keep_trace {
            trace.membrane.push(step_membrane);
            trace.spikes.push(step_spikes);
        }
    }
    trace.counts = counts;
    trace
}

/// Per-class output spike counts over the presentation.
pub fn forward(model: &SnnModel, sample: &SpikeSample) -> Result<Vec<usize>> {
    check_input(model, sample)?;
    let counts = simulate(model, sample, Mode::Hard, false).counts;
    Ok(counts.into_iter().map(|c| c as usize).collect())
}

/// Per-class output (spike counts in hard mode, summed ramp outputs in
/// relaxed mode).
pub fn forward_outputs(model: &SnnModel, sample: &SpikeSample, mode: Mode) -> Result<Vec<f64>> {
    check_input(model, sample)?;
    Ok(simulate(model, sample, mode, false).counts)
}

/// Index of the largest output, lowest index on ties.
pub fn argmax<T: PartialOrd + Copy>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Softmax cross-entropy of `logits` against `label`, with `d loss / d logits`.
pub fn cross_entropy(logits: &[f64], label: usize) -> (f64, Vec<f64>) {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    let loss = sum.ln() + max - logits[label];
    let grad = exps
        .iter()
        .enumerate()
        .map(|(k, e)| e / sum - (k == label) as u8 as f64)
        .collect();
    (loss, grad)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    /// Mean loss over the batch.
    pub loss: f64,
    /// Gradient of the mean loss.
    pub gradients: Gradients,
    /// How many samples the forward pass already classified correctly.
    pub correct: usize,
}

/// Mean cross-entropy over the batch and its surrogate gradient.
pub fn loss_and_grad(model: &SnnModel, batch: &[SpikeSample], mode: Mode) -> Result<BatchResult> {
    if batch.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut grads = Gradients::zeros_like(model);
    let mut total_loss = 0.0;
    let mut correct = 0;
    for sample in batch {
        check_input(model, sample)?;
        if sample.label >= model.class_count() {
            return Err(Error::ShapeMismatch(format!(
                "label {} with {} classes",
                sample.label,
                model.class_count()
            )));
        }
        let trace = simulate(model, sample, mode, true);
        let (loss, d_counts) = cross_entropy(&trace.counts, sample.label);
        total_loss += loss;
        correct += (argmax(&trace.counts) == sample.label) as usize;
        backward(model, sample, &trace, &d_counts, &mut grads);
    }
    grads.scale(1.0 / batch.len() as f64);
    Ok(BatchResult {
        loss: total_loss / batch.len() as f64,
        gradients: grads,
        correct,
    })
}

fn backward(model: &SnnModel, sample: &SpikeSample, trace: &Trace, d_counts: &[f64], grads: &mut Gradients) {
    let slope = model.surrogate_slope;
    let depth = model.layers.len();
    // d loss / d u_post[t] per layer, carried backwards in time
    let mut carry: Vec<Vec<f64>> = model.layers.iter().map(|l| vec![0.0; l.outputs]).collect();

    for t in (0..sample.time_steps()).rev() {
        let mut d_spikes = d_counts.to_vec();
        for k in (0..depth).rev() {
            let layer = &model.layers[k];
            let u = &trace.membrane[t][k];
            let d_u: Vec<f64> = (0..layer.outputs)
                .map(|o| {
                    let sg = surrogate(u[o] - layer.threshold, slope);
                    carry[k][o] * (1.0 - layer.threshold * sg) + d_spikes[o] * sg
                })
                .collect();

            let g = &mut grads.layers[k];
            for (o, &du) in d_u.iter().enumerate() {
                if du == 0.0 {
                    continue;
                }
                g.bias[o] += du;
                let row = &mut g.weights[o * layer.inputs..(o + 1) * layer.inputs];
                if k == 0 {
                    for &i in &sample.steps[t] {
                        row[i as usize] += du;
                    }
                } else {
                    for (gw, s) in row.iter_mut().zip(&trace.spikes[t][k - 1]) {
                        *gw += du * s;
                    }
                }
            }
            if k > 0 {
                let mut below = vec![0.0; layer.inputs];
                for (o, &du) in d_u.iter().enumerate() {
                    if du == 0.0 {
                        continue;
                    }
                    let row = &layer.weights[o * layer.inputs..(o + 1) * layer.inputs];
                    for (b, w) in below.iter_mut().zip(row) {
                        *b += du * w;
                    }
                }
                d_spikes = below;
            }
            carry[k] = d_u;
        }
    }
}

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::snn::model::SnnModel;
use crate::snn::network::{argmax, forward, loss_and_grad, Mode, SpikeSample};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    /// Seeds the per-epoch shuffle.
    pub seed: u64,
    /// Presentation length used when encoding data for this run.
    pub time_steps: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.001,
            epochs: 20,
            batch_size: 20,
            seed: 0,
            time_steps: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Mean training loss over the epoch's batches.
    pub loss: f64,
    /// Training accuracy of the predictions made during the epoch.
    pub accuracy: f64,
}

/// Minibatch SGD with a constant learning rate.
pub fn train(model: &mut SnnModel, dataset: &[SpikeSample], config: &TrainConfig) -> Result<Vec<EpochRecord>> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if config.batch_size == 0 || config.batch_size > dataset.len() {
        return Err(Error::InvalidConfig(format!(
            "batch size {} with {} samples",
            config.batch_size,
            dataset.len()
        )));
    }
    if !(config.learning_rate.is_finite() && config.learning_rate > 0.0) {
        return Err(Error::InvalidConfig("learning rate must be positive".into()));
    }
    if let Some(bad) = dataset.iter().find(|s| s.label >= model.class_count()) {
        return Err(Error::ShapeMismatch(format!(
            "label {} with {} classes",
            bad.label,
            model.class_count()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    let mut history = Vec::with_capacity(config.epochs);
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        let mut loss_sum = 0.0;
        let mut correct = 0;
        for chunk in order.chunks(config.batch_size) {
            let batch: Vec<SpikeSample> = chunk.iter().map(|&i| dataset[i].clone()).collect();
            let result = loss_and_grad(model, &batch, Mode::Hard)?;
            loss_sum += result.loss * batch.len() as f64;
            correct += result.correct;
            model.apply_gradients(&result.gradients, config.learning_rate);
        }
        history.push(EpochRecord {
            epoch: epoch + 1,
            loss: loss_sum / dataset.len() as f64,
            accuracy: correct as f64 / dataset.len() as f64,
        });
    }
    Ok(history)
}

pub fn predict(model: &SnnModel, sample: &SpikeSample) -> Result<usize> {
    Ok(argmax(&forward(model, sample)?))
}

/// `matrix[label][prediction]`.
pub fn confusion_matrix(model: &SnnModel, dataset: &[SpikeSample]) -> Result<Vec<Vec<usize>>> {
    let n = model.class_count();
    let mut matrix = vec![vec![0; n]; n];
    for sample in dataset {
        if sample.label >= n {
            return Err(Error::ShapeMismatch(format!("label {} with {n} classes", sample.label)));
        }
        matrix[sample.label][predict(model, sample)?] += 1;
    }
    Ok(matrix)
}

pub fn evaluate(model: &SnnModel, dataset: &[SpikeSample]) -> Result<f64> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let matrix = confusion_matrix(model, dataset)?;
    let correct: usize = (0..matrix.len()).map(|k| matrix[k][k]).sum();
    Ok(correct as f64 / dataset.len() as f64)
}

pub fn history_csv(history: &[EpochRecord]) -> String {
    let mut out = String::from("epoch,loss,accuracy\n");
    for r in history {
        out.push_str(&format!("{},{:.6},{:.6}\n", r.epoch, r.loss, r.accuracy));
    }
    out
}

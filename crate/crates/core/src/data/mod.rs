//! Datasets, batching and the image/label carrier types.
//!
//! All datasets are held as raw `u8` pixel planes (channel-planar, exactly
//! as CIFAR stores them); batches materialize floating-point tensors on
//! demand so a full split never needs a float copy in memory.

mod cifar;
mod toy;

pub use cifar::{
    decode_cifar10_record, decode_cifar100_record, encode_cifar10_record, encode_cifar100_record,
    load_cifar10, load_cifar100, CIFAR100_RECORD_LEN, CIFAR10_RECORD_LEN,
};
pub use toy::{generate_toy, TOY_CLASS_COUNT, TOY_CLASS_NAMES, TOY_IMAGE_SIZE};

use ndarray::Array4;

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::scalar::Scalar;

pub const CIFAR10_CLASS_NAMES: [&str; 10] = [
    "airplane", "automobile", "bird", "cat", "deer", "dog", "frog", "horse", "ship", "truck",
];

/// Which dataset a split came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetName {
    Cifar10,
    Cifar100,
    Toy,
}

impl DatasetName {
    pub fn class_count(self) -> usize {
        match self {
            DatasetName::Cifar10 => 10,
            DatasetName::Cifar100 => 100,
            DatasetName::Toy => TOY_CLASS_COUNT,
        }
    }

    pub fn image_shape(self) -> (usize, usize, usize) {
        match self {
            DatasetName::Cifar10 | DatasetName::Cifar100 => (3, 32, 32),
            DatasetName::Toy => (3, TOY_IMAGE_SIZE, TOY_IMAGE_SIZE),
        }
    }

    /// Per-channel mean/std used by the `standardized` normalization mode.
    pub fn channel_stats(self) -> ([f64; 3], [f64; 3]) {
        match self {
            DatasetName::Cifar10 | DatasetName::Cifar100 => {
                ([0.4914, 0.4822, 0.4465], [0.2470, 0.2435, 0.2616])
            }
            DatasetName::Toy => ([0.5, 0.5, 0.5], [0.5, 0.5, 0.5]),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cifar10" => Ok(DatasetName::Cifar10),
            "cifar100" => Ok(DatasetName::Cifar100),
            "toy" => Ok(DatasetName::Toy),
            other => Err(Error::Config(format!("unknown dataset '{other}'"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DatasetName::Cifar10 => "cifar10",
            DatasetName::Cifar100 => "cifar100",
            DatasetName::Toy => "toy",
        }
    }

    pub fn class_name(self, label: u32) -> String {
        match self {
            DatasetName::Cifar10 => CIFAR10_CLASS_NAMES[label as usize].to_string(),
            DatasetName::Cifar100 => format!("class{label}"),
            DatasetName::Toy => TOY_CLASS_NAMES[label as usize].to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            other => Err(Error::Config(format!("unknown split '{other}'"))),
        }
    }
}

/// How raw pixel bytes map to model-space values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `byte / 255`, values in `[0, 1]`.
    UnitInterval,
    /// `(byte / 255 - mean_c) / std_c` with per-dataset channel stats.
    Standardized,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::UnitInterval => "unit_interval",
            Normalization::Standardized => "standardized",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "unit_interval" => Ok(Normalization::UnitInterval),
            "standardized" => Ok(Normalization::Standardized),
            other => Err(Error::Config(format!("unknown normalization '{other}'"))),
        }
    }
}

/// Identity of one loaded split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSource {
    pub name: DatasetName,
    pub class_count: usize,
    pub image_shape: (usize, usize, usize),
    pub split: Split,
}

impl DatasetSource {
    pub fn new(name: DatasetName, split: Split) -> Self {
        DatasetSource {
            name,
            class_count: name.class_count(),
            image_shape: name.image_shape(),
            split,
        }
    }
}

/// An in-memory split: raw channel-planar pixel bytes plus labels.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub source: DatasetSource,
    pixels: Vec<u8>,
    labels: Vec<u8>,
    /// CIFAR-100 coarse labels, retained as metadata.
    coarse_labels: Option<Vec<u8>>,
}

impl Dataset {
    pub fn from_raw(
        source: DatasetSource,
        pixels: Vec<u8>,
        labels: Vec<u8>,
        coarse_labels: Option<Vec<u8>>,
    ) -> Result<Self> {
        let (ch, h, w) = source.image_shape;
        let image_len = ch * h * w;
        if labels.is_empty() {
            return Err(Error::Corrupt("dataset contains no samples".into()));
        }
        if pixels.len() != labels.len() * image_len {
            return Err(Error::Corrupt(format!(
                "pixel buffer length {} does not match {} samples of {} bytes",
                pixels.len(),
                labels.len(),
                image_len
            )));
        }
        for (i, &l) in labels.iter().enumerate() {
            if (l as usize) >= source.class_count {
                return Err(Error::Corrupt(format!(
                    "label {} of sample {} outside [0, {})",
                    l, i, source.class_count
                )));
            }
        }
        Ok(Dataset {
            source,
            pixels,
            labels,
            coarse_labels,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn image_len(&self) -> usize {
        let (ch, h, w) = self.source.image_shape;
        ch * h * w
    }

    pub fn label(&self, index: usize) -> u32 {
        self.labels[index] as u32
    }

    pub fn coarse_label(&self, index: usize) -> Option<u32> {
        self.coarse_labels.as_ref().map(|c| c[index] as u32)
    }

    /// Raw channel-planar bytes of one image.
    pub fn image_bytes(&self, index: usize) -> &[u8] {
        let len = self.image_len();
        &self.pixels[index * len..(index + 1) * len]
    }

    pub fn class_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.source.class_count];
        for &l in &self.labels {
            hist[l as usize] += 1;
        }
        hist
    }

    /// Materialize the samples at `indices` as a float batch.
    pub fn make_batch<F: Scalar>(
        &self,
        indices: &[usize],
        normalization: Normalization,
    ) -> Result<(ImageBatch<F>, LabelBatch)> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("empty batch".into()));
        }
        let (ch, h, w) = self.source.image_shape;
        let (mean, std) = self.source.name.channel_stats();
        let mut data = Array4::<F>::zeros((indices.len(), ch, h, w));
        let mut labels = Vec::with_capacity(indices.len());
        for (bi, &si) in indices.iter().enumerate() {
            let bytes = self.image_bytes(si);
            for c in 0..ch {
                for y in 0..h {
                    for x in 0..w {
                        let raw = bytes[(c * h + y) * w + x] as f64 / 255.0;
                        let v = match normalization {
                            Normalization::UnitInterval => raw,
                            Normalization::Standardized => (raw - mean[c]) / std[c],
                        };
                        data[[bi, c, y, x]] = F::from_f64(v);
                    }
                }
            }
            labels.push(self.label(si));
        }
        let images = ImageBatch::new(data, normalization)?;
        let labels = LabelBatch::new(labels, self.source.class_count)?;
        Ok((images, labels))
    }
}

/// A batch of images in model space.
#[derive(Debug, Clone)]
pub struct ImageBatch<F: Scalar> {
    pub data: Array4<F>,
    pub normalization: Normalization,
}

impl<F: Scalar> ImageBatch<F> {
    pub fn new(data: Array4<F>, normalization: Normalization) -> Result<Self> {
        if data.shape()[0] == 0 {
            return Err(Error::Shape("image batch must hold at least one image".into()));
        }
        for &v in data.iter() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    term: "image batch".into(),
                });
            }
            if normalization == Normalization::UnitInterval
                && (v < F::zero() || v > F::one())
            {
                return Err(Error::Corrupt(format!(
                    "unit-interval image value {v} outside [0, 1]"
                )));
            }
        }
        Ok(ImageBatch {
            data,
            normalization,
        })
    }

    pub fn batch_size(&self) -> usize {
        self.data.shape()[0]
    }

    pub fn image_shape(&self) -> (usize, usize, usize) {
        let s = self.data.shape();
        (s[1], s[2], s[3])
    }
}

/// Class indices for a batch; one-hot form is materialized on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelBatch {
    pub labels: Vec<u32>,
    pub class_count: usize,
}

impl LabelBatch {
    pub fn new(labels: Vec<u32>, class_count: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Shape("label batch must hold at least one label".into()));
        }
        for (i, &l) in labels.iter().enumerate() {
            if l as usize >= class_count {
                return Err(Error::Corrupt(format!(
                    "label {l} of sample {i} outside [0, {class_count})"
                )));
            }
        }
        Ok(LabelBatch {
            labels,
            class_count,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn one_hot<F: Scalar>(&self) -> ndarray::Array2<F> {
        let mut out = ndarray::Array2::<F>::zeros((self.labels.len(), self.class_count));
        for (i, &l) in self.labels.iter().enumerate() {
            out[[i, l as usize]] = F::one();
        }
        out
    }
}

/// Deterministic shuffled batch iterator.
///
/// The emitted sequence is a pure function of `(dataset, batch_size,
/// shuffle_seed)`; the final partial batch is emitted as-is.
pub struct Batches<'a, F: Scalar> {
    dataset: &'a Dataset,
    order: Vec<usize>,
    batch_size: usize,
    cursor: usize,
    normalization: Normalization,
    _marker: std::marker::PhantomData<F>,
}

pub fn batches<F: Scalar>(
    dataset: &Dataset,
    batch_size: usize,
    shuffle_seed: u64,
    normalization: Normalization,
) -> Result<Batches<'_, F>> {
    if batch_size == 0 {
        return Err(Error::InvalidArgument("batch_size must be >= 1".into()));
    }
    Ok(Batches {
        dataset,
        order: shuffled_indices(dataset.len(), shuffle_seed),
        batch_size,
        cursor: 0,
        normalization,
        _marker: std::marker::PhantomData,
    })
}

/// The permutation used by [`batches`] for a given seed.
pub fn shuffled_indices(len: usize, shuffle_seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    let mut rng = Rng::seed_from_u64(shuffle_seed);
    rng.shuffle(&mut order);
    order
}

impl<'a, F: Scalar> Iterator for Batches<'a, F> {
    type Item = Result<(ImageBatch<F>, LabelBatch)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.cursor >= self.order.len() {
            return None;
        }
        let end = (self.cursor + self.batch_size).min(self.order.len());
        let idxs = &self.order[self.cursor..end];
        self.cursor = end;
        Some(self.dataset.make_batch(idxs, self.normalization))
    }
}

//! Transductive evaluation protocols.
//!
//! Classification: k-fold cross-validation, one fold hidden at a time, scored
//! by ROC-AUC on the hidden fold. Retrieval: one fold supplies the known
//! positives, the remaining folds are ranked and scored by precision at k.
//! Both run one-vs-rest over every class and average over folds, then classes.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CspError, Result};
use crate::hypergraph::Hypergraph;
use crate::labels::Labels;
use crate::metrics::{precision_at_k, roc_auc};
use crate::naive_bayes::{nb_fit, nb_score, DEFAULT_SMOOTHING};
use crate::propagation::{PropagationConfig, Propagator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    folds: Vec<u32>,
    k: usize,
    seed: u64,
}

impl FoldAssignment {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn fold_of(&self, node: usize) -> usize {
        self.folds[node] as usize
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.folds
    }

    pub fn members(&self, fold: usize) -> Vec<usize> {
        (0..self.folds.len()).filter(|&i| self.folds[i] as usize == fold).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.folds {
            sizes[f as usize] += 1;
        }
        sizes
    }
}

/// Seeded uniform permutation of `0..n` cut into `k` contiguous parts whose
/// sizes differ by at most one (the larger parts first).
pub fn assign_folds(n: usize, k: usize, seed: u64) -> Result<FoldAssignment> {
    if k < 2 {
        return Err(CspError::InvalidFolds(format!("k = {k}, need at least 2")));
    }
    if k > n {
        return Err(CspError::InvalidFolds(format!("k = {k} exceeds {n} nodes")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (base, extra) = (n / k, n % k);
    let mut folds = vec![0u32; n];
    let mut pos = 0;
    for f in 0..k {
        let size = base + usize::from(f < extra);
        for &node in &perm[pos..pos + size] {
            folds[node] = f as u32;
        }
        pos += size;
    }
    Ok(FoldAssignment { folds, k, seed })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent RNG seed for one `(class, fold)` cell.
pub fn cell_seed(seed: u64, class: usize, fold: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ class as u64) ^ fold as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Classification,
    Retrieval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Csp,
    NaiveBayes,
    /// Uniform random scores.
    Random,
}

impl std::str::FromStr for Method {
    type Err = CspError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csp" => Ok(Method::Csp),
            "naive-bayes" | "nb" => Ok(Method::NaiveBayes),
            "random" => Ok(Method::Random),
            other => Err(CspError::InvalidConfig(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub task: Task,
    pub method: Method,
    pub propagation: PropagationConfig,
    pub folds: usize,
    pub top_k: usize,
    pub seed: u64,
    pub smoothing: f64,
    /// Worker cap; `0` uses all cores. Does not affect results.
    #[serde(skip)]
    pub jobs: usize,
}

impl TaskSpec {
    pub fn new(task: Task, method: Method) -> Self {
        Self {
            task,
            method,
            propagation: PropagationConfig::default(),
            folds: 10,
            top_k: 100,
            seed: 42,
            smoothing: DEFAULT_SMOOTHING,
            jobs: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(CspError::InvalidFolds(format!("k = {}, need at least 2", self.folds)));
        }
        if self.top_k == 0 {
            return Err(CspError::InvalidConfig("top-k must be at least 1".into()));
        }
        if self.method == Method::Csp {
            self.propagation.validate()?;
        }
        Ok(())
    }

    pub fn metric_name(&self) -> &'static str {
        match self.task {
            Task::Classification => "roc_auc",
            Task::Retrieval => "precision_at_k",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub class: String,
    pub fold: usize,
    pub value: f64,
    /// Wall-clock time of fit + score. Not serialized to JSON so reports stay
    /// reproducible byte for byte.
    #[serde(skip)]
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCell {
    pub class: String,
    pub fold: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMean {
    pub class: String,
    pub folds: usize,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub dataset: String,
    pub metric: String,
    pub spec: TaskSpec,
    pub cells: Vec<CellResult>,
    pub skipped: Vec<SkippedCell>,
    /// Mean over the valid folds of each class.
    pub class_means: Vec<ClassMean>,
    /// Mean of `class_means`; `None` when every cell was skipped.
    pub mean_metric: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_auc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_precision_at_k: Option<f64>,
}

impl MetricReport {
    fn assemble(dataset: &str, spec: &TaskSpec, outcomes: Vec<((usize, usize, String), CellOutcome)>) -> Self {
        let mut cells = Vec::new();
        let mut skipped = Vec::new();
        let mut per_class: Vec<(String, Vec<f64>)> = Vec::new();
        for ((class_ix, fold, class), outcome) in outcomes {
            if per_class.len() <= class_ix {
                per_class.resize(class_ix + 1, (String::new(), Vec::new()));
            }
            per_class[class_ix].0 = class.clone();
            match outcome {
                CellOutcome::Scored { value, micros } => {
                    per_class[class_ix].1.push(value);
                    cells.push(CellResult { class, fold, value, micros });
                }
                CellOutcome::Skipped(reason) => skipped.push(SkippedCell { class, fold, reason }),
            }
        }
        let class_means: Vec<ClassMean> = per_class
            .into_iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(class, v)| ClassMean { class, folds: v.len(), mean: mean(&v) })
            .collect();
        let mean_metric =
            (!class_means.is_empty()).then(|| mean(&class_means.iter().map(|c| c.mean).collect::<Vec<_>>()));
        let (mean_auc, mean_precision_at_k) = match spec.task {
            Task::Classification => (mean_metric, None),
            Task::Retrieval => (None, mean_metric),
        };
        Self {
            dataset: dataset.to_owned(),
            metric: spec.metric_name().to_owned(),
            spec: spec.clone(),
            cells,
            skipped,
            class_means,
            mean_metric,
            mean_auc,
            mean_precision_at_k,
        }
    }

    /// Recompute the aggregates from `cells`, e.g. after deserialization.
    pub fn recomputed_mean(&self) -> Option<f64> {
        let mut classes: Vec<(&str, Vec<f64>)> = Vec::new();
        for c in &self.cells {
            match classes.iter_mut().find(|(name, _)| *name == c.class) {
                Some((_, v)) => v.push(c.value),
                None => classes.push((&c.class, vec![c.value])),
            }
        }
        (!classes.is_empty()).then(|| mean(&classes.iter().map(|(_, v)| mean(v)).collect::<Vec<_>>()))
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

enum CellOutcome {
    Scored { value: f64, micros: u64 },
    Skipped(String),
}

struct Context<'a> {
    h: &'a Hypergraph,
    spec: &'a TaskSpec,
    folds: FoldAssignment,
    binary: Vec<Vec<bool>>,
}

impl Context<'_> {
    /// Scores for `targets` given the known positives `x0_nodes` and, for Naive
    /// Bayes, the training set with labels.
    fn score(
        &self,
        rng: &mut ChaCha8Rng,
        positives: &[usize],
        nb_train: Option<(&[usize], &[bool])>,
        targets: &[usize],
    ) -> Result<Vec<f64>> {
        match self.spec.method {
            Method::Csp => {
                let mut x0 = vec![0.0; self.h.n_nodes()];
                for &p in positives {
                    x0[p] = 1.0;
                }
                let mut out = Vec::new();
                Propagator::new(self.h, self.spec.propagation)?.run_column(&x0, &mut out)?;
                Ok(targets.iter().map(|&t| out[t]).collect())
            }
            Method::NaiveBayes => {
                let (train, labels) = nb_train.expect("naive Bayes needs a training set");
                let model = nb_fit(self.h, train, labels, self.spec.smoothing)?;
                nb_score(&model, self.h, targets)
            }
            Method::Random => Ok(targets.iter().map(|_| rng.random::<f64>()).collect()),
        }
    }

    fn classification_cell(&self, class: usize, fold: usize) -> Result<CellOutcome> {
        let labels = &self.binary[class];
        let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(self.spec.seed, class, fold));
        let (test, train): (Vec<usize>, Vec<usize>) =
            (0..self.h.n_nodes()).partition(|&i| self.folds.fold_of(i) == fold);
        let test_labels: Vec<bool> = test.iter().map(|&i| labels[i]).collect();
        if !test_labels.iter().any(|&l| l) || test_labels.iter().all(|&l| l) {
            return Ok(CellOutcome::Skipped("test fold lacks one of the classes".into()));
        }
        let train_labels: Vec<bool> = train.iter().map(|&i| labels[i]).collect();
        if self.spec.method == Method::NaiveBayes && (!train_labels.iter().any(|&l| l) || train_labels.iter().all(|&l| l)) {
            return Ok(CellOutcome::Skipped("training folds lack one of the classes".into()));
        }
        let positives: Vec<usize> = train.iter().copied().filter(|&i| labels[i]).collect();

        let start = Instant::now();
        let scores = self.score(&mut rng, &positives, Some((&train, &train_labels)), &test)?;
        let micros = start.elapsed().as_micros() as u64;
        let value = roc_auc(&scores, &test_labels)?;
        Ok(CellOutcome::Scored { value, micros })
    }

    fn retrieval_cell(&self, class: usize, fold: usize) -> Result<CellOutcome> {
        let labels = &self.binary[class];
        let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(self.spec.seed, class, fold));
        let (train_fold, test): (Vec<usize>, Vec<usize>) =
            (0..self.h.n_nodes()).partition(|&i| self.folds.fold_of(i) == fold);
        let positives: Vec<usize> = train_fold.into_iter().filter(|&i| labels[i]).collect();
        if positives.is_empty() {
            return Ok(CellOutcome::Skipped("training fold has no positives".into()));
        }

        let start = Instant::now();
        let scores = if self.spec.method == Method::NaiveBayes {
            // pseudo-negatives: |test| nodes drawn from everything except the known positives
            let mut is_positive = vec![false; self.h.n_nodes()];
            for &p in &positives {
                is_positive[p] = true;
            }
            let pool: Vec<usize> = (0..self.h.n_nodes()).filter(|&i| !is_positive[i]).collect();
            let take = test.len().min(pool.len());
            let negatives = rand::seq::index::sample(&mut rng, pool.len(), take);
            let mut train = positives.clone();
            train.extend(negatives.iter().map(|ix| pool[ix]));
            let mut train_labels = vec![true; positives.len()];
            train_labels.resize(train.len(), false);
            self.score(&mut rng, &positives, Some((&train, &train_labels)), &test)?
        } else {
            self.score(&mut rng, &positives, None, &test)?
        };
        let micros = start.elapsed().as_micros() as u64;
        let test_labels: Vec<bool> = test.iter().map(|&i| labels[i]).collect();
        let value = precision_at_k(&scores, &test_labels, self.spec.top_k)?;
        Ok(CellOutcome::Scored { value, micros })
    }
}

fn run(h: &Hypergraph, labels: &Labels, spec: &TaskSpec, dataset: &str, expected: Task) -> Result<MetricReport> {
    if spec.task != expected {
        return Err(CspError::InvalidConfig(format!("task spec is for {:?}", spec.task)));
    }
    spec.validate()?;
    if labels.n_nodes() != h.n_nodes() {
        return Err(CspError::Shape(format!("{} labels for {} nodes", labels.n_nodes(), h.n_nodes())));
    }
    let folds = assign_folds(h.n_nodes(), spec.folds, spec.seed)?;
    let binary = (0..labels.n_classes()).map(|c| labels.binary(c)).collect();
    let ctx = Context { h, spec, folds, binary };

    let keys: Vec<(usize, usize)> =
        (0..labels.n_classes()).flat_map(|c| (0..spec.folds).map(move |f| (c, f))).collect();
    let work = || {
        keys.par_iter()
            .map(|&(c, f)| {
                let outcome = match spec.task {
                    Task::Classification => ctx.classification_cell(c, f),
                    Task::Retrieval => ctx.retrieval_cell(c, f),
                }?;
                Ok(((c, f, labels.class_name(c).to_owned()), outcome))
            })
            .collect::<Result<Vec<_>>>()
    };
    let outcomes = if spec.jobs == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
            .map_err(|e| CspError::InvalidConfig(e.to_string()))?
            .install(work)?
    };
    Ok(MetricReport::assemble(dataset, spec, outcomes))
}

/// k-fold one-vs-rest classification scored by ROC-AUC.
pub fn run_classification(h: &Hypergraph, labels: &Labels, spec: &TaskSpec, dataset: &str) -> Result<MetricReport> {
    run(h, labels, spec, dataset, Task::Classification)
}

/// Positive-only retrieval scored by precision at `spec.top_k`.
pub fn run_retrieval(h: &Hypergraph, labels: &Labels, spec: &TaskSpec, dataset: &str) -> Result<MetricReport> {
    run(h, labels, spec, dataset, Task::Retrieval)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_sizes() {
        let a = assign_folds(10, 10, 1).unwrap();
        assert_eq!(a.sizes(), vec![1; 10]);
        let a = assign_folds(10, 3, 1).unwrap();
        assert_eq!(a.sizes(), vec![4, 3, 3]);
        let mut sizes = assign_folds(1003, 10, 9).unwrap().sizes();
        sizes.sort_unstable();
        assert!(sizes[9] - sizes[0] <= 1);
    }

    #[test]
    fn folds_are_deterministic() {
        assert_eq!(assign_folds(500, 10, 7).unwrap(), assign_folds(500, 10, 7).unwrap());
        assert_ne!(assign_folds(500, 10, 7).unwrap(), assign_folds(500, 10, 8).unwrap());
    }

    #[test]
    fn invalid_folds() {
        assert!(matches!(assign_folds(10, 1, 0), Err(CspError::InvalidFolds(_))));
        assert!(matches!(assign_folds(3, 4, 0), Err(CspError::InvalidFolds(_))));
    }

    #[test]
    fn cell_seeds_differ() {
        let mut seen = std::collections::HashSet::new();
        for c in 0..20 {
            for f in 0..10 {
                assert!(seen.insert(cell_seed(42, c, f)));
            }
        }
    }

    #[test]
    fn wrong_task_rejected() {
        let h = Hypergraph::from_index_pairs(4, 1, &[(0, 0), (1, 0)]).unwrap();
        let labels = Labels::from_dense(&[0, 1, 0, 1]);
        let spec = TaskSpec::new(Task::Retrieval, Method::Csp);
        assert!(run_classification(&h, &labels, &spec, "t").is_err());
    }
}

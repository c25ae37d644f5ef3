mod common;

use csp_core::synth::{random_hypergraph, random_labels, separable_blocks};
use csp_core::{
    assign_folds, run_classification, run_retrieval, Labels, Method, PropagationConfig, Task, TaskSpec, Variant,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn folds_partition_the_nodes(n in 1usize..300, k in 2usize..12, seed: u64) {
        prop_assume!(k <= n);
        let folds = assign_folds(n, k, seed).unwrap();
        let mut seen = vec![0u32; n];
        for f in 0..k {
            for i in folds.members(f) {
                seen[i] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        let sizes = folds.sizes();
        let (lo, hi) = (*sizes.iter().min().unwrap(), *sizes.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
        let again = assign_folds(n, k, seed).unwrap();
        prop_assert_eq!(folds.as_slice(), again.as_slice());
    }
}

#[test]
fn too_many_folds_is_rejected() {
    assert!(assign_folds(3, 4, 0).is_err());
    assert!(assign_folds(3, 1, 0).is_err());
}

#[test]
fn fold_sizes_put_larger_chunks_first() {
    assert_eq!(assign_folds(10, 3, 7).unwrap().sizes(), vec![4, 3, 3]);
}

fn spec(task: Task, method: Method) -> TaskSpec {
    TaskSpec::new(task, method)
}

#[test]
fn classification_is_independent_of_worker_count() {
    let h = random_hypergraph(400, 120, 1500, 3).unwrap();
    let labels = random_labels(400, 3, 4);
    for method in [Method::Csp, Method::NaiveBayes, Method::Random] {
        let mut s = spec(Task::Classification, method);
        s.jobs = 1;
        let a = run_classification(&h, &labels, &s, "r").unwrap();
        s.jobs = 4;
        let b = run_classification(&h, &labels, &s, "r").unwrap();
        assert_eq!(a.cells.len(), b.cells.len());
        for (x, y) in a.cells.iter().zip(&b.cells) {
            assert_eq!((&x.class, x.fold, x.value.to_bits()), (&y.class, y.fold, y.value.to_bits()));
        }
        assert_eq!(a.mean_metric.map(f64::to_bits), b.mean_metric.map(f64::to_bits));
    }
}

#[test]
fn retrieval_is_independent_of_worker_count() {
    let h = random_hypergraph(400, 120, 1500, 5).unwrap();
    let labels = random_labels(400, 3, 6);
    for method in [Method::Csp, Method::NaiveBayes, Method::Random] {
        let mut s = spec(Task::Retrieval, method);
        s.top_k = 20;
        s.jobs = 1;
        let a = run_retrieval(&h, &labels, &s, "r").unwrap();
        s.jobs = 3;
        let b = run_retrieval(&h, &labels, &s, "r").unwrap();
        assert_eq!(a.mean_metric.map(f64::to_bits), b.mean_metric.map(f64::to_bits));
    }
}

#[test]
fn separable_blocks_classify_perfectly() {
    let (h, labels) = separable_blocks(60, 30, 5, 1);
    for method in [Method::Csp, Method::NaiveBayes] {
        let report = run_classification(&h, &labels, &spec(Task::Classification, method), "blocks").unwrap();
        assert!(report.cells.iter().all(|c| c.value == 1.0), "{method:?}");
        assert_eq!(report.mean_auc, Some(1.0));
    }
}

#[test]
fn separable_blocks_retrieve_perfectly() {
    let (h, labels) = separable_blocks(200, 60, 8, 2);
    let mut s = spec(Task::Retrieval, Method::Csp);
    s.top_k = 50;
    let report = run_retrieval(&h, &labels, &s, "blocks").unwrap();
    assert_eq!(report.mean_precision_at_k, Some(1.0));
}

#[test]
fn random_labels_give_chance_auc() {
    let h = random_hypergraph(2000, 600, 8000, 9).unwrap();
    let labels = random_labels(2000, 2, 10);
    for method in [Method::Csp, Method::NaiveBayes, Method::Random] {
        let v = run_classification(&h, &labels, &spec(Task::Classification, method), "r")
            .unwrap()
            .mean_auc
            .unwrap();
        assert!((v - 0.5).abs() <= 0.1, "{method:?}: {v}");
    }
}

#[test]
fn every_class_fold_cell_is_accounted_for() {
    let h = random_hypergraph(120, 40, 400, 11).unwrap();
    let labels = random_labels(120, 4, 12);
    let mut s = spec(Task::Classification, Method::Csp);
    s.folds = 5;
    let r = run_classification(&h, &labels, &s, "r").unwrap();
    assert_eq!(r.cells.len() + r.skipped.len(), 20);
    assert_eq!(r.class_means.len(), 4);
    assert!((r.mean_metric.unwrap() - r.recomputed_mean().unwrap()).abs() <= 1e-15);
}

#[test]
fn class_absent_from_test_fold_is_skipped() {
    // class "rare" has a single member, so only one of five folds sees it
    let h = random_hypergraph(50, 20, 200, 13).unwrap();
    let mut node_classes = vec![vec![0u32]; 50];
    node_classes[7] = vec![1];
    let labels = Labels::new(vec!["common".into(), "rare".into()], node_classes).unwrap();
    let mut s = spec(Task::Classification, Method::Csp);
    s.folds = 5;
    let r = run_classification(&h, &labels, &s, "r").unwrap();
    assert_eq!(r.skipped.len(), 8);
    assert!(r.skipped.iter().all(|c| !c.reason.is_empty()));
}

#[test]
fn all_degenerate_yields_no_mean() {
    let h = random_hypergraph(20, 5, 40, 1).unwrap();
    let labels = Labels::from_dense(&[0; 20]);
    let r = run_classification(&h, &labels, &spec(Task::Classification, Method::Csp), "r").unwrap();
    assert!(r.cells.is_empty());
    assert_eq!(r.mean_metric, None);
}

#[test]
fn variants_are_accepted_by_the_harness() {
    let (h, labels) = separable_blocks(30, 10, 4, 3);
    for v in Variant::ALL {
        let mut s = spec(Task::Classification, Method::Csp);
        s.propagation = PropagationConfig { variant: v, layers: 2, alpha: 0.3 };
        assert!(run_classification(&h, &labels, &s, "b").unwrap().mean_auc.unwrap() > 0.95);
    }
}

#[test]
fn invalid_spec_is_rejected() {
    let h = random_hypergraph(20, 5, 40, 1).unwrap();
    let labels = random_labels(20, 2, 1);
    let mut s = spec(Task::Classification, Method::Csp);
    s.propagation.layers = 0;
    assert!(run_classification(&h, &labels, &s, "r").is_err());
    let mut s = spec(Task::Retrieval, Method::Csp);
    s.top_k = 0;
    assert!(run_retrieval(&h, &labels, &s, "r").is_err());
}

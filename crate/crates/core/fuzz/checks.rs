#![allow(dead_code)]

// Shared by the fuzz targets and by the seed-replay test in ../tests.

use kslab::experiment::{parse_config, parse_samples, samples_csv, ExperimentConfig};
use kslab::graph::io::{parse_graph, write_graph};

pub fn graph_text(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph(text) {
        let back = parse_graph(&write_graph(&g)).expect("written graph must parse");
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edges(), g.edges());
    }
}

pub fn config_text(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pairs) = parse_config(text) else { return };
    for (k, v) in &pairs {
        assert!(!k.is_empty());
        assert_eq!(k.trim(), k);
        assert_eq!(v.trim(), v);
    }
    if let Ok(cfg) = ExperimentConfig::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))) {
        let _ = cfg.validate();
    }
}

pub fn samples_csv_text(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_samples(text) {
        let again = parse_samples(&samples_csv(&rows)).expect("written samples must parse");
        assert_eq!(again, rows);
    }
}

//! Timestamp deviation. In a directory of decoys refreshed together, an
//! mtime far from the pack suggests a file edited outside the management
//! tool. Deviation is measured from the corpus median (lower median for
//! even counts), in seconds.

/// Absolute deviation of each mtime from the median mtime.
pub fn timestamp_dev(mtimes: &[f64]) -> Vec<f64> {
    if mtimes.is_empty() {
        return Vec::new();
    }
    let mut sorted = mtimes.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite mtimes"));
    let median = sorted[(sorted.len() - 1) / 2];
    mtimes.iter().map(|m| (m - median).abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_mtimes_deviate_zero() {
        let devs = timestamp_dev(&[100.0; 6]);
        assert!(devs.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn a_one_hour_straggler_stands_out() {
        let devs = timestamp_dev(&[100.0, 100.0, 100.0, 100.0, 3700.0]);
        assert_eq!(devs[4], 3600.0);
        assert!(devs[..4].iter().all(|&d| d <= 1800.0));
    }

    #[test]
    fn even_counts_use_the_lower_median() {
        let devs = timestamp_dev(&[10.0, 20.0, 30.0, 40.0]);
        // Median is 20: deviations 10, 0, 10, 20.
        assert_eq!(devs, vec![10.0, 0.0, 10.0, 20.0]);
    }

    #[test]
    fn order_of_input_is_preserved() {
        let devs = timestamp_dev(&[3700.0, 100.0, 100.0]);
        assert_eq!(devs, vec![3600.0, 0.0, 0.0]);
    }
}

//! Number formatting for CSV and text artifacts.

/// Shortest decimal string that parses back to exactly `v`.
///
/// Non-finite values are written as `inf`, `-inf` and `NaN`, which
/// `str::parse::<f64>` also accepts.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_cases() {
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(1.0), "1.0");
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(-0.0), "-0.0");
    }

    proptest! {
        #[test]
        fn round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
            prop_assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}

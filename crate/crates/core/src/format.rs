/// Formats a real with 17 significant digits, which round-trips any `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [0.0, -1.5, std::f64::consts::PI, 1e-300, 123456.789] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}

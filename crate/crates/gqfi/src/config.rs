//! TOML sweep configuration. Keys mirror [`SweepSpec`]:
//!
//! ```toml
//! mode = "dsdv-fixed-alpha"
//! etas = [0.8, 0.9]
//! alpha2 = 10.0
//!
//! [range]
//! start = 20.5
//! stop = 1e4
//! points = 40
//! scale = "log"
//! ```

use std::path::Path;

use crate::sweep::SweepSpec;
use crate::{Error, Result};

pub fn parse_spec(text: &str, path: &Path) -> Result<SweepSpec> {
    toml::from_str(text).map_err(|e| Error::Config {
        path: path.to_path_buf(),
        message: e.message().to_owned(),
    })
}

pub fn load_spec(path: &Path) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_spec(&text, path)
}

pub fn to_toml(spec: &SweepSpec) -> String {
    toml::to_string(spec).expect("sweep specs always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{Scale, SweepMode, SweepRange};

    #[test]
    fn reads_the_documented_example() {
        let text = r#"
            mode = "dsdv-fixed-alpha"
            etas = [0.8, 0.9]
            alpha2 = 10.0

            [range]
            start = 20.5
            stop = 1e4
            points = 40
            scale = "log"
        "#;
        let spec = parse_spec(text, Path::new("x.toml")).unwrap();
        assert_eq!(spec.mode, SweepMode::DsdvFixedAlpha);
        assert_eq!(spec.etas(), vec![0.8, 0.9]);
        assert_eq!(spec.range(), SweepRange::log(20.5, 1e4, 40));
        assert_eq!(spec.n_bar, 100.0);
    }

    #[test]
    fn round_trip_and_errors() {
        let spec = SweepSpec {
            mode: SweepMode::Custom,
            variable: Some("alpha_b".into()),
            range: Some(SweepRange {
                scale: Scale::Linear,
                ..SweepRange::linear(0.0, 2.0, 5)
            }),
            ..Default::default()
        };
        assert_eq!(parse_spec(&to_toml(&spec), Path::new("y")).unwrap(), spec);
        let err = parse_spec("mode = \"fig7\"", Path::new("z.toml")).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
        assert!(parse_spec("colour = 1", Path::new("z.toml")).is_err());
        assert!(matches!(load_spec(Path::new("/nonexistent/q.toml")), Err(Error::Io { .. })));
    }
}

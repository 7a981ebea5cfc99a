//! JSON formats for matrices, channels, and probability vectors.
//!
//! Matrix format: `{"n": int, "re": [[...]], "im": [[...]]}` with row-major
//! `n×n` arrays; a missing `"im"` means all zeros. Channels are
//! `{"n_in": int, "n_out": int, "kraus": [matrix, ...]}`. Probability
//! vectors on the command line are comma-separated decimals or JSON arrays.

use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::hermitian::{ComplexMatrix, C64};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.nrows();
        let re = (0..n)
            .map(|r| (0..n).map(|c| m[(r, c)].re).collect())
            .collect();
        let im: Vec<Vec<f64>> = (0..n)
            .map(|r| (0..n).map(|c| m[(r, c)].im).collect())
            .collect();
        let all_zero = im.iter().flatten().all(|&x| x == 0.0);
        Self {
            n,
            re,
            im: if all_zero { None } else { Some(im) },
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.n;
        let check_shape = |rows: &Vec<Vec<f64>>, name: &str| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidInput(format!(
                    "'{name}' must be a {n}x{n} row-major array"
                )));
            }
            Ok(())
        };
        check_shape(&self.re, "re")?;
        if let Some(im) = &self.im {
            check_shape(im, "im")?;
        }
        let m = ComplexMatrix::from_fn(n, n, |r, c| {
            let re = self.re[r][c];
            let im = self.im.as_ref().map_or(0.0, |im| im[r][c]);
            C64::new(re, im)
        });
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    pub n_in: usize,
    pub n_out: usize,
    pub kraus: Vec<MatrixJson>,
}

impl ChannelJson {
    pub fn from_channel(ch: &KrausChannel) -> Self {
        Self {
            n_in: ch.n_in(),
            n_out: ch.n_out(),
            kraus: ch.kraus_ops().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    /// The square matrix format carries one `n`, so JSON channels are
    /// square; rectangular channels are constructed through the API.
    pub fn to_channel(&self) -> Result<KrausChannel> {
        if self.n_in != self.n_out {
            return Err(Error::InvalidInput(
                "JSON channels must have n_in == n_out".into(),
            ));
        }
        let kraus = self
            .kraus
            .iter()
            .map(|k| {
                if k.n != self.n_in {
                    return Err(Error::InvalidInput(format!(
                        "Kraus block is {}x{}, channel is {}-dimensional",
                        k.n, k.n, self.n_in
                    )));
                }
                k.to_matrix()
            })
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(kraus)
    }
}

pub fn parse_matrix_json(text: &str) -> Result<ComplexMatrix> {
    let parsed: MatrixJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("matrix JSON: {e}")))?;
    parsed.to_matrix()
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_matrix_json(&text)
}

/// Comma-separated decimals or a JSON array of numbers.
pub fn parse_real_vector(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim();
    let values: Vec<f64> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)
            .map_err(|e| Error::InvalidInput(format!("vector JSON: {e}")))?
    } else {
        trimmed
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("'{s}': {e}")))
            })
            .collect::<Result<Vec<f64>>>()?
    };
    if values.is_empty() {
        return Err(Error::InvalidInput("empty vector".into()));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{ginibre, random_unitary};

    #[test]
    fn matrix_roundtrip() {
        let m = ginibre(3, 3, 5);
        let json = MatrixJson::from_matrix(&m);
        let back = json.to_matrix().unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matrix_without_im_is_real() {
        let text = r#"{"n": 2, "re": [[0.5, 0.0], [0.0, 0.5]]}"#;
        let m = parse_matrix_json(text).unwrap();
        assert_eq!(m[(0, 0)], C64::new(0.5, 0.0));
        assert_eq!(m[(0, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn matrix_shape_errors() {
        let text = r#"{"n": 2, "re": [[0.5, 0.0]]}"#;
        assert!(parse_matrix_json(text).is_err());
        let text = r#"{"n": 2, "re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0.0], [0.0]]}"#;
        assert!(parse_matrix_json(text).is_err());
        assert!(parse_matrix_json("not json").is_err());
    }

    #[test]
    fn channel_roundtrip() {
        let u = random_unitary(2, 3);
        let ch = KrausChannel::unitary(&u).unwrap();
        let json = ChannelJson::from_channel(&ch);
        let back = json.to_channel().unwrap();
        assert_eq!(back.kraus_ops()[0], ch.kraus_ops()[0]);
        let mut bad = ChannelJson::from_channel(&ch);
        bad.n_out = 3;
        assert!(bad.to_channel().is_err());
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(parse_real_vector("0.5, 0.25,0.25").unwrap(), vec![0.5, 0.25, 0.25]);
        assert_eq!(parse_real_vector("[0.5, 0.5]").unwrap(), vec![0.5, 0.5]);
        assert!(parse_real_vector("").is_err());
        assert!(parse_real_vector("a,b").is_err());
    }
}

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, Rational};

use super::QapInstance;

/// A parsed QAPLIB problem. `symmetrized` is set when an asymmetric input
/// matrix was replaced by `(M + M^T) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QaplibInstance {
    pub qap: QapInstance,
    pub symmetrized: bool,
}

/// Parses QAPLIB text: `n`, the flow matrix, the distance matrix and an
/// optional linear-cost matrix, all whitespace separated.
pub fn parse_qaplib(text: &str) -> Result<QaplibInstance> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let Some(first) = tokens.first() else {
        return Err(Error::parse("token 1", "empty input"));
    };
    let n: usize = first
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::parse("token 1", format!("expected a positive size, found {first:?}")))?;
    let nn = n * n;
    let body = tokens.len() - 1;
    if body != 2 * nn && body != 3 * nn {
        return Err(Error::parse(
            format!("token {}", tokens.len()),
            format!("expected {} or {} numbers after n = {n}, found {body}", 2 * nn, 3 * nn),
        ));
    }
    let mut values = Vec::with_capacity(body);
    for (k, tok) in tokens.iter().enumerate().skip(1) {
        let v = parse_rational(tok)
            .ok_or_else(|| Error::parse(format!("token {}", k + 1), format!("not a number: {tok:?}")))?;
        values.push(v);
    }
    let matrix = |idx: usize| -> Vec<Vec<Rational>> {
        values[idx * nn..(idx + 1) * nn].chunks(n).map(|r| r.to_vec()).collect()
    };
    let mut symmetrized = false;
    let mut sym = |mut m: Vec<Vec<Rational>>| {
        for i in 0..n {
            for k in 0..i {
                if m[i][k] != m[k][i] {
                    symmetrized = true;
                    let avg = (&m[i][k] + &m[k][i]) / int(2);
                    m[i][k] = avg.clone();
                    m[k][i] = avg;
                }
            }
        }
        m
    };
    let a = sym(matrix(0));
    let b = sym(matrix(1));
    let c = (body == 3 * nn).then(|| matrix(2));
    Ok(QaplibInstance { qap: QapInstance::new(a, b, c)?, symmetrized })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn small_instance() {
        let p = parse_qaplib("2  0 1 1 0  0 2 2 0").unwrap();
        assert!(!p.symmetrized);
        assert_eq!(p.qap.n, 2);
        assert_eq!(p.qap.b[0][1], int(2));
        assert_eq!(p.qap.c, vec![vec![int(0); 2]; 2]);
    }

    #[test]
    fn linear_matrix() {
        let p = parse_qaplib("1\n0\n0\n7\n").unwrap();
        assert_eq!(p.qap.c[0][0], int(7));
    }

    #[test]
    fn asymmetric_is_symmetrized() {
        let p = parse_qaplib("2 0 1 2 0 0 1 1 0").unwrap();
        assert!(p.symmetrized);
        assert_eq!(p.qap.a[0][1], ratio(3, 2));
        assert_eq!(p.qap.a[1][0], ratio(3, 2));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_qaplib("2 0 1 1 0 0 2 2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, "token 8"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_qaplib("2 0 1 x 0 0 2 2 0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, "token 4"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_qaplib("").is_err());
        assert!(parse_qaplib("0").is_err());
    }
}

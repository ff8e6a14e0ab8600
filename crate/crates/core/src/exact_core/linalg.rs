use super::scalar::Scalar;

/// Determinant of a square matrix by fraction-free Bareiss elimination.
///
/// Rows are swapped when a pivot vanishes. The empty matrix has determinant 1.
pub fn determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::ratio;
    use crate::Rational;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| ratio(x, 1)).collect())
            .collect()
    }

    fn cofactor(m: &[Vec<Rational>]) -> Rational {
        if m.is_empty() {
            return ratio(1, 1);
        }
        let mut acc = ratio(0, 1);
        for (c, x) in m[0].iter().enumerate() {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = x * cofactor(&minor);
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(determinant::<Rational>(&[]), ratio(1, 1));
    }

    #[test]
    fn needs_pivot_swap() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), ratio(-1, 1));
    }

    #[test]
    fn singular() {
        let m = mat(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 1]]);
        assert_eq!(determinant(&m), ratio(0, 1));
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let m = mat(&[&[2, -1, 0, 3], &[0, 0, 4, 1], &[5, 2, -2, 0], &[1, 1, 1, 1]]);
        assert_eq!(determinant(&m), cofactor(&m));
        let h = vec![
            vec![ratio(1, 1), ratio(3, 2), ratio(5, 2)],
            vec![ratio(3, 2), ratio(5, 2), ratio(9, 2)],
            vec![ratio(5, 2), ratio(9, 2), ratio(17, 2)],
        ];
        assert_eq!(determinant(&h), cofactor(&h));
    }
}

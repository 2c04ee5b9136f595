//! Sorted index sets as exterior monomials `e_S = e_{s_1} ^ ... ^ e_{s_k}`.

/// `e_a ^ e_b` as `(sign, sorted union)`, or `None` when `a` and `b` meet.
pub fn wedge(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut inversions = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, out))
}

/// Boundary `de_S = sum_k (-1)^k e_{S \ s_k}` as `(sign, subset)` terms.
pub fn boundary(s: &[usize]) -> Vec<(i32, Vec<usize>)> {
    (0..s.len())
        .map(|k| {
            let mut t = s.to_vec();
            t.remove(k);
            (if k % 2 == 0 { 1 } else { -1 }, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(&[0], &[1]), Some((1, vec![0, 1])));
        assert_eq!(wedge(&[1], &[0]), Some((-1, vec![0, 1])));
        assert_eq!(wedge(&[2], &[0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(wedge(&[1, 3], &[0, 2]), Some((-1, vec![0, 1, 2, 3])));
        assert_eq!(wedge(&[1], &[1, 2]), None);
    }

    #[test]
    fn boundary_of_triple() {
        let d = boundary(&[0, 1, 2]);
        assert_eq!(d, vec![(1, vec![1, 2]), (-1, vec![0, 2]), (1, vec![0, 1])]);
    }
}

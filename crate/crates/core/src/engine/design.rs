//! `K_p`-decompositions of `K_{p^j}` from the lines of the affine space `AG(j, p)`.

use super::EngineError;

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Blocks of a `K_t`-decomposition of `K_s` on `0..s`. Requires `t` prime and `s = t^j`.
pub fn clique_design(s: usize, t: usize) -> Result<Vec<Vec<usize>>, EngineError> {
    if !is_prime(t) {
        return Err(EngineError::Config(format!("block size {t} is not prime")));
    }
    let mut j = 0;
    let mut pow = 1;
    while pow < s {
        pow *= t;
        j += 1;
    }
    if pow != s || j == 0 {
        return Err(EngineError::Config(format!("{s} is not a positive power of {t}")));
    }
    let digits = |x: usize| -> Vec<usize> {
        let mut d = Vec::with_capacity(j);
        let mut x = x;
        for _ in 0..j {
            d.push(x % t);
            x /= t;
        }
        d
    };
    let point = |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * t + x);
    let mut blocks = Vec::new();
    for dir in 1..s {
        let dv = digits(dir);
        // one representative per direction: highest nonzero digit equal to 1
        if dv.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut seen = vec![false; s];
        for a in 0..s {
            if seen[a] {
                continue;
            }
            let av = digits(a);
            let line: Vec<usize> = (0..t)
                .map(|lambda| {
                    let pv: Vec<usize> = av.iter().zip(&dv).map(|(&x, &y)| (x + lambda * y) % t).collect();
                    point(&pv)
                })
                .collect();
            for &p in &line {
                seen[p] = true;
            }
            let mut line = line;
            line.sort_unstable();
            blocks.push(line);
        }
    }
    blocks.sort();
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(s: usize, t: usize) {
        let blocks = clique_design(s, t).unwrap();
        assert_eq!(blocks.len(), s * (s - 1) / (t * (t - 1)));
        let mut hit = vec![vec![0; s]; s];
        for b in &blocks {
            assert_eq!(b.len(), t);
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    hit[x][y] += 1;
                }
            }
        }
        for x in 0..s {
            for y in x + 1..s {
                assert_eq!(hit[x][y], 1, "pair {x},{y}");
            }
        }
    }

    #[test]
    fn affine_designs() {
        check(9, 3);
        check(3, 3);
        check(8, 2);
        check(25, 5);
        check(27, 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(clique_design(8, 4).is_err());
        assert!(clique_design(10, 3).is_err());
        assert!(clique_design(1, 3).is_err());
    }
}

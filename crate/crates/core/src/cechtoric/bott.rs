//! Closed forms on ℙⁿ, independent of the Čech engine.

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, t| acc * (n - t) as u64 / (t + 1) as u64)
}

/// `h^0(ℙⁿ, Ω^p(k))`.
fn h0(n: i64, p: i64, k: i64) -> u64 {
    if p == 0 && k == 0 {
        1
    } else if k > p {
        binomial(k + n - p, k) * binomial(k - 1, p)
    } else {
        0
    }
}

/// `h^j(ℙⁿ, Ω^i(m))` for `j = 0..=n` by Bott's formula.
pub fn bott_oracle(n: usize, i: usize, m: i64) -> Vec<usize> {
    assert!(i <= n, "form degree exceeds dimension");
    let (n, p) = (n as i64, i as i64);
    (0..=n)
        .map(|j| {
            let h = if j == 0 {
                h0(n, p, m)
            } else if j == n {
                // Serre duality: Ω^p(m)^∨ ⊗ Ω^n = Ω^{n-p}(-m)
                h0(n, n - p, -m)
            } else {
                u64::from(j == p && m == 0)
            };
            h as usize
        })
        .collect()
}

/// `h^j(ℙⁿ, O(m))`: `C(n+m, n)` in degree 0, `C(−m−1, n)` in degree n.
pub fn line_bundle_closed_form(n: usize, m: i64) -> Vec<usize> {
    let mut h = vec![0; n + 1];
    h[0] += binomial(n as i64 + m, n as i64) as usize;
    h[n] += binomial(-m - 1, n as i64) as usize;
    h
}

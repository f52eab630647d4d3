//! Cantor pairing `⟨x, y⟩ = (x+y)(x+y+1)/2 + y` and its left-folded tuples.

/// `None` on `u64` overflow.
pub fn cantor_pair(x: u64, y: u64) -> Option<u64> {
    let s = x.checked_add(y)?;
    let t = (s as u128) * (s as u128 + 1) / 2 + y as u128;
    u64::try_from(t).ok()
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    // largest s with s(s+1)/2 <= z
    let z128 = z as u128;
    let mut s = (((8 * z128 + 1) as f64).sqrt() as u128).saturating_sub(1) / 2;
    while (s + 1) * (s + 2) / 2 <= z128 {
        s += 1;
    }
    while s * (s + 1) / 2 > z128 {
        s -= 1;
    }
    let y = z128 - s * (s + 1) / 2;
    let x = s - y;
    (x as u64, y as u64)
}

/// `⟨x₁, …, xₙ⟩ = ⟨⟨x₁, …, xₙ₋₁⟩, xₙ⟩`, with `⟨x₁⟩ = x₁`. `None` for an empty
/// tuple or on overflow.
pub fn cantor_tuple(xs: &[u64]) -> Option<u64> {
    let (&first, rest) = xs.split_first()?;
    rest.iter().try_fold(first, |acc, &x| cantor_pair(acc, x))
}

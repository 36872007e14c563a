//! Exact non-negative rationals for size thresholds.
//!
//! Bound arithmetic in the certificate extractors compares quantities like
//! `|A| >= n / (2(k+1)(k+2))` exactly; this type keeps them as reduced
//! fractions and compares by cross-multiplication in 128 bits. No floating
//! point is involved anywhere.

/// A non-negative rational `num/den` in lowest terms, `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num.max(1), den).max(1);
        let g = if num == 0 { den } else { g };
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn from_int(v: u64) -> Self {
        Ratio { num: v, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `self <= value` for an integer `value`, exact.
    pub fn le_int(&self, value: u64) -> bool {
        (self.num as u128) <= (value as u128) * (self.den as u128)
    }

    /// `value >= self`, exact.
    pub fn int_ge(value: u64, rhs: Ratio) -> bool {
        rhs.le_int(value)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s.split_once('/').ok_or_else(|| format!("bad rational: {s}"))?;
        let num: u64 = n.parse().map_err(|_| format!("bad numerator: {n}"))?;
        let den: u64 = d.parse().map_err(|_| format!("bad denominator: {d}"))?;
        if den == 0 {
            return Err("zero denominator".into());
        }
        Ok(Ratio::new(num, den))
    }
}

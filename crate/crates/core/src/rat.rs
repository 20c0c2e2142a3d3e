use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact rational number used for every degree and slope.
pub type Rational = Ratio<i128>;

/// Renders a rational as `"p/q"`, or `"p"` when it is an integer.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"` or `"p"`; `None` on malformed input or a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().ok()?;
            let q: i128 = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<i128>().ok().map(Rational::from_integer),
    }
}

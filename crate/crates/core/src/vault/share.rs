//! Two-of-two secret sharing over GF(p). The secret s is the x-intercept of
//! a uniformly random non-horizontal, non-vertical line through (s, 0); each
//! share is one point on that line. Either point alone reveals nothing about
//! s beyond s != share.x, because for every other candidate intercept there
//! is a line through the held point and that intercept.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::field::{inv_mod, is_prime, mul_mod, sub_mod};
use crate::{Error, Result};

/// Default field modulus: the Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// One point of a 2-of-2 sharing, rendered as `x:y:p` in decimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Share {
    pub x: u64,
    pub y: u64,
    pub prime: u64,
}

impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.x, self.y, self.prime)
    }
}

impl FromStr for Share {
    type Err = Error;

    fn from_str(s: &str) -> Result<Share> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [x, y, p] = parts[..] else {
            return Err(Error::ShareFormat(s.to_string()));
        };
        let parse = |field: &str| {
            field
                .parse::<u64>()
                .map_err(|_| Error::ShareFormat(s.to_string()))
        };
        let share = Share { x: parse(x)?, y: parse(y)?, prime: parse(p)? };
        validate_prime(share.prime)?;
        if share.x >= share.prime || share.y >= share.prime {
            return Err(Error::ShareFormat(s.to_string()));
        }
        Ok(share)
    }
}

pub(super) fn validate_prime(p: u64) -> Result<()> {
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Splits `secret` into two shares, neither of which sits on the x-axis or
/// above the intercept itself.
pub fn split_secret(secret: u64, prime: u64, rng: &mut impl Rng) -> Result<(Share, Share)> {
    validate_prime(prime)?;
    if secret >= prime {
        return Err(Error::PrimeTooSmall(prime));
    }
    let slope = rng.gen_range(1..prime);
    let mut draw_x = |taken: &[u64]| loop {
        let x = rng.gen_range(0..prime);
        if x != secret && !taken.contains(&x) {
            return x;
        }
    };
    let xa = draw_x(&[]);
    let xb = draw_x(&[xa]);
    let at = |x: u64| Share { x, y: mul_mod(slope, sub_mod(x, secret, prime), prime), prime };
    Ok((at(xa), at(xb)))
}

/// Recovers the x-intercept of the line through two shares.
pub fn recover_secret(a: Share, b: Share) -> Result<u64> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch);
    }
    let p = a.prime;
    validate_prime(p)?;
    if a.x == b.x {
        return Err(Error::DegenerateShares);
    }
    if a.y == b.y {
        return Err(Error::NoXIntercept);
    }
    let slope = mul_mod(sub_mod(b.y, a.y, p), inv_mod(sub_mod(b.x, a.x, p), p), p);
    // 0 = a.y + slope * (s - a.x)  =>  s = a.x - a.y / slope
    Ok(sub_mod(a.x, mul_mod(a.y, inv_mod(slope, p), p), p))
}

/// Issues a fresh counterpart share so that (result, user) recovers
/// `new_secret`, leaving the user's share bytes untouched.
pub fn rebind_system_share(user: Share, new_secret: u64, rng: &mut impl Rng) -> Result<Share> {
    let p = user.prime;
    validate_prime(p)?;
    if new_secret >= p {
        return Err(Error::PrimeTooSmall(p));
    }
    if user.x == new_secret {
        return Err(Error::DegenerateShares);
    }
    if user.y == 0 {
        return Err(Error::NoXIntercept);
    }
    let slope = mul_mod(user.y, inv_mod(sub_mod(user.x, new_secret, p), p), p);
    let x = loop {
        let x = rng.gen_range(0..p);
        if x != user.x && x != new_secret {
            break x;
        }
    };
    let y = mul_mod(slope, sub_mod(x, new_secret, p), p);
    Ok(Share { x, y, prime: p })
}

#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wprep::{ratio, Coeff, Expo, Series};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in -5..=5, denominator in 1..=3.
pub fn coeff<R: Rng>(rng: &mut R) -> Coeff {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_coeff<R: Rng>(rng: &mut R) -> Coeff {
    loop {
        let c = coeff(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random exponent of total degree in `lo..=hi`.
pub fn expo<R: Rng>(rng: &mut R, nvars: usize, lo: u32, hi: u32) -> Expo {
    let deg = rng.gen_range(lo..=hi);
    let mut e = vec![0u32; nvars];
    for _ in 0..deg {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Expo::new(e)
}

/// Sparse series with `nterms` random terms of degree `lo..=hi`, keeping
/// only those accepted by `keep`.
pub fn sparse<R: Rng>(
    rng: &mut R,
    nvars: usize,
    trunc: u32,
    nterms: usize,
    (lo, hi): (u32, u32),
    keep: impl Fn(&Expo) -> bool,
) -> Series {
    let terms: Vec<(Expo, Coeff)> = (0..nterms)
        .map(|_| (expo(rng, nvars, lo, hi), coeff(rng)))
        .filter(|(e, _)| keep(e))
        .collect();
    Series::from_terms(nvars, trunc, terms).unwrap()
}

/// `c * x_var^d` plus random terms that either involve another variable or
/// have `x_var`-degree above `d`, so the order in `x_var` is exactly `d`.
pub fn of_order<R: Rng>(rng: &mut R, nvars: usize, trunc: u32, var: usize, d: u32) -> Series {
    let slot = var - 1;
    let lead = Series::from_terms(
        nvars,
        trunc,
        [(Expo::zero(nvars).with(slot, d), nonzero_coeff(rng))],
    )
    .unwrap();
    let rest = sparse(rng, nvars, trunc, 8, (1, 5), |e| {
        e.total_degree() != e.get(slot) || e.get(slot) > d
    });
    &lead + &rest
}

/// Keeps only the terms even in `x_var`.
pub fn even_part(s: &Series, var: usize) -> Series {
    wprep::even_odd_split(s, var).unwrap().0
}

/// `x_var^2 + x_var^3` plus random terms that vanish on the `x_var` axis or
/// have `x_var`-degree at least 4.
pub fn lemma_input<R: Rng>(rng: &mut R, nvars: usize, trunc: u32, var: usize) -> Series {
    let slot = var - 1;
    let axis = Series::from_terms(
        nvars,
        trunc,
        [
            (Expo::zero(nvars).with(slot, 2), ratio(1, 1)),
            (Expo::zero(nvars).with(slot, 3), ratio(1, 1)),
        ],
    )
    .unwrap();
    let rest = sparse(rng, nvars, trunc, 8, (1, 5), |e| {
        e.total_degree() != e.get(slot) || e.get(slot) >= 4
    });
    &axis + &rest
}

/// `x^2 + x^3` plus random higher terms.
pub fn normalized_h<R: Rng>(rng: &mut R, trunc: u32) -> Series {
    let mut terms = vec![(vec![2], ratio(1, 1)), (vec![3], ratio(1, 1))];
    for k in 4..=trunc {
        if rng.gen_bool(0.6) {
            terms.push((vec![k], coeff(rng)));
        }
    }
    Series::from_terms(1, trunc, terms).unwrap()
}

/// `f(0) = 0` with a nonzero coefficient of `x_var`.
pub fn implicit_input<R: Rng>(rng: &mut R, nvars: usize, trunc: u32, var: usize) -> Series {
    let lin = Series::from_terms(
        nvars,
        trunc,
        [(Expo::unit(nvars, var - 1), nonzero_coeff(rng))],
    )
    .unwrap();
    let rest = sparse(rng, nvars, trunc, 8, (1, 4), |e| *e != Expo::unit(nvars, var - 1));
    &lin + &rest
}

//! Lower bounds on the independence entropy of the recoded shift.

use num_bigint::BigUint;

use crate::alphabet::{Sym, Word};
use crate::boost::gamma::GammaFamily;
use crate::boost::recoder::Recoder;
use crate::code::PeriodicPoint;
use crate::entropy::ln_big;
use crate::error::{Error, Result};

/// The choice word `{W_K} {∗}^{η-k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `|W_K| = |Γ_K|`, the size of the leading choice symbol.
    pub head_size: BigUint,
    /// Names of the members of the leading symbol, when enumerated.
    pub members: Option<Vec<String>>,
    pub stars: usize,
}

impl Witness {
    pub fn len(&self) -> usize {
        1 + self.stars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of fillings: the stars contribute a factor of one each.
    pub fn filling_count(&self) -> BigUint {
        self.head_size.clone()
    }

    pub fn encode(&self) -> Vec<String> {
        let head = match &self.members {
            Some(m) => format!("{{{}}}", m.join(",")),
            None => format!("W_K[{}]", self.head_size),
        };
        std::iter::once(head)
            .chain(std::iter::repeat_n("{*}".to_string(), self.stars))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub reps: usize,
    pub eta: usize,
    /// `ln|Γ_K| / η_K`.
    pub value: f64,
    /// `ln|Υ| / (ℓ + f + r + k)`, the value as `K → ∞`.
    pub limit: f64,
    /// `(1-ε) ln λ` for automatic plans.
    pub target: Option<f64>,
    pub witness: Witness,
}

impl Certificate {
    pub fn meets_target(&self) -> Option<bool> {
        self.target.map(|t| self.limit >= t)
    }
}

/// Certificate for a family; member names are filled in from the recoder
/// when one is given.
pub fn certificate(family: &GammaFamily, recoder: Option<&Recoder>) -> Certificate {
    let p = &family.plan;
    let ln_u = ln_big(&p.upsilon.count);
    let members = recoder.zip(family.words.as_ref()).map(|(rec, words)| {
        (0..words.len())
            .map(|i| rec.alphabet.name(rec.word_symbol(i)).to_string())
            .collect()
    });
    Certificate {
        reps: family.reps,
        eta: family.eta,
        value: family.log_size / family.eta as f64,
        limit: ln_u / p.period() as f64,
        target: p.target(),
        witness: Witness {
            head_size: family.size.clone(),
            members,
            stars: family.eta - p.k - 1,
        },
    }
}

/// Evidence that the witness is a block of the recoded multi-choice shift:
/// the images of the points `(w · pad)^∞`, `w ∈ Γ_K`, agree everywhere
/// except at coordinate 0, where they read `w̄`. Filling coordinate 0 with
/// all of `W_K` therefore stays inside the image.
#[derive(Clone, Debug)]
pub struct Realization {
    pub pad: Word,
    /// The common image with coordinate 0 replaced by the star.
    pub context: Vec<Sym>,
}

pub fn realize_witness(family: &GammaFamily, recoder: &Recoder) -> Result<Realization> {
    let words = family.words()?;
    let p = &family.plan;
    let g = &p.core.graph;
    let (pad, _) = g
        .shortest_labeled_path(p.marker.c_end, |v| v == p.marker.m_start)
        .ok_or_else(|| Error::Internal("core is not irreducible".into()))?;
    let stars = family.eta - p.k - 1;
    let mut context: Option<Vec<Sym>> = None;
    for (i, w) in words.iter().enumerate() {
        let x = PeriodicPoint::new(Word::concat(&[w, &pad]));
        if !g.presents_periodic(x.cycle()) {
            return Err(Error::Internal("padded family word is not periodic in X".into()));
        }
        let y = recoder.forward.apply(&x)?;
        let c = y.cycle();
        if c[0] != recoder.word_symbol(i) || c[1..=stars].iter().any(|&s| s != recoder.star) {
            return Err(Error::Internal("image does not show the witness pattern".into()));
        }
        let mut rest = c.0.clone();
        rest[0] = recoder.star;
        match &context {
            None => context = Some(rest),
            Some(prev) if *prev == rest => {}
            Some(_) => return Err(Error::Internal("images differ outside the witness".into())),
        }
        if recoder.inverse.apply(&y)? != x {
            return Err(Error::Internal("inverse does not recover the padded word".into()));
        }
    }
    Ok(Realization {
        pad: Word(pad),
        context: context.unwrap_or_default(),
    })
}

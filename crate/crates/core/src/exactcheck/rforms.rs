use num_rational::BigRational;
use num_traits::One;

use super::lemma::{binomial, c_coefficient};
use super::{rational, ExactCheck};
use crate::configspace::{permutations, FormalSum};
use crate::error::{Error, Result};

/// `dlog f_j` (holomorphic) or `dbar log f_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OneForm {
    Hol(u8),
    AntiHol(u8),
}

impl OneForm {
    fn conj(self) -> Self {
        match self {
            OneForm::Hol(j) => OneForm::AntiHol(j),
            OneForm::AntiHol(j) => OneForm::Hol(j),
        }
    }
}

/// `log|f_log|` times a wedge of one-forms in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormMonomial {
    pub log: u8,
    pub forms: Vec<OneForm>,
}

pub type FormSum = FormalSum<FormMonomial>;

/// Sorts the wedge factors, returning the sign of the sort, or `None` when
/// a factor repeats.
fn canonical(mut forms: Vec<OneForm>) -> Option<(Vec<OneForm>, bool)> {
    let mut odd = false;
    for i in 1..forms.len() {
        let mut j = i;
        while j > 0 && forms[j - 1] > forms[j] {
            forms.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if forms.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((forms, odd))
}

/// `coeff * log|f_log| * factor_1 ^ ... ^ factor_k` where each factor is a
/// linear combination of one-forms, expanded into monomials.
pub fn wedge(coeff: &BigRational, log: u8, factors: &[Vec<(OneForm, BigRational)>]) -> FormSum {
    let mut partial: Vec<(Vec<OneForm>, BigRational)> = vec![(Vec::new(), coeff.clone())];
    for f in factors {
        partial = partial
            .iter()
            .flat_map(|(forms, c)| {
                f.iter().map(move |(w, k)| {
                    let mut next = forms.clone();
                    next.push(*w);
                    (next, c * k)
                })
            })
            .collect();
    }
    let mut out = FormSum::new();
    for (forms, c) in partial {
        if let Some((sorted, odd)) = canonical(forms) {
            out.add_term(FormMonomial { log, forms: sorted }, if odd { -c } else { c });
        }
    }
    out
}

/// Complex conjugation: swaps holomorphic and antiholomorphic factors.
pub fn conjugate(s: &FormSum) -> FormSum {
    s.map_linear(|m| {
        let forms = m.forms.iter().map(|w| w.conj()).collect();
        match canonical(forms) {
            Some((sorted, odd)) => FormSum::single(
                FormMonomial {
                    log: m.log,
                    forms: sorted,
                },
                if odd { -BigRational::one() } else { BigRational::one() },
            ),
            None => FormSum::new(),
        }
    })
}

/// Projection onto the `R(m-1)` part: `(X + (-1)^{m-1} conj X) / 2`.
pub fn pi_projection(m: usize, s: &FormSum) -> FormSum {
    let c = conjugate(s);
    let combined = if m % 2 == 1 { s.clone() + c } else { s.clone() - c };
    combined.scaled(&rational(1, 2))
}

fn alternate_forms(m: usize, term: impl Fn(&[usize]) -> FormSum) -> Result<FormSum> {
    let mut out = FormSum::new();
    for p in permutations(m)? {
        let t = term(&p.images);
        if p.sign > 0 {
            out.add_sum(&t);
        } else {
            out.add_sum(&-t);
        }
    }
    Ok(out)
}

fn hol(j: usize) -> Vec<(OneForm, BigRational)> {
    vec![(OneForm::Hol(j as u8), BigRational::one())]
}

fn antihol(j: usize) -> Vec<(OneForm, BigRational)> {
    vec![(OneForm::AntiHol(j as u8), BigRational::one())]
}

/// `log|f_{p0}| ^_{1..k-1} dlog f ^_{k..m-1} dbar log f`, positions in `p`.
fn split_term(coeff: &BigRational, p: &[usize], k: usize) -> FormSum {
    let factors: Vec<_> = (1..p.len()).map(|s| if s < k { hol(p[s]) } else { antihol(p[s]) }).collect();
    wedge(coeff, p[0] as u8, &factors)
}

fn check_m(m: usize) -> Result<()> {
    if !(2..=6).contains(&m) {
        return Err(Error::Domain(format!("m must lie in 2..=6, got {m}")));
    }
    Ok(())
}

/// `r_m` from its definition, with `dlog|f| = (dlog f + dbar log f) / 2` and
/// `i darg f = (dlog f - dbar log f) / 2`.
pub fn r_definition(m: usize) -> Result<FormSum> {
    check_m(m)?;
    let half = rational(1, 2);
    alternate_forms(m, |p| {
        let mut s = FormSum::new();
        for k in (0..).take_while(|k| 2 * k < m) {
            let factors: Vec<_> = (1..m)
                .map(|slot| {
                    let j = p[slot] as u8;
                    let sign = if slot <= 2 * k { half.clone() } else { -half.clone() };
                    vec![(OneForm::Hol(j), half.clone()), (OneForm::AntiHol(j), sign)]
                })
                .collect();
            s.add_sum(&wedge(&-c_coefficient(k as u64, m as u64), p[0] as u8, &factors));
        }
        s
    })
}

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n as u64).product::<u64>().into())
}

/// The holomorphic/antiholomorphic presentation with coefficients
/// `(-1)^{m-k-1} / m!`.
pub fn r_holomorphic(m: usize) -> Result<FormSum> {
    check_m(m)?;
    let mf = factorial(m);
    alternate_forms(m, |p| {
        let mut s = FormSum::new();
        for k in 1..=m {
            let sign = if (m + 1 - k).is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            s.add_sum(&split_term(&(sign / &mf), p, k));
        }
        s
    })
}

/// The reduced presentation, keeping only terms with at least half of the
/// factors holomorphic.
pub fn r_reduced(m: usize) -> Result<FormSum> {
    check_m(m)?;
    let mf = factorial(m);
    let two = rational(2, 1);
    let sgn = |e: usize| {
        if e.is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    };
    let inner = if m.is_multiple_of(2) {
        let n = m / 2;
        alternate_forms(m, |p| {
            let mut s = FormSum::new();
            for k in n + 1..=m {
                s.add_sum(&split_term(&(&two * sgn(k - 1) / &mf), p, k));
            }
            s
        })?
    } else {
        let n = m.div_ceil(2);
        alternate_forms(m, |p| {
            let mut s = split_term(&(sgn(n) / &mf), p, n);
            for k in n + 1..=m {
                s.add_sum(&split_term(&(&two * sgn(k) / &mf), p, k));
            }
            s
        })?
    };
    Ok(pi_projection(m, &inner))
}

/// The worked special cases for `m = 3` and `m = 4`.
pub fn r_example(m: usize) -> Result<FormSum> {
    match m {
        3 => {
            let inner = alternate_forms(3, |p| {
                let mut s = wedge(&BigRational::one(), p[0] as u8, &[hol(p[1]), antihol(p[2])]);
                s.add_sum(&wedge(&rational(-2, 1), p[0] as u8, &[hol(p[1]), hol(p[2])]));
                s
            })?;
            Ok(pi_projection(3, &inner).scaled(&rational(1, 6)))
        }
        4 => {
            let inner = alternate_forms(4, |p| {
                let mut s = wedge(&BigRational::one(), p[0] as u8, &[hol(p[1]), hol(p[2]), antihol(p[3])]);
                s.add_sum(&wedge(&-BigRational::one(), p[0] as u8, &[hol(p[1]), hol(p[2]), hol(p[3])]));
                s
            })?;
            Ok(pi_projection(4, &inner).scaled(&rational(1, 12)))
        }
        _ => Err(Error::Domain(format!("worked examples exist for m = 3, 4 only, got {m}"))),
    }
}

fn first_difference(a: &FormSum, b: &FormSum) -> Option<String> {
    let diff = a.clone() - b.clone();
    let first = diff
        .iter()
        .next()
        .map(|(k, _)| format!("{k:?}: {} vs {}", a.coeff(k), b.coeff(k)));
    first
}

/// Coefficient-wise equality of the definition, the holomorphic and the
/// reduced presentations (and the worked example where there is one).
pub fn verify_prop_rn_presentations(m: usize) -> Result<ExactCheck> {
    check_m(m)?;
    let mut check = ExactCheck::new(format!("rn_presentations_m{m}"));
    let def = r_definition(m)?;
    let mut compare = |label: &str, other: &FormSum| {
        let d = first_difference(&def, other);
        check.record(d.is_none(), || format!("definition vs {label}: {}", d.unwrap_or_default()));
    };
    compare("holomorphic", &r_holomorphic(m)?);
    compare("reduced", &r_reduced(m)?);
    if m == 3 || m == 4 {
        compare("worked example", &r_example(m)?);
    }
    // the stated coefficient c_{0,m} = m / m!
    let c0 = c_coefficient(0, m as u64);
    check.record(
        c0 == BigRational::new(binomial(m as u64, 1), factorial(m).to_integer()),
        || format!("c_0,{m} = {c0}"),
    );
    Ok(check)
}

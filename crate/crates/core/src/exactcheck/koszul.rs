use super::{rational, ExactCheck};
use crate::configspace::{permutations, FormalSum};
use crate::error::Result;

/// The symbol `Delta(i, j)` with `i < j`; in `F^* (x) Q` the sign of the
/// determinant is torsion, so `Delta(j, i)` is the same generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaGen(pub u8, pub u8);

impl DeltaGen {
    pub fn new(i: u8, j: u8) -> Self {
        assert!(i != j, "Delta needs distinct labels");
        DeltaGen(i.min(j), i.max(j))
    }

    fn relabel(self, p: &[usize]) -> Self {
        DeltaGen::new(p[self.0 as usize] as u8, p[self.1 as usize] as u8)
    }
}

/// Basis words of `F (x) L^2 F`, `S^2 F (x) F` and `S^3 F` in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TensorWord {
    /// `a (x) b ^ c` with `b < c`.
    TensorWedge(DeltaGen, DeltaGen, DeltaGen),
    /// `a . b (x) c` with `a <= b`.
    SymTensor(DeltaGen, DeltaGen, DeltaGen),
    /// `a . b . c` with `a <= b <= c`.
    Sym3(DeltaGen, DeltaGen, DeltaGen),
}

type Words = FormalSum<TensorWord>;

impl TensorWord {
    pub fn tensor_wedge(a: DeltaGen, b: DeltaGen, c: DeltaGen) -> Words {
        use std::cmp::Ordering::*;
        match b.cmp(&c) {
            Equal => Words::new(),
            Less => Words::symbol(TensorWord::TensorWedge(a, b, c)),
            Greater => -Words::symbol(TensorWord::TensorWedge(a, c, b)),
        }
    }

    pub fn sym_tensor(a: DeltaGen, b: DeltaGen, c: DeltaGen) -> Words {
        Words::symbol(TensorWord::SymTensor(a.min(b), a.max(b), c))
    }

    pub fn sym3(a: DeltaGen, b: DeltaGen, c: DeltaGen) -> Words {
        let mut g = [a, b, c];
        g.sort();
        Words::symbol(TensorWord::Sym3(g[0], g[1], g[2]))
    }

    fn relabel(self, p: &[usize]) -> Words {
        match self {
            TensorWord::TensorWedge(a, b, c) => Self::tensor_wedge(a.relabel(p), b.relabel(p), c.relabel(p)),
            TensorWord::SymTensor(a, b, c) => Self::sym_tensor(a.relabel(p), b.relabel(p), c.relabel(p)),
            TensorWord::Sym3(a, b, c) => Self::sym3(a.relabel(p), b.relabel(p), c.relabel(p)),
        }
    }
}

/// `a (x) b ^ c -> a.b (x) c - a.c (x) b`.
pub fn kappa1(s: &Words) -> Words {
    s.map_linear(|w| match *w {
        TensorWord::TensorWedge(a, b, c) => TensorWord::sym_tensor(a, b, c) - TensorWord::sym_tensor(a, c, b),
        _ => Words::new(),
    })
}

/// `a.b (x) c -> a.b.c`.
pub fn kappa2(s: &Words) -> Words {
    s.map_linear(|w| match *w {
        TensorWord::SymTensor(a, b, c) => TensorWord::sym3(a, b, c),
        _ => Words::new(),
    })
}

/// `a.b.c -> (a.b (x) c + a.c (x) b + b.c (x) a) / 3`.
pub fn kappa2_split(s: &Words) -> Words {
    let third = rational(1, 3);
    s.map_linear(|w| match *w {
        TensorWord::Sym3(a, b, c) => {
            (TensorWord::sym_tensor(a, b, c) + TensorWord::sym_tensor(a, c, b) + TensorWord::sym_tensor(b, c, a)).scaled(&third)
        }
        _ => Words::new(),
    })
}

/// `sum_sigma sgn(sigma) sigma(s)` over the permutations of `n` labels.
fn alternate_labels(n: usize, s: &Words) -> Result<Words> {
    let mut out = Words::new();
    for p in permutations(n)? {
        let moved = s.map_linear(|w| w.relabel(&p.images));
        out.add_sum(&if p.sign > 0 { moved } else { -moved });
    }
    Ok(out)
}

fn d(i: u8, j: u8) -> DeltaGen {
    DeltaGen::new(i, j)
}

/// `(1 - r) ^ r` for `r = r(l_0, l_1, l_2, l_4)`, as
/// `(1/2) Alt over {0,1,2,4} of Delta(0,1) ^ Delta(0,2)`, tensored on the
/// left with `Delta(1,4)`.
fn lemma_input() -> Result<Words> {
    let labels = [0u8, 1, 2, 4];
    let mut out = Words::new();
    for p in permutations(4)? {
        let l = |k: usize| labels[p.images[k]];
        let t = TensorWord::tensor_wedge(d(1, 4), d(l(0), l(1)), d(l(0), l(2)));
        out.add_sum(&if p.sign > 0 { t } else { -t });
    }
    Ok(out.scaled(&rational(1, 2)))
}

fn all_generators() -> Vec<DeltaGen> {
    (0..5u8).flat_map(|i| (i + 1..5).map(move |j| d(i, j))).collect()
}

fn first_mismatch(a: &Words, b: &Words) -> Option<String> {
    let diff = a.clone() - b.clone();
    let first = diff
        .iter()
        .next()
        .map(|(k, _)| format!("{k:?}: {} vs {}", a.coeff(k), b.coeff(k)));
    first
}

/// Checks, in the symbol basis,
/// `-k1 Alt_5 {Delta(1,4) (x) (1-r) ^ r}
///   = 12 k2'(Alt_5 {Delta(2,4).Delta(1,4).Delta(0,2)}) + 12 Alt_5 {Delta(1,4).Delta(0,1) (x) Delta(2,4)}`
/// together with `k2 k1 = 0` and `k2 k2' = id`.
pub fn verify_koszul_lemma() -> Result<ExactCheck> {
    let mut check = ExactCheck::new("koszul_lemma");
    let twelve = rational(12, 1);
    let lhs = -kappa1(&alternate_labels(5, &lemma_input()?)?);
    let rhs = kappa2_split(&alternate_labels(5, &TensorWord::sym3(d(2, 4), d(1, 4), d(0, 2)))?).scaled(&twelve)
        + alternate_labels(5, &TensorWord::sym_tensor(d(1, 4), d(0, 1), d(2, 4)))?.scaled(&twelve);
    let m = first_mismatch(&lhs, &rhs);
    check.record(m.is_none() && !lhs.is_zero(), || {
        m.unwrap_or_else(|| "both sides vanish".into())
    });

    let gens = all_generators();
    for &a in &gens {
        for &b in &gens {
            for &c in &gens {
                let kk = kappa2(&kappa1(&TensorWord::tensor_wedge(a, b, c)));
                check.record(kk.is_zero(), || format!("k2 k1 ({a:?} (x) {b:?} ^ {c:?}) != 0"));
                if a <= b && b <= c {
                    let s = TensorWord::sym3(a, b, c);
                    let back = kappa2(&kappa2_split(&s));
                    check.record(back == s, || format!("k2 k2' ({a:?}.{b:?}.{c:?}) != identity"));
                }
            }
        }
    }
    Ok(check)
}

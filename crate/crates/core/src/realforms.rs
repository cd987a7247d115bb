//! The five real forms: blown-up point labels, ordered pair lists, the
//! Galois involution on the lattice, and centralizer bounds for A₀ and A′.

use std::fmt;

use crate::picard::{Basis, DivisorClass, ExceptionalPair};
use crate::weyl::{centralizer, format_bits, pair_action, perm_closure, weyl_group, Bits5, PicAut, Perm};

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormId {
    Q31_40,
    Q31_21,
    Q31_02,
    Q22_40,
    Q22_02,
}

impl FormId {
    pub const ALL: [FormId; 5] = [FormId::Q31_40, FormId::Q31_21, FormId::Q31_02, FormId::Q22_40, FormId::Q22_02];

    pub fn as_str(self) -> &'static str {
        match self {
            FormId::Q31_40 => "q31-40",
            FormId::Q31_21 => "q31-21",
            FormId::Q31_02 => "q31-02",
            FormId::Q22_40 => "q22-40",
            FormId::Q22_02 => "q22-02",
        }
    }

    pub fn parse(s: &str) -> Option<FormId> {
        Self::ALL.into_iter().find(|f| f.as_str() == s)
    }

    /// Q₃,₁ forms swap the two factors under complex conjugation.
    pub fn swaps_factors(self) -> bool {
        matches!(self, FormId::Q31_40 | FormId::Q31_21 | FormId::Q31_02)
    }

    /// Index of the case in the classification (1 to 5).
    pub fn case(self) -> u8 {
        match self {
            FormId::Q31_02 => 1,
            FormId::Q31_21 => 2,
            FormId::Q31_40 => 3,
            FormId::Q22_02 => 4,
            FormId::Q22_40 => 5,
        }
    }

    pub fn from_case(c: u8) -> Option<FormId> {
        Self::ALL.into_iter().find(|f| f.case() == c)
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FormId::Q31_02 | FormId::Q31_21 => &["mu"],
            FormId::Q31_40 => &["lambda"],
            FormId::Q22_02 => &["k1", "k2"],
            FormId::Q22_40 => &["mu1", "mu2"],
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct FormSpec {
    pub id: FormId,
    /// Point names attached to e1 … e4.
    pub labels: [&'static str; 4],
    pub pairs: Vec<ExceptionalPair>,
    pub sigma: PicAut,
    pub domain: &'static str,
}

const CROSSINGS: [&str; 6] = ["f1+f2-e1-e2", "f1+f2-e3-e4", "f1+f2-e1-e3", "f1+f2-e2-e4", "f1+f2-e1-e4", "f1+f2-e2-e3"];
const RULINGS: [&str; 4] = ["f1", "f1+2f2-e1-e2-e3-e4", "f2", "2f1+f2-e1-e2-e3-e4"];

fn pair_list(order: [usize; 5]) -> Vec<ExceptionalPair> {
    let all: Vec<[&str; 2]> = vec![
        [CROSSINGS[0], CROSSINGS[1]],
        [CROSSINGS[2], CROSSINGS[3]],
        [CROSSINGS[4], CROSSINGS[5]],
        [RULINGS[0], RULINGS[1]],
        [RULINGS[2], RULINGS[3]],
    ];
    order
        .iter()
        .enumerate()
        .map(|(i, &k)| ExceptionalPair {
            index: i + 1,
            members: all[k].map(|s| DivisorClass::parse(s, Basis::Quadric).expect("static class")),
        })
        .collect()
}

fn swap_matrix(swaps: &[(usize, usize)]) -> PicAut {
    let mut p = [0usize, 1, 2, 3, 4, 5];
    for &(a, b) in swaps {
        p.swap(a, b);
    }
    let mut m = [[0i64; 6]; 6];
    for (j, &i) in p.iter().enumerate() {
        m[i][j] = 1;
    }
    PicAut { basis: Basis::Quadric, m }
}

pub fn form_spec(id: FormId) -> FormSpec {
    // Standard order R1..R5 = {12,34}, {13,24}, {14,23}, {f1,..}, {f2,..};
    // Q22(0,2) moves the ruling pairs to positions 2 and 3.
    let standard = [0, 1, 2, 3, 4];
    let (labels, order, swaps, domain): ([&str; 4], [usize; 5], &[(usize, usize)], &str) = match id {
        FormId::Q31_02 => (
            ["p", "pbar", "q", "qbar"],
            standard,
            &[(0, 1), (2, 3), (4, 5)],
            "p=([1:0],[0:1]), q=([1:1],[1:mu]) with mu not real, mu != 0, ±1",
        ),
        FormId::Q31_21 => (
            ["p", "q", "r", "rbar"],
            standard,
            &[(0, 1), (4, 5)],
            "p=([1:0],[1:0]), q=([0:1],[0:1]), r=([1:1],[mu:1]) with mu != 0, ±1 and |mu| != 1",
        ),
        FormId::Q31_40 => (
            ["p", "q", "r", "s"],
            standard,
            &[(0, 1)],
            "p, q, r = ([1:1],[1:1]), s=([lambda:1],[conj lambda:1]) with lambda not real",
        ),
        FormId::Q22_02 => (
            ["p", "pbar", "q", "qbar"],
            [0, 3, 4, 1, 2],
            &[(2, 3), (4, 5)],
            "field_d = -1, p=([1:i],[1:i]), q=([1:k1 i],[1:k2 i]) with distinct k1, k2 in ]0,1[",
        ),
        FormId::Q22_40 => (
            ["p", "q", "r", "s"],
            standard,
            &[],
            "p, q, r = ([1:1],[1:1]), s=([1:mu1],[1:mu2]) with real mu1, mu2 not in {0, 1}",
        ),
    };
    FormSpec { id, labels, pairs: pair_list(order), sigma: swap_matrix(swaps), domain }
}

/// Signatures of pair-kernel elements of W commuting with σ, sorted.
pub fn kernel_bound(form: &FormSpec) -> Vec<Bits5> {
    let c = centralizer(&form.sigma, weyl_group(Basis::Quadric)).expect("sigma lies in W");
    let mut out: Vec<Bits5> = c
        .elements
        .iter()
        .map(|g| pair_action(g, &form.pairs).expect("W preserves pairs"))
        .filter(|a| a.perm.is_identity())
        .map(|a| a.swaps)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Perm parts of the centralizer of σ: an upper bound for A′.
pub fn image_bound(form: &FormSpec) -> Vec<Perm> {
    let c = centralizer(&form.sigma, weyl_group(Basis::Quadric)).expect("sigma lies in W");
    let mut out: Vec<Perm> = c.elements.iter().map(|g| pair_action(g, &form.pairs).unwrap().perm).collect();
    out.sort();
    out.dedup();
    out
}

/// The group that the case analysis names as containing A′, for comparison
/// with the lattice bound.
pub fn stated_image_envelope(id: FormId) -> Vec<Perm> {
    let gens: &[&str] = match id {
        FormId::Q31_02 => &["(23)", "(45)"],
        FormId::Q31_21 => &["(23)", "(2435)"],
        FormId::Q31_40 | FormId::Q22_02 => &["(123)", "(12)", "(45)"],
        FormId::Q22_40 => &["(12)", "(12345)"],
    };
    perm_closure(&gens.iter().map(|s| Perm::parse(s).unwrap()).collect::<Vec<_>>())
}

/// Compares `image_bound` with the stated envelope; `None` on agreement.
pub fn envelope_mismatch(form: &FormSpec) -> Option<String> {
    let computed = image_bound(form);
    let stated = stated_image_envelope(form.id);
    if computed == stated {
        return None;
    }
    let rel = if stated.iter().all(|p| computed.contains(p)) { "strictly contains" } else { "differs from" };
    Some(format!(
        "{}: lattice image bound of order {} {} the stated envelope of order {}",
        form.id,
        computed.len(),
        rel,
        stated.len()
    ))
}

/// The σ-action on the pairs as text arrows, one line per pair:
/// `R2 -> R3` or `R2 -> R2 (members exchanged)`.
pub fn sigma_arrows(form: &FormSpec) -> Vec<String> {
    let a = pair_action(&form.sigma, &form.pairs).expect("sigma preserves pairs");
    (0..5)
        .map(|i| {
            let mut s = format!("R{} -> R{}", i + 1, a.perm.0[i] + 1);
            if a.swaps >> i & 1 == 1 {
                s.push_str(" (members exchanged)");
            }
            s
        })
        .collect()
}

pub fn describe_sigma(form: &FormSpec) -> String {
    let a = pair_action(&form.sigma, &form.pairs).unwrap();
    format!("{} {}", a.perm, format_bits(a.swaps))
}

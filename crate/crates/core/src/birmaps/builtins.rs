//! Explicit real birational maps, one catalogue entry per map, with the
//! facts each one is claimed to satisfy.

use crate::numfield::{FieldElem, Predicate};
use crate::realforms::FormId;

use super::bideg::BidegMap;
use super::point::Params;
use super::BirError;

/// Where the lattice matrix of a map comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeSource {
    /// A record of the matrix fixtures.
    Fixture(&'static str),
    /// Read off the permutation of the blown-up points (Möbius pairs only).
    PointPermutation,
    /// Rows in the quadric basis.
    Inline([[i64; 6]; 6]),
}

/// When a map is defined on the real form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Always,
    Holds(Predicate),
    /// The golden parameters with `√5` taken with the given sign.
    GoldenSign(i64),
}

#[derive(Debug, Clone)]
pub struct Builtin {
    pub form: FormId,
    pub name: &'static str,
    /// `A0, A1, B0, B1` in `u0 u1 v0 v1` and the form's constants.
    pub exprs: [&'static str; 4],
    pub gate: Gate,
    /// Indices of the blown-up points that are base points.
    pub base_points: &'static [usize],
    pub order: u32,
    pub lattice: LatticeSource,
    /// Stated action on the pairs: a kernel signature such as `"01100"` or a
    /// permutation such as `"(12)(45)"`.
    pub action: &'static str,
}

/// The constants `mu mubar lam lambar k1 k2 mu1 mu2 w` available to the
/// formulas of `form`, with `w = √d`.
pub fn constants(form: FormId, d: i64, params: &Params) -> Result<Vec<(&'static str, FieldElem)>, BirError> {
    let get = |n: &str| {
        params.get(n).cloned().ok_or_else(|| BirError::InvalidParameters(format!("missing parameter {n}")))
    };
    let mut out = vec![("w", FieldElem::sqrt_d(d))];
    match form {
        FormId::Q31_02 | FormId::Q31_21 => {
            let mu = get("mu")?;
            out.push(("mubar", mu.cc()));
            out.push(("mu", mu));
        }
        FormId::Q31_40 => {
            let l = get("lambda")?;
            out.push(("lambar", l.cc()));
            out.push(("lam", l));
        }
        FormId::Q22_02 => {
            out.push(("k1", get("k1")?));
            out.push(("k2", get("k2")?));
        }
        FormId::Q22_40 => {
            out.push(("mu1", get("mu1")?));
            out.push(("mu2", get("mu2")?));
        }
    }
    Ok(out)
}

impl Builtin {
    pub fn gate_holds(&self, d: i64, params: &Params) -> Result<bool, BirError> {
        let args = |names: &[&str]| -> Result<Vec<FieldElem>, BirError> {
            names
                .iter()
                .map(|n| params.get(*n).cloned().ok_or_else(|| BirError::InvalidParameters(format!("missing parameter {n}"))))
                .collect()
        };
        let names = self.form.param_names();
        match self.gate {
            Gate::Always => Ok(true),
            Gate::Holds(p) => p.eval(&args(names)?).map_err(|e| BirError::InvalidParameters(e.to_string())),
            Gate::GoldenSign(s) => {
                let a = args(names)?;
                if d != 5 {
                    return Ok(false);
                }
                let half = crate::numfield::rat(1, 2);
                let w = FieldElem::sqrt_d(5).scale(&crate::numfield::rat_int(s));
                let one = FieldElem::int(5, 1);
                let three = FieldElem::int(5, 3);
                Ok(a[0] == (&one - &w).scale(&half) && a[1] == (&three - &w).scale(&half))
            }
        }
    }

    pub fn build(&self, d: i64, params: &Params) -> Result<BidegMap, BirError> {
        let consts = constants(self.form, d, params)?;
        BidegMap::parse(self.exprs, d, &consts)
    }

    pub fn tag(&self) -> String {
        format!("{}/{}", self.form.as_str(), self.name)
    }
}

const CASE3_PHI3: [[i64; 6]; 6] = [
    [1, 2, 1, 1, 1, 1],
    [2, 1, 1, 1, 1, 1],
    [-1, -1, 0, -1, -1, -1],
    [-1, -1, -1, 0, -1, -1],
    [-1, -1, -1, -1, 0, -1],
    [-1, -1, -1, -1, -1, 0],
];

pub fn builtins() -> Vec<Builtin> {
    use FormId::*;
    use Gate::*;
    use LatticeSource::*;
    let all: &'static [usize] = &[0, 1, 2, 3];
    vec![
        Builtin {
            form: Q31_02,
            name: "alpha1",
            exprs: ["u1", "mubar*u0", "v1", "mu*v0"],
            gate: Always,
            base_points: &[],
            order: 2,
            lattice: Fixture("q31-02/alpha1"),
            action: "01100",
        },
        Builtin {
            form: Q31_02,
            name: "alpha2",
            exprs: ["u1-mubar*u0", "mubar*(u1-u0)", "v1-mu*v0", "mu*(v1-v0)"],
            gate: Always,
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "10100",
        },
        Builtin {
            form: Q31_02,
            name: "phi3",
            exprs: [
                "-v1*(mubar*(mu-1)*u0*v0+(1-mubar)*u1*v1+(mubar-mu)*u1*v0)",
                "-v0*mubar*(mu*(mubar-1)*u0*v0+(mu-mubar)*u0*v1+(1-mu)*u1*v1)",
                "-u1*(mu*(mubar-1)*u0*v0+(mu-mubar)*u0*v1+(1-mu)*u1*v1)",
                "-u0*mu*(mubar*(mu-1)*u0*v0+(1-mubar)*u1*v1+(mubar-mu)*u1*v0)",
            ],
            gate: Always,
            base_points: all,
            order: 2,
            lattice: Fixture("q31-02/phi3"),
            action: "00011",
        },
        Builtin {
            form: Q31_21,
            name: "delta1",
            exprs: ["mubar*u1", "u0", "mu*v1", "v0"],
            gate: Always,
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "01100",
        },
        Builtin {
            form: Q31_21,
            name: "phi",
            exprs: [
                "mubar*v0*((mubar*mu-1)*u1*v1+(1-mu)*u0*v1+(1-mubar)*u1*v0)",
                "v1*(mu*(mubar-1)*u0*v1+(1-mu*mubar)*u0*v0+mubar*(mu-1)*u1*v0)",
                "-mu*u0*((mu*mubar-1)*u1*v1+(1-mu)*u0*v1+(1-mubar)*u1*v0)",
                "-u1*(mu*(mubar-1)*u0*v1+(1-mu*mubar)*u0*v0+mubar*(mu-1)*u1*v0)",
            ],
            gate: Always,
            base_points: all,
            order: 2,
            lattice: Fixture("q31-21/phi"),
            action: "00011",
        },
        Builtin {
            form: Q31_21,
            name: "psi",
            exprs: [
                "u0*v1-mubar*u1*v0",
                "u0*v1-u1*v0+(mu-1)*u1*v1",
                "mu*u0*v1-u1*v0",
                "u0*v1-u1*v0+(mu-1)*u1*v1",
            ],
            gate: Holds(Predicate::Trace2),
            base_points: &[0, 2, 3],
            order: 2,
            lattice: Fixture("q31-21/t25-34/a"),
            action: "(25)(34)",
        },
        Builtin {
            form: Q31_21,
            name: "delta",
            exprs: ["v0", "v1", "u0", "u1"],
            gate: Holds(Predicate::IsReal),
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "(23)(45)",
        },
        Builtin {
            form: Q31_40,
            name: "alpha1",
            exprs: ["lam*u1", "u0", "lambar*v1", "v0"],
            gate: Always,
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "01100",
        },
        Builtin {
            form: Q31_40,
            name: "alpha2",
            exprs: ["u0-lam*u1", "u0-u1", "v0-lambar*v1", "v0-v1"],
            gate: Always,
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "10100",
        },
        Builtin {
            form: Q31_40,
            name: "phi3",
            exprs: [
                "lam*v0*((lambar-1)*u0*v1+(lam-lambar)*u1*v1+(1-lam)*u1*v0)",
                "v1*(lambar*(lam-1)*u0*v1+lam*(1-lambar)*u1*v0+(lambar-lam)*u0*v0)",
                "-lambar*u0*((lambar-1)*u0*v1+(lam-lambar)*u1*v1+(1-lam)*u1*v0)",
                "-u1*(lambar*(lam-1)*u0*v1+lam*(1-lambar)*u1*v0+(lambar-lam)*u0*v0)",
            ],
            gate: Always,
            base_points: all,
            order: 2,
            lattice: Inline(CASE3_PHI3),
            action: "00011",
        },
        Builtin {
            form: Q31_40,
            name: "alpha_prime",
            exprs: ["v0-v1", "-v1", "u0-u1", "-u1"],
            gate: Holds(Predicate::Trace1),
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "(12)(45)",
        },
        Builtin {
            form: Q31_40,
            name: "tau",
            exprs: ["u0-lam*u1", "-lam*u1", "v0-lambar*v1", "-lambar*v1"],
            gate: Holds(Predicate::Omega6),
            base_points: &[],
            order: 3,
            lattice: PointPermutation,
            action: "(123)",
        },
        Builtin {
            form: Q22_02,
            name: "phi1",
            exprs: [
                "-u0",
                "u1",
                "k1*(1-k1*k2)*u0^2*v1+k2*(k1^2-1)*u0*u1*v0+(k1-k2)*u1^2*v1",
                "k2*((k1^2-1)*u0*u1*v1+k1*(k1-k2)*u0^2*v0+(1-k1*k2)*u1^2*v0)",
            ],
            gate: Always,
            base_points: all,
            order: 2,
            lattice: Fixture("q22-02/phi1"),
            action: "10100",
        },
        Builtin {
            form: Q22_02,
            name: "phi2",
            exprs: [
                "u1",
                "-k1*u0",
                "(k1^2-1)*u0*u1*v1+k1*(k1-k2)*u0^2*v0+(1-k1*k2)*u1^2*v0",
                "k1*(1-k1*k2)*u0^2*v1+k2*(k1^2-1)*u0*u1*v0+(k1-k2)*u1^2*v1",
            ],
            gate: Always,
            base_points: all,
            order: 2,
            lattice: Fixture("q22-02/phi2"),
            action: "00110",
        },
        Builtin {
            form: Q22_02,
            name: "phi",
            exprs: [
                "k1*(1-k2^2)*u0*v0*v1+k2*(k1*k2-1)*u1*v0^2+(k1-k2)*u1*v1^2",
                "-k1*((k1*k2-1)*u0*v1^2+k2*(k1-k2)*u0*v0^2+(1-k2^2)*u1*v0*v1)",
                "k1*(k1*k2-1)*u0^2*v1+k2*(1-k1^2)*u0*u1*v0+(k2-k1)*u1^2*v1",
                "k2*((k1^2-1)*u0*u1*v1+k1*(k1-k2)*u0^2*v0+(1-k1*k2)*u1^2*v0)",
            ],
            gate: Always,
            base_points: all,
            order: 2,
            lattice: Fixture("q22-02/phi"),
            action: "01100",
        },
        Builtin {
            form: Q22_02,
            name: "phi_prime",
            exprs: ["u1*v1+u0*v0", "-u0*v1+u1*v0", "-v0", "v1"],
            gate: Holds(Predicate::KCond),
            base_points: &[0, 1],
            order: 2,
            lattice: Fixture("q22-02/t12-45/a"),
            action: "(12)(45)",
        },
        Builtin {
            form: Q22_40,
            name: "beta_prime",
            exprs: ["v0-v1", "-v1", "u0-u1", "-u1"],
            gate: Holds(Predicate::MuCond),
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "(12)(45)",
        },
        Builtin {
            form: Q22_40,
            name: "alpha_prime",
            exprs: ["(mu1-1)*v0+v1", "mu1*v1", "(mu2-1)*u0+u1", "mu2*u1"],
            gate: Holds(Predicate::Sum1),
            base_points: &[],
            order: 2,
            lattice: PointPermutation,
            action: "(13)(45)",
        },
        Builtin {
            form: Q22_40,
            name: "psi1",
            exprs: ["2*(v1-v0)*u1", "(w-1)*v1*(u0-u1)", "2*u1", "(w-3)*(u0-u1)"],
            gate: GoldenSign(1),
            base_points: &[0, 2],
            order: 5,
            lattice: Fixture("q22-40/t13245/a"),
            action: "(13245)",
        },
        Builtin {
            form: Q22_40,
            name: "psi2",
            exprs: ["-2*(v1-v0)*u1", "(w+1)*v1*(u0-u1)", "2*u1", "-(w+3)*(u0-u1)"],
            gate: GoldenSign(-1),
            base_points: &[0, 2],
            order: 5,
            lattice: Fixture("q22-40/t13245/a"),
            action: "(13245)",
        },
    ]
}

/// The plane involution `[a·yz : b·xz : c·xy]` of the plane fixture, together
/// with its five points `p1 p2 p3 [1:1:1] [a:b:c]`.
pub const PLANE_INVOLUTION: [&str; 3] = ["a*y*z", "b*x*z", "c*x*y"];

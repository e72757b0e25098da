//! Built-in examples with their expected verdicts.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::eulerhom::{LqhWitness, LqhWitnessJson, WitnessTerm};
use crate::liecoh::GroupTypeDecomp;
use crate::logder::{LinearVectorField, VectorFieldBasis};
use crate::minorfam::{AuxQuiver, MinorVerdict};
use crate::poly::{cofactor_det, parse_poly, MPoly, Ring};
use crate::quiverrep::{Arrow, Quiver, QuiverRep};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Basis,
    Quiver,
    MinorFamily,
    SymN,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Basis(VectorFieldBasis),
    Quiver(QuiverRep),
    MinorFamily(Vec<AuxQuiver>),
    SymN(usize),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_lfd: Option<bool>,
    /// Text in the payload's variables; compared up to a nonzero scalar.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reductive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupTypeDecomp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lie_betti: Option<Vec<usize>>,
    /// A factor whose square divides the discriminant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kac_h1: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub minor_verdicts: Vec<MinorVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub admissible: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_euler: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<LqhWitnessJson>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    pub payload: Payload,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn kind(&self) -> EntryKind {
        match self.payload {
            Payload::Basis(_) => EntryKind::Basis,
            Payload::Quiver(_) => EntryKind::Quiver,
            Payload::MinorFamily(_) => EntryKind::MinorFamily,
            Payload::SymN(_) => EntryKind::SymN,
        }
    }

    pub fn payload_json(&self) -> Value {
        match &self.payload {
            Payload::Basis(b) => b.to_json(),
            Payload::Quiver(q) => serde_json::to_value(q.to_json()).expect("quiver serializes"),
            Payload::MinorFamily(rows) => json!({ "rows": rows }),
            Payload::SymN(n) => json!({ "n": n }),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "aliases": self.aliases,
            "kind": self.kind(),
            "description": self.description,
            "payload": self.payload_json(),
            "expected": self.expected,
        })
    }

    /// The ring of the payload, where there is a single one.
    pub fn ring(&self) -> Option<Ring> {
        match &self.payload {
            Payload::Basis(b) => Some(b.ring().clone()),
            Payload::Quiver(q) => Some(q.ring()),
            Payload::SymN(n) => Some(crate::eulerhom::symn_ring(*n)),
            Payload::MinorFamily(_) => None,
        }
    }

    pub fn expected_discriminant(&self) -> Result<Option<MPoly>> {
        self.parse_expected(self.expected.discriminant.as_deref())
    }

    pub fn expected_square_factor(&self) -> Result<Option<MPoly>> {
        self.parse_expected(self.expected.square_factor.as_deref())
    }

    fn parse_expected(&self, text: Option<&str>) -> Result<Option<MPoly>> {
        match (text, self.ring()) {
            (Some(t), Some(r)) => parse_poly(t, &r).map(Some),
            (Some(_), None) => Err(Error::InvalidInput(format!("entry `{}` has no single ring", self.id))),
            (None, _) => Ok(None),
        }
    }

    pub fn witnesses(&self) -> Result<Vec<LqhWitness>> {
        self.expected
            .witnesses
            .iter()
            .map(|w| LqhWitness::from_json(w).map(|(_, w)| w))
            .collect()
    }
}

struct Row88 {
    vars: &'static [&'static str],
    rows: &'static [&'static [&'static str]],
    delta: &'static str,
    group: &'static str,
    reductive: bool,
}

const TABLE88: [Row88; 9] = [
    Row88 {
        vars: &["x"],
        rows: &[&["x"]],
        delta: "x",
        group: "T:1",
        reductive: true,
    },
    Row88 {
        vars: &["x", "y"],
        rows: &[&["x", "0"], &["0", "y"]],
        delta: "x*y",
        group: "T:2",
        reductive: true,
    },
    Row88 {
        vars: &["x", "y", "z"],
        rows: &[&["x", "0", "0"], &["0", "y", "0"], &["0", "0", "z"]],
        delta: "x*y*z",
        group: "T:3",
        reductive: true,
    },
    Row88 {
        vars: &["x", "y", "z"],
        rows: &[&["x", "y", "z"], &["4*x", "y", "-2*z"], &["-2*y", "z", "0"]],
        delta: "y^2*z + x*z^2",
        group: "B:2",
        reductive: false,
    },
    Row88 {
        vars: &["x", "y", "z", "w"],
        rows: &[
            &["x", "0", "0", "0"],
            &["0", "y", "0", "0"],
            &["0", "0", "z", "0"],
            &["0", "0", "0", "w"],
        ],
        delta: "x*y*z*w",
        group: "T:4",
        reductive: true,
    },
    Row88 {
        vars: &["x", "y", "z", "w"],
        rows: &[
            &["x", "y", "z", "0"],
            &["4*x", "y", "-2*z", "0"],
            &["-2*y", "z", "0", "0"],
            &["0", "0", "0", "w"],
        ],
        delta: "y^2*z*w + x*z^2*w",
        group: "T:1,B:2",
        reductive: false,
    },
    Row88 {
        vars: &["x", "y", "z", "w"],
        rows: &[
            &["x", "0", "0", "-w"],
            &["0", "y", "0", "w"],
            &["0", "0", "z", "w"],
            &["z", "-w", "0", "0"],
        ],
        delta: "y*z^2*w + x*z*w^2",
        group: "T:3,U:1",
        reductive: false,
    },
    Row88 {
        vars: &["x", "y", "z", "w"],
        rows: &[
            &["x", "y", "z", "w"],
            &["0", "y", "2*z", "3*w"],
            &["0", "x", "y", "z"],
            &["0", "0", "x", "y"],
        ],
        delta: "x*y^3 - 3*x^2*y*z + 3*x^3*w",
        group: "T:2,U:2",
        reductive: false,
    },
    Row88 {
        vars: &["x", "y", "z", "w"],
        rows: &[
            &["3*x", "2*y", "z", "0"],
            &["0", "3*x", "2*y", "z"],
            &["y", "2*z", "3*w", "0"],
            &["0", "y", "2*z", "3*w"],
        ],
        delta: "-y^2*z^2 + 4*y^3*w + 4*x*z^3 - 18*x*y*z*w + 27*x^2*w^2",
        group: "GL:2",
        reductive: true,
    },
];

const TABLE88_IDS: [&str; 9] = [
    "table88-row1",
    "table88-row2",
    "table88-row3",
    "table88-row4",
    "table88-row5",
    "table88-row6",
    "table88-row7",
    "table88-row8",
    "table88-row9",
];

const TABLE88_ALIASES: [&[&str]; 9] = [
    &["normal-crossing-1"],
    &["normal-crossing-2"],
    &["normal-crossing-3"],
    &["conic-tangent-line"],
    &["normal-crossing-4"],
    &["conic-tangent-line-plane"],
    &["quadric-two-planes"],
    &["twisted-cubic-tangent"],
    &["binary-cubics", "example1"],
];

const TABLE88_DESCRIPTIONS: [&str; 9] = [
    "n=1, x",
    "n=2, xy",
    "n=3, xyz",
    "n=3, (y^2+xz)z",
    "n=4, xyzw",
    "n=4, (y^2+xz)zw",
    "n=4, (yz+xw)zw",
    "n=4, x(y^3-3xyz+3x^2w)",
    "n=4, discriminant of binary cubics",
];

pub fn table88_basis(row: usize) -> Result<VectorFieldBasis> {
    let r = TABLE88
        .get(row)
        .ok_or(Error::OutOfRange { index: row, max: TABLE88.len() - 1 })?;
    let ring = Ring::new(r.vars.iter().copied());
    let rows = r
        .rows
        .iter()
        .map(|row| row.iter().map(|s| parse_poly(s, &ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    VectorFieldBasis::from_coefficient_rows(&ring, &rows)
}

/// `2χ + (x/ξ − 2)σ` at `(ξ, 0, 0, 0)` for `Δ = (yz+xw)zw`, with
/// `σ = 2x∂x + y∂y − w∂w`.
pub fn quadric_planes_witness(xi: &Rat) -> LqhWitness {
    let ring = Ring::new(["x", "y", "z", "w"]);
    let sigma = LinearVectorField::from_i64(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, -1]]);
    let x = MPoly::var(&ring, 0);
    LqhWitness {
        point: vec![xi.clone(), Rat::zero(), Rat::zero(), Rat::zero()],
        terms: vec![
            WitnessTerm {
                numerator: MPoly::constant(&ring, Rat::from(2)),
                denominator: MPoly::one(&ring),
                field: LinearVectorField::euler(4),
            },
            WitnessTerm {
                numerator: &x - &MPoly::constant(&ring, xi * &Rat::from(2)),
                denominator: MPoly::constant(&ring, xi.clone()),
                field: sigma,
            },
        ],
        expected_eigenvalues: [2, 1, 2, 3].map(Rat::from).to_vec(),
    }
}

/// `9χ + (w/ω − 2)σ` at `(0, 0, 0, ω)` for `Δ = x(y³−3xyz+3x²w)`, with
/// `σ = −3x∂x + y∂y + 5z∂z + 9w∂w`.
pub fn twisted_cubic_witness(omega: &Rat) -> LqhWitness {
    let ring = Ring::new(["x", "y", "z", "w"]);
    let sigma = LinearVectorField::from_i64(&[&[-3, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 5, 0], &[0, 0, 0, 9]]);
    let w = MPoly::var(&ring, 3);
    LqhWitness {
        point: vec![Rat::zero(), Rat::zero(), Rat::zero(), omega.clone()],
        terms: vec![
            WitnessTerm {
                numerator: MPoly::constant(&ring, Rat::from(9)),
                denominator: MPoly::one(&ring),
                field: LinearVectorField::euler(4),
            },
            WitnessTerm {
                numerator: &w - &MPoly::constant(&ring, omega * &Rat::from(2)),
                denominator: MPoly::constant(&ring, omega.clone()),
                field: sigma,
            },
        ],
        expected_eigenvalues: [12, 8, 4, 9].map(Rat::from).to_vec(),
    }
}

/// A three-dimensional centre with one outgoing arrow to a 1-dimensional
/// node and three incoming arrows from 1-dimensional nodes.
pub fn example44_rep() -> QuiverRep {
    let nodes = ["top", "center", "b", "c", "d"].map(String::from).to_vec();
    let arrows = vec![
        Arrow { tail: 1, head: 0 },
        Arrow { tail: 2, head: 1 },
        Arrow { tail: 3, head: 1 },
        Arrow { tail: 4, head: 1 },
    ];
    QuiverRep::new(Quiver::new(nodes, arrows).expect("connected"), vec![1, 3, 1, 1, 1], 1).expect("valid")
}

/// `det(B C D)` with the three incoming columns side by side.
pub fn example44_square_factor(rep: &QuiverRep) -> MPoly {
    let ring = rep.ring();
    let rows: Vec<Vec<MPoly>> = (0..3)
        .map(|r| (1..=3).map(|k| MPoly::var(&ring, rep.var(k, r, 0))).collect())
        .collect();
    cofactor_det(&ring, &rows)
}

/// Product of the maximal minors of the `n × (n+1)` matrix of source arrows.
pub fn star_minor_product(rep: &QuiverRep) -> MPoly {
    let ring = rep.ring();
    let n = rep.dims[0] as usize;
    let k = rep.quiver.arrows().len();
    (0..k).fold(MPoly::one(&ring), |acc, skip| {
        let rows: Vec<Vec<MPoly>> = (0..n)
            .map(|r| {
                (0..k)
                    .filter(|&c| c != skip)
                    .map(|c| MPoly::var(&ring, rep.var(c, r, 0)))
                    .collect()
            })
            .collect();
        &acc * &cofactor_det(&ring, &rows)
    })
}

fn aux(m: usize, n: usize, arrows: &[(usize, usize)]) -> AuxQuiver {
    AuxQuiver::new(m, n, arrows.to_vec())
}

const TABLE85_ARROWS: [&[(usize, usize)]; 4] = [&[(3, 4), (3, 5)], &[(2, 3), (4, 5)], &[(3, 5), (4, 5)], &[(1, 2), (2, 1)]];

const TABLE87_ARROWS: [&[(usize, usize)]; 16] = [
    &[(1, 2), (1, 3), (1, 4), (1, 5)],
    &[(2, 5), (3, 5), (1, 5), (4, 5)],
    &[(1, 2), (1, 3), (4, 5), (4, 6)],
    &[(1, 3), (2, 3), (4, 6), (5, 6)],
    &[(1, 3), (2, 3), (6, 4), (6, 5)],
    &[(1, 2), (3, 6), (4, 6), (5, 6)],
    &[(1, 2), (3, 4), (3, 5), (3, 6)],
    &[(1, 2), (3, 2), (3, 4), (5, 4)],
    &[(1, 2), (1, 3), (4, 3), (4, 5)],
    &[(1, 2), (3, 5), (3, 6), (4, 6)],
    &[(1, 2), (3, 2), (3, 4), (3, 5)],
    &[(1, 4), (1, 5), (2, 5), (3, 5)],
    &[(1, 3), (1, 4), (2, 3), (2, 4)],
    &[(1, 3), (1, 2), (2, 3), (4, 5)],
    &[(1, 3), (1, 2), (2, 3), (4, 3)],
    &[(1, 2), (1, 3), (1, 4), (2, 3)],
];

const TABLE87_YES: [usize; 7] = [3, 4, 8, 9, 10, 13, 14];

fn verdicts(yes: &[bool]) -> Vec<MinorVerdict> {
    yes.iter()
        .map(|&y| if y { MinorVerdict::Yes } else { MinorVerdict::No })
        .collect()
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Every built-in entry, sorted by id.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (i, row) in TABLE88.iter().enumerate() {
        let basis = table88_basis(i).expect("built-in table rows are valid");
        let witnesses = match i {
            6 => vec![quadric_planes_witness(&Rat::one()).to_json(basis.ring())],
            7 => vec![twisted_cubic_witness(&Rat::one()).to_json(basis.ring())],
            _ => Vec::new(),
        };
        out.push(CatalogEntry {
            id: TABLE88_IDS[i],
            aliases: TABLE88_ALIASES[i],
            description: TABLE88_DESCRIPTIONS[i],
            payload: Payload::Basis(basis),
            expected: Expected {
                is_lfd: Some(true),
                discriminant: Some(row.delta.to_string()),
                reductive: Some(row.reductive),
                group: Some(row.group.parse().expect("valid group type")),
                strong_euler: Some(true),
                witnesses,
                ..Expected::default()
            },
        });
    }

    let ex44 = example44_rep();
    let square = example44_square_factor(&ex44).to_string();
    out.push(CatalogEntry {
        id: "example44",
        aliases: &[],
        description: "quiver with a 3-dimensional centre whose discriminant has a square factor",
        payload: Payload::Quiver(ex44),
        expected: Expected {
            is_lfd: Some(false),
            square_factor: Some(square),
            ..Expected::default()
        },
    });

    for (id, n, aliases) in [("star-2-3", 2u32, &["star-2"][..]), ("star-3-4", 3, &["star-3"][..])] {
        let rep = QuiverRep::star(n);
        let product = star_minor_product(&rep).to_string();
        out.push(CatalogEntry {
            id,
            aliases,
            description: if n == 2 {
                "star quiver: sink of dimension 2, three sources of dimension 1"
            } else {
                "star quiver: sink of dimension 3, four sources of dimension 1"
            },
            payload: Payload::Quiver(rep),
            expected: Expected {
                is_lfd: Some(true),
                discriminant: Some(product),
                kac_h1: Some(n as usize + 1),
                ..Expected::default()
            },
        });
    }

    let a2 = QuiverRep::new(
        Quiver::new(vec!["1".into(), "2".into()], vec![Arrow { tail: 0, head: 1 }]).expect("connected"),
        vec![1, 1],
        0,
    )
    .expect("valid");
    out.push(CatalogEntry {
        id: "a2",
        aliases: &[],
        description: "A2 quiver with dimension vector (1,1)",
        payload: Payload::Quiver(a2),
        expected: Expected {
            is_lfd: Some(true),
            discriminant: Some("a1_1_1".into()),
            kac_h1: Some(1),
            ..Expected::default()
        },
    });

    out.push(CatalogEntry {
        id: "table85",
        aliases: &[],
        description: "maximal minors of a generic 2x5 matrix",
        payload: Payload::MinorFamily(TABLE85_ARROWS.iter().map(|a| aux(2, 5, a)).collect()),
        expected: Expected {
            minor_verdicts: verdicts(&[true, true, false, false]),
            ..Expected::default()
        },
    });
    out.push(CatalogEntry {
        id: "table86",
        aliases: &[],
        description: "maximal minors of a generic 3x5 matrix",
        payload: Payload::MinorFamily(TABLE85_ARROWS.iter().map(|a| aux(3, 5, a)).collect()),
        expected: Expected {
            minor_verdicts: verdicts(&[false, true, true, false]),
            ..Expected::default()
        },
    });
    out.push(CatalogEntry {
        id: "table87",
        aliases: &[],
        description: "maximal minors of a generic 3x6 matrix",
        payload: Payload::MinorFamily(TABLE87_ARROWS.iter().map(|a| aux(3, 6, a)).collect()),
        expected: Expected {
            minor_verdicts: verdicts(&(1..=16).map(|i| TABLE87_YES.contains(&i)).collect::<Vec<_>>()),
            ..Expected::default()
        },
    });
    out.push(CatalogEntry {
        id: "example47",
        aliases: &[],
        description: "six maximal minors of a generic 3x6 matrix",
        payload: Payload::MinorFamily(vec![aux(3, 6, &[(1, 2), (3, 2), (3, 4), (5, 4)])]),
        expected: Expected {
            minor_verdicts: vec![MinorVerdict::Yes],
            admissible: vec![strings(&["M123", "M135", "M136", "M156", "M345", "M356"])],
            ..Expected::default()
        },
    });
    out.push(CatalogEntry {
        id: "example47-small",
        aliases: &[],
        description: "four maximal minors of a generic 2x4 matrix",
        payload: Payload::MinorFamily(vec![aux(2, 4, &[(3, 4)])]),
        expected: Expected {
            minor_verdicts: vec![MinorVerdict::Yes],
            admissible: vec![strings(&["M12", "M13", "M23", "M34"])],
            ..Expected::default()
        },
    });

    for (id, n, aliases, group, betti) in [
        ("symn-2", 2usize, &["sym2"][..], "B:2", vec![1, 2, 1, 0]),
        ("symn-3", 3, &["sym3"][..], "B:3", vec![1, 3, 3, 1, 0, 0, 0]),
    ] {
        out.push(CatalogEntry {
            id,
            aliases,
            description: if n == 2 {
                "symmetric 2x2 matrices under congruence by upper triangular matrices"
            } else {
                "symmetric 3x3 matrices under congruence by upper triangular matrices"
            },
            payload: Payload::SymN(n),
            expected: Expected {
                is_lfd: Some(true),
                reductive: Some(false),
                group: Some(group.parse().expect("valid group type")),
                lie_betti: Some(betti),
                strong_euler: Some(true),
                ..Expected::default()
            },
        });
    }

    out.sort_by(|a, b| a.id.cmp(b.id));
    out
}

/// Looks up an entry by id or alias.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id == name || e.aliases.contains(&name))
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// The whole catalog as a JSON array.
pub fn dump() -> Value {
    Value::Array(catalog().iter().map(CatalogEntry::to_json).collect())
}

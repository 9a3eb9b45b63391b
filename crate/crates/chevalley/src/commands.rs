//! One function per subcommand, each producing a serializable report.

use chevalley_core::generic::{GenericReport, GenericSetup, PointCase};
use chevalley_core::normal::{describe_ideal, NormalStructure};
use chevalley_core::poly::PitReport;
use chevalley_core::roots::RootLength;
use chevalley_core::{CartanType, Chevalley, CommRing, Error, GroupWord, Orientation, RootSystem, Zmod};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::format::{
    cert_to_json, element_to_json, root_index, root_params, word_to_json, CertJson, ElementJson,
    RingJson, RootParam, WordJson,
};

#[derive(Debug, Serialize)]
pub struct RootEntry {
    pub coords: Vec<i32>,
    pub height: i32,
    pub length: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RootsReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub num_roots: usize,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<RootEntry>,
    pub weyl_order: usize,
    pub longest_word: Vec<usize>,
}

pub fn roots(ty: CartanType) -> Result<RootsReport> {
    let rs = RootSystem::build(ty)?;
    let roots = (0..rs.num_roots())
        .map(|r| RootEntry {
            coords: rs.coords(r).to_vec(),
            height: rs.height(r),
            length: match rs.length(r) {
                RootLength::Short => "short",
                RootLength::Long => "long",
            },
        })
        .collect();
    Ok(RootsReport {
        ty: ty.to_string(),
        rank: rs.rank(),
        num_roots: rs.num_roots(),
        cartan: rs.cartan_matrix(),
        roots,
        weyl_order: rs.weyl_group().len(),
        longest_word: one_based(&rs.longest().word),
    })
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Serialize)]
pub struct ConstantEntry {
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
    pub sum: Vec<i32>,
    pub n: i64,
}

#[derive(Debug, Serialize)]
pub struct CommutatorEntry {
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
    /// `(i, j, root, C_ij)`.
    pub terms: Vec<(u32, u32, Vec<i32>, i64)>,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub dim: usize,
    pub structure_constants: Vec<ConstantEntry>,
    pub commutators: Vec<CommutatorEntry>,
}

pub fn table(ty: CartanType) -> Result<TableReport> {
    let t = chevalley_core::StructureTable::for_type(ty)?;
    let rs = &t.rs;
    let mut structure_constants = Vec::new();
    let mut commutators = Vec::new();
    for a in 0..rs.num_roots() {
        for b in 0..rs.num_roots() {
            if let Some(s) = rs.root_sum(a, b) {
                structure_constants.push(ConstantEntry {
                    alpha: rs.coords(a).to_vec(),
                    beta: rs.coords(b).to_vec(),
                    sum: rs.coords(s).to_vec(),
                    n: t.n(a, b),
                });
            }
            if a != b && rs.negate(a) != b {
                let terms: Vec<_> = t
                    .commutator_coeffs(a, b)
                    .iter()
                    .map(|c| (c.i, c.j, rs.coords(c.root).to_vec(), c.coeff))
                    .collect();
                if !terms.is_empty() {
                    commutators.push(CommutatorEntry {
                        alpha: rs.coords(a).to_vec(),
                        beta: rs.coords(b).to_vec(),
                        terms,
                    });
                }
            }
        }
    }
    Ok(TableReport { ty: ty.to_string(), dim: t.dim(), structure_constants, commutators })
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub element: ElementJson,
    pub central: bool,
    pub in_big_cell: bool,
}

pub fn eval(g: &Chevalley<Zmod>, word: &GroupWord<u32>) -> Result<EvalReport> {
    let m = g.eval(word)?;
    Ok(EvalReport {
        central: g.is_central(&m)?,
        in_big_cell: g.in_big_cell(&m),
        element: element_to_json(g, &m),
    })
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub ring: RingJson,
    pub orientation: &'static str,
    /// Reduced word of `w`, simple reflections numbered from 1.
    pub w_word: Vec<usize>,
    pub u_params: Vec<RootParam>,
    pub torus: Vec<String>,
    pub v_params: Vec<RootParam>,
    pub bruhat_word: Vec<usize>,
    pub round_trip: bool,
}

pub fn parse_orientation(s: &str) -> Result<Orientation> {
    match s {
        "ubw" | "UBw" => Ok(Orientation::UBw),
        "uminus-bw" | "UminusBw" => Ok(Orientation::UminusBw),
        other => Err(CliError::Usage(format!("unknown orientation `{other}` (ubw, uminus-bw)"))),
    }
}

pub fn decompose(g: &Chevalley<Zmod>, word: &GroupWord<u32>, o: Orientation) -> Result<DecomposeReport> {
    let x = g.eval(word)?;
    let f = g.gauss_decompose(&x, o)?;
    let rs = g.rs();
    // re-evaluate from the reported parameters only
    let t = g.torus_elem(&f.torus)?;
    let rebuilt = g.product([&g.eval(&f.u_word())?, &t, &g.eval(&f.v_word())?, &g.eval(&g.weyl_word(&f.w))?]);
    Ok(DecomposeReport {
        ty: rs.cartan_type.to_string(),
        ring: RingJson::from(&g.ring.descriptor()),
        orientation: match o {
            Orientation::UBw => "ubw",
            Orientation::UminusBw => "uminus-bw",
        },
        w_word: one_based(&f.w.word),
        u_params: root_params(rs, &f.u_params),
        torus: f.torus.iter().map(|v| v.to_string()).collect(),
        v_params: root_params(rs, &f.v_params),
        bruhat_word: one_based(&g.bruhat_cell(&x)?.word),
        round_trip: rebuilt == x,
    })
}

#[derive(Debug, Serialize)]
pub struct ExtractReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub ring: RingJson,
    pub route: &'static str,
    pub root: Vec<i32>,
    pub t: String,
    pub certificate: CertJson,
    pub certificate_checked: bool,
    pub descent_depth: usize,
    pub trace: Vec<String>,
}

/// Fields go through the Gauss-cell route, residue rings through the
/// radical route.
pub fn extract(g: &Chevalley<Zmod>, word: &GroupWord<u32>) -> Result<ExtractReport> {
    let h = g.eval(word)?;
    let (route, res) = if g.ring.is_field() {
        ("field", g.extract_over_field(&h)?)
    } else {
        ("radical", g.extract_under_radical(&h)?)
    };
    let x = g.x_elem(res.root, &res.t);
    let rs = g.rs();
    Ok(ExtractReport {
        ty: rs.cartan_type.to_string(),
        ring: RingJson::from(&g.ring.descriptor()),
        route,
        root: rs.coords(res.root).to_vec(),
        t: res.t.to_string(),
        certificate: cert_to_json(rs, &res.certificate),
        certificate_checked: g.check_certificate(&res.certificate, &h, &x)? && !x.is_identity(&g.ring),
        descent_depth: res.descent_depth,
        trace: res.trace,
    })
}

#[derive(Debug, Serialize)]
pub struct PitJson {
    pub points: usize,
    pub skipped: usize,
    pub mismatches: usize,
    pub degree_bound: u32,
    pub failure_bound: f64,
    pub passed: bool,
}

impl From<&PitReport> for PitJson {
    fn from(p: &PitReport) -> Self {
        PitJson {
            points: p.points,
            skipped: p.skipped,
            mismatches: p.mismatches,
            degree_bound: p.degree_bound,
            failure_bound: p.failure_bound,
            passed: p.passed(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RingVerdictJson {
    pub ring: RingJson,
    pub sl_noncentral: bool,
    pub adjoint_noncentral: bool,
}

#[derive(Debug, Serialize)]
pub struct GenericJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub w_word: Vec<usize>,
    pub alpha: Vec<i32>,
    pub levi: Vec<usize>,
    pub k: u32,
    pub denominator: String,
    pub good_element: Vec<(Vec<i32>, String)>,
    pub certificate_shape: bool,
    pub certificate_value: bool,
    pub u_prime_unipotent: bool,
    pub factorization_exact: bool,
    pub factorization_pit: PitJson,
    pub parabolic_exact: bool,
    pub parabolic_pit: PitJson,
    pub case: String,
    pub point: Vec<Vec<i128>>,
    pub h_of_s: i128,
    pub h_of_u_trivial: bool,
    pub h_of_c: Vec<Vec<i128>>,
    pub h_of_c_matches: bool,
    pub rings: Vec<RingVerdictJson>,
    pub passed: bool,
    pub failures: Vec<String>,
}

pub fn generic_json(rs: &RootSystem, rep: &GenericReport) -> GenericJson {
    GenericJson {
        ty: rs.cartan_type.to_string(),
        w_word: one_based(&rep.w),
        alpha: rs.coords(rep.alpha).to_vec(),
        levi: one_based(&rep.levi),
        k: rep.k,
        denominator: rep.s.clone(),
        good_element: rep.good_word.iter().map(|(r, t)| (rs.coords(*r).to_vec(), t.clone())).collect(),
        certificate_shape: rep.certificate_shape,
        certificate_value: rep.certificate_value,
        u_prime_unipotent: rep.u_prime_unipotent,
        factorization_exact: rep.factorization_exact,
        factorization_pit: (&rep.factorization_pit).into(),
        parabolic_exact: rep.parabolic_exact,
        parabolic_pit: (&rep.parabolic_pit).into(),
        case: match rep.case {
            PointCase::FixedRoot => "fixed-root".into(),
            PointCase::MovedRoot { image, sign } => {
                format!("moved-root {:?} sign {sign}", rs.coords(image))
            }
        },
        point: rep.point.clone(),
        h_of_s: rep.h_of_s,
        h_of_u_trivial: rep.h_of_u_trivial,
        h_of_c: rep.h_of_c.clone(),
        h_of_c_matches: rep.h_of_c_matches,
        rings: rep
            .rings
            .iter()
            .map(|r| RingVerdictJson {
                ring: RingJson::from(&r.ring),
                sl_noncentral: r.sl_noncentral,
                adjoint_noncentral: r.adjoint_noncentral,
            })
            .collect(),
        passed: rep.passed(),
        failures: rep.failures(),
    }
}

/// `w` as 1-based simple reflections; `levi` defaults to the support of α.
pub fn generic_check(
    ty: CartanType,
    w: &[usize],
    alpha: &[i32],
    levi: Option<&[usize]>,
    pit_points: usize,
    rng: &mut ChaCha8Rng,
) -> Result<GenericJson> {
    let CartanType::A(l) = ty else {
        return Err(CliError::Usage("the generic-element layer covers type A only".into()));
    };
    let rs = RootSystem::build(ty)?;
    let zero_based = |v: &[usize]| -> Result<Vec<usize>> {
        v.iter()
            .map(|&i| {
                if i == 0 || i > rs.rank() {
                    Err(CliError::Usage(format!("simple reflection {i} out of range 1..={}", rs.rank())))
                } else {
                    Ok(i - 1)
                }
            })
            .collect()
    };
    let w0 = zero_based(w)?;
    let a = root_index(&rs, alpha)?;
    let levi = match levi {
        Some(v) => zero_based(v)?,
        None => (0..rs.rank()).filter(|&i| alpha[i] != 0).collect(),
    };
    let setup = GenericSetup::new(l as usize, &w0, a, &levi)?;
    let rep = setup.run(pit_points, rng)?;
    Ok(generic_json(&rs, &rep))
}

#[derive(Debug, Serialize)]
pub struct LevelReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub ring: RingJson,
    pub order_h: usize,
    pub ideal: String,
    pub per_root: Vec<(Vec<i32>, Vec<u32>)>,
    pub root_independent: bool,
}

pub fn level(g: &Chevalley<Zmod>, seeds: &[GroupWord<u32>]) -> Result<LevelReport> {
    let ns = NormalStructure::new(g);
    let gens = seeds.iter().map(|w| g.eval(w)).collect::<chevalley_core::Result<Vec<_>>>()?;
    let h = ns.normal_closure(gens);
    let data = ns.level(&h)?;
    let rs = g.rs();
    Ok(LevelReport {
        ty: rs.cartan_type.to_string(),
        ring: RingJson::from(&g.ring.descriptor()),
        order_h: h.order()?,
        ideal: describe_ideal(&data.ideal),
        root_independent: data.per_root.windows(2).all(|p| p[0] == p[1]),
        per_root: data
            .per_root
            .iter()
            .enumerate()
            .map(|(r, s)| (rs.coords(r).to_vec(), s.iter().copied().collect()))
            .collect(),
    })
}

#[derive(Debug, Serialize)]
pub struct SandwichJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub ring: RingJson,
    pub seeds: Vec<WordJson>,
    pub ideal: Option<String>,
    pub order_h: Option<usize>,
    pub order_relative_elementary: Option<usize>,
    pub lower_inclusion: bool,
    pub upper_inclusion: bool,
    pub competing: Vec<String>,
    pub holds: bool,
    pub failure: Option<String>,
}

/// A failing sandwich is reported, not raised.
pub fn sandwich(g: &Chevalley<Zmod>, seeds: &[GroupWord<u32>]) -> Result<SandwichJson> {
    let ns = NormalStructure::new(g);
    let gens = seeds.iter().map(|w| g.eval(w)).collect::<chevalley_core::Result<Vec<_>>>()?;
    let h = ns.normal_closure(gens);
    let rs = g.rs();
    let mut out = SandwichJson {
        ty: rs.cartan_type.to_string(),
        ring: RingJson::from(&g.ring.descriptor()),
        seeds: seeds.iter().map(|w| word_to_json(rs, w)).collect(),
        ideal: None,
        order_h: None,
        order_relative_elementary: None,
        lower_inclusion: false,
        upper_inclusion: false,
        competing: Vec::new(),
        holds: false,
        failure: None,
    };
    match ns.sandwich_check(&h) {
        Ok(rep) => {
            out.ideal = Some(describe_ideal(&rep.ideal));
            out.order_h = Some(rep.order_h);
            out.order_relative_elementary = Some(rep.order_relative_elementary);
            out.lower_inclusion = rep.lower_inclusion;
            out.upper_inclusion = rep.upper_inclusion;
            out.competing = rep.competing.iter().map(describe_ideal).collect();
            out.holds = rep.holds();
        }
        Err(e @ (Error::SandwichFails(_) | Error::LevelInconsistent(_))) => {
            out.failure = Some(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

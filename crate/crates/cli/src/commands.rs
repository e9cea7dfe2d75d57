//! One function per subcommand, each returning text and JSON forms.

use std::path::Path;

use ila_core::multiport::{
    is_dirac, is_ideal_transformer, is_passive, is_proper, is_reciprocal, is_strictly_passive,
    Multiport,
};
use ila_core::netlist::{self, Netlist};
use ila_core::suites::{run_suite, Suite};
use ila_core::terminations::{
    maxpower_via_adjoint, stationarity_solve, thevenin_norton, Classification, StationarityResult,
};
use ila_core::{AffineSpace, Error, ExactField, FieldMode};
use serde_json::{json, Value};

use crate::render::{equations, literals, yes_no};
use crate::{BehaviourMethod, Field, MaxpowerMethod, Property, Subject};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// The command ran but the answer is negative; exit status 1.
    pub negative: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn core_failure(e: Error) -> Failure {
    match e {
        Error::NotRegular(kind) => Failure::new(
            1,
            format!("network is not regular ({kind:?} solution at the first step)"),
        ),
        e => Failure::new(3, e.to_string()),
    }
}

fn load(path: &Path) -> Result<Netlist, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    netlist::parse(&text).map_err(|d| {
        Failure::new(
            2,
            format!(
                "{}:{}:{}: [{}] {}",
                path.display(),
                d.line,
                d.column,
                d.code,
                d.message
            ),
        )
    })
}

macro_rules! dispatch {
    ($netlist:expr, $m:ident => $body:expr) => {
        match $netlist {
            Netlist::Rational($m) => $body,
            Netlist::Gaussian($m) => $body,
        }
    };
}

fn names<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn require_ports<F: ExactField>(m: &Multiport<F>) -> Result<(), Failure> {
    if m.ports().is_empty() {
        Err(Failure::new(1, "network has no ports"))
    } else {
        Ok(())
    }
}

pub fn behaviour(path: &Path, method: BehaviourMethod) -> Result<Outcome, Failure> {
    dispatch!(load(path)?, m => behaviour_of(&m, method))
}

fn behaviour_of<F: ExactField>(
    m: &Multiport<F>,
    method: BehaviourMethod,
) -> Result<Outcome, Failure> {
    require_ports(m)?;
    let b = match method {
        BehaviourMethod::Eliminate => m.port_behaviour(),
        BehaviourMethod::AdjointGyrator => thevenin_norton(m).map_err(core_failure)?,
    };
    let text = format!(
        "port behaviour over {} (i is the current entering at the port):\n{}",
        names(m.ports()).join(", "),
        equations(&b)
    );
    let json = json!({
        "field": F::MODE.name(),
        "ports": names(m.ports()),
        "behaviour": b.to_json(),
    });
    Ok(Outcome {
        text,
        json,
        negative: false,
    })
}

pub fn regular(path: &Path) -> Result<Outcome, Failure> {
    dispatch!(load(path)?, m => Ok(regular_of(&m)))
}

fn regular_of<F: ExactField>(m: &Multiport<F>) -> Outcome {
    let consistent = m.is_consistent_all_sources();
    let unique = m.has_unique_interior();
    let regular = consistent && unique;
    let text = format!(
        "{}\n  solvable for every source value: {}\n  interior determined by the ports: {}\n",
        if regular { "regular" } else { "not regular" },
        yes_no(consistent),
        yes_no(unique)
    );
    Outcome {
        text,
        json: json!({
            "regular": regular,
            "consistent_all_sources": consistent,
            "unique_interior": unique,
        }),
        negative: !regular,
    }
}

pub fn adjoint(path: &Path) -> Result<Outcome, Failure> {
    let n = load(path)?;
    let adj = dispatch!(n, m => netlist::emit(&m.adjoint()));
    Ok(Outcome {
        json: json!({ "netlist": adj }),
        text: adj,
        negative: false,
    })
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::NoStationaryPoint => "none",
        Classification::Stationary => "stationary",
        Classification::MaxUnderPassivity => "maximum",
        Classification::UniqueMaxUnderStrictPassivity => "unique-maximum",
    }
}

fn classification_text(c: Classification) -> &'static str {
    match c {
        Classification::NoStationaryPoint => "no stationary point",
        Classification::Stationary => "stationary point, not known to be a maximum",
        Classification::MaxUnderPassivity => "maximum (passive device)",
        Classification::UniqueMaxUnderStrictPassivity => "unique maximum (strictly passive device)",
    }
}

pub fn maxpower(path: &Path, method: MaxpowerMethod) -> Result<Outcome, Failure> {
    dispatch!(load(path)?, m => maxpower_of(&m, method))
}

fn maxpower_of<F: ExactField>(
    m: &Multiport<F>,
    method: MaxpowerMethod,
) -> Result<Outcome, Failure> {
    require_ports(m)?;
    let r: StationarityResult<F> = match method {
        MaxpowerMethod::Stationarity => {
            let b = m.port_behaviour();
            if b.is_void() {
                return Err(Failure::new(1, "port behaviour is void"));
            }
            stationarity_solve(&b).map_err(core_failure)?
        }
        MaxpowerMethod::AdjointTransformer => maxpower_via_adjoint(m).map_err(core_failure)?,
    };
    let mut text = format!("{}\n", classification_text(r.classification));
    if let (Some(v), Some(i), Some(p)) = (r.voltages(), r.currents(), r.delivered_power()) {
        for (k, port) in r.ports.iter().enumerate() {
            text.push_str(&format!(
                "  {port}: v = {}, i = {}\n",
                v[k].to_literal(),
                i[k].to_literal()
            ));
        }
        text.push_str(&format!("  delivered power: {}\n", p.to_literal()));
    }
    if let Some(lambda) = &r.lambda {
        text.push_str(&format!(
            "  multipliers: [{}]\n",
            literals(lambda).join(", ")
        ));
    }
    let json = json!({
        "field": F::MODE.name(),
        "classification": classification_name(r.classification),
        "lambda": r.lambda.as_deref().map(literals),
        "ports": names(&r.ports),
        "voltages": r.voltages().map(literals),
        "currents": r.currents().map(literals),
        "delivered_power": r.delivered_power().map(|p| p.to_literal()),
    });
    Ok(Outcome {
        text,
        json,
        negative: r.classification == Classification::NoStationaryPoint,
    })
}

const PROPERTIES: [Property; 7] = [
    Property::Reciprocal,
    Property::Dirac,
    Property::IdealTransformer,
    Property::Passive,
    Property::StrictlyPassive,
    Property::Proper,
    Property::Regular,
];

fn property_name(p: Property) -> &'static str {
    match p {
        Property::Reciprocal => "reciprocal",
        Property::Dirac => "dirac",
        Property::IdealTransformer => "ideal-transformer",
        Property::Passive => "passive",
        Property::StrictlyPassive => "strictly-passive",
        Property::Proper => "proper",
        Property::Regular => "regular",
    }
}

fn holds<F: ExactField>(
    m: &Multiport<F>,
    space: &AffineSpace<F>,
    p: Property,
) -> Result<bool, Failure> {
    let v = space.translate();
    match p {
        Property::Reciprocal => is_reciprocal(v),
        Property::Dirac => is_dirac(v),
        Property::IdealTransformer => is_ideal_transformer(v),
        Property::Passive => is_passive(v),
        Property::StrictlyPassive => is_strictly_passive(v),
        Property::Proper => is_proper(space),
        Property::Regular => Ok(m.is_regular()),
    }
    .map_err(core_failure)
}

pub fn check(
    path: &Path,
    property: Option<Property>,
    subject: Subject,
) -> Result<Outcome, Failure> {
    dispatch!(load(path)?, m => check_of(&m, property, subject))
}

fn check_of<F: ExactField>(
    m: &Multiport<F>,
    property: Option<Property>,
    subject: Subject,
) -> Result<Outcome, Failure> {
    let (space, subject_name) = match subject {
        Subject::Behaviour => (m.port_behaviour(), "behaviour"),
        Subject::Device => (m.device_space(), "device"),
    };
    let selected: Vec<Property> = match property {
        Some(p) => vec![p],
        None => PROPERTIES.to_vec(),
    };
    let mut text = format!(
        "{} edges, {} ports, {} device blocks ({})\n{subject_name} properties:\n",
        m.graph().labels().len(),
        m.ports().len(),
        m.blocks().len(),
        F::MODE.name()
    );
    let mut results = serde_json::Map::new();
    let mut all = true;
    for p in selected {
        let ok = holds(m, &space, p)?;
        all &= ok;
        text.push_str(&format!("  {}: {}\n", property_name(p), yes_no(ok)));
        results.insert(property_name(p).to_string(), Value::Bool(ok));
    }
    let json = json!({
        "field": F::MODE.name(),
        "of": subject_name,
        "edges": m.graph().labels().len(),
        "ports": names(m.ports()),
        "devices": m.blocks().len(),
        "properties": results,
    });
    Ok(Outcome {
        text,
        json,
        negative: property.is_some() && !all,
    })
}

pub fn verify(suite: Suite, trials: u64, seed: u64, size: usize, field: Field) -> Outcome {
    let mode = match field {
        Field::Rational => FieldMode::Rational,
        Field::Gaussian => FieldMode::Gaussian,
    };
    let r = run_suite(suite, mode, trials, seed, size);
    let mut text = format!(
        "{} ({}): {}/{} trials passed, seed {}, size {}\n",
        suite,
        mode.name(),
        r.passed,
        r.trials,
        r.seed,
        size
    );
    if !r.all_passed() {
        let failed: Vec<String> = r.failures.iter().map(u64::to_string).collect();
        text.push_str(&format!("  failing trials: {}\n", failed.join(", ")));
    }
    Outcome {
        text,
        json: json!({
            "suite": suite.name(),
            "field": mode.name(),
            "seed": r.seed,
            "size": size,
            "trials": r.trials,
            "passed": r.passed,
            "failures": r.failures,
        }),
        negative: !r.all_passed(),
    }
}

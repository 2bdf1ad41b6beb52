//! The benchmark function catalog: the analytic, differentiable, and
//! fractionally singular targets whose convergence behavior the sweeps
//! compare, with expected rates and ratio windows where known.

use std::f64::consts::PI;

use crate::harness::expr;
use crate::projections::{EndpointSide, FunctionSpec, Smoothness};
use crate::Result;

/// Which comparison figure an entry's data feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FigureTag {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

/// A catalog entry: a target function plus fixture expectations for the
/// sweep tests. `expected_rate` is the log-log slope of the Legendre
/// projection error; the ratio windows bracket the asymptotic
/// best-to-projection error ratios (the two ratios get separate windows
/// because the endpoint-singular family separates them).
#[derive(Debug, Clone)]
pub struct FunctionCatalogEntry {
    pub spec: FunctionSpec,
    pub expected_rate: Option<f64>,
    pub expected_ratio_p: Option<(f64, f64)>,
    pub expected_ratio_t: Option<(f64, f64)>,
    pub figure: FigureTag,
}

const FIG4_WINDOW: (f64, f64) = (0.40, 0.55);
const FIG5_P_WINDOW: (f64, f64) = (0.13, 0.33);
const FIG5_T_WINDOW: (f64, f64) = (0.40, 0.53);
const FIG1_T_WINDOW: (f64, f64) = (0.55, 0.75);

/// Builds the full benchmark catalog.
pub fn catalog() -> Vec<FunctionCatalogEntry> {
    let mut entries = Vec::new();

    // Analytic family.
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "exp(x^5)",
            Smoothness::Analytic {
                rho_est: f64::INFINITY,
            },
            vec![],
            |x: f64| x.powi(5).exp(),
        )
        .unwrap()
        .with_complex(|z| z.powu(5).exp()),
        expected_rate: None,
        expected_ratio_p: None,
        expected_ratio_t: Some(FIG1_T_WINDOW),
        figure: FigureTag::Fig1,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "ln(1.2+x)",
            Smoothness::Analytic {
                rho_est: 1.2 + 0.44_f64.sqrt(),
            },
            vec![],
            |x: f64| (1.2 + x).ln(),
        )
        .unwrap()
        .with_complex(|z| (z + 1.2).ln()),
        expected_rate: None,
        expected_ratio_p: None,
        expected_ratio_t: Some(FIG1_T_WINDOW),
        figure: FigureTag::Fig1,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "1/(1+4x^2)",
            Smoothness::Analytic {
                rho_est: 0.5 * (1.0 + 5.0_f64.sqrt()),
            },
            vec![],
            |x: f64| 1.0 / (1.0 + 4.0 * x * x),
        )
        .unwrap()
        .with_complex(|z| (4.0 * z * z + 1.0).finv()),
        expected_rate: None,
        expected_ratio_p: None,
        expected_ratio_t: Some(FIG1_T_WINDOW),
        figure: FigureTag::Fig1,
    });

    // Differentiable family.
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "exp(-1/x^2)",
            Smoothness::Cm { m: None },
            vec![0.0],
            |x: f64| (-1.0 / (x * x)).exp(),
        )
        .unwrap(),
        expected_rate: None,
        expected_ratio_p: None,
        expected_ratio_t: None,
        figure: FigureTag::Fig2,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "(x-1/2)_+^3",
            Smoothness::PiecewiseAnalytic,
            vec![0.5],
            |x: f64| (x - 0.5).max(0.0).powi(3),
        )
        .unwrap(),
        expected_rate: Some(-3.0),
        expected_ratio_p: None,
        expected_ratio_t: None,
        figure: FigureTag::Fig2,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "|sin(5x)|",
            Smoothness::PiecewiseAnalytic,
            vec![-PI / 5.0, 0.0, PI / 5.0],
            |x: f64| (5.0 * x).sin().abs(),
        )
        .unwrap(),
        expected_rate: Some(-1.0),
        expected_ratio_p: None,
        expected_ratio_t: None,
        figure: FigureTag::Fig2,
    });

    // Interior fractional singularities.
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "|x-1/2|^(5/2)",
            Smoothness::FractionalInterior {
                alpha: 2.5,
                x0: 0.5,
            },
            vec![0.5],
            |x: f64| (x - 0.5).abs().powf(2.5),
        )
        .unwrap(),
        expected_rate: Some(-2.5),
        expected_ratio_p: Some(FIG4_WINDOW),
        expected_ratio_t: Some(FIG4_WINDOW),
        figure: FigureTag::Fig4,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "|x-4/5|^(5/4)",
            Smoothness::FractionalInterior {
                alpha: 1.25,
                x0: 0.8,
            },
            vec![0.8],
            |x: f64| (x - 0.8).abs().powf(1.25),
        )
        .unwrap(),
        expected_rate: Some(-1.25),
        expected_ratio_p: Some(FIG4_WINDOW),
        expected_ratio_t: Some(FIG4_WINDOW),
        figure: FigureTag::Fig4,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "|x|^(2/3)",
            Smoothness::FractionalInterior {
                alpha: 2.0 / 3.0,
                x0: 0.0,
            },
            vec![0.0],
            |x: f64| x.abs().powf(2.0 / 3.0),
        )
        .unwrap(),
        expected_rate: Some(-2.0 / 3.0),
        expected_ratio_p: Some(FIG4_WINDOW),
        expected_ratio_t: Some(FIG4_WINDOW),
        figure: FigureTag::Fig4,
    });

    // Endpoint singularities.
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "(1+x)^(5/2)",
            Smoothness::FractionalEndpoint {
                alpha: 2.5,
                side: EndpointSide::Plus,
            },
            vec![],
            |x: f64| (1.0 + x).powf(2.5),
        )
        .unwrap(),
        expected_rate: Some(-5.0),
        expected_ratio_p: Some(FIG5_P_WINDOW),
        expected_ratio_t: Some(FIG5_T_WINDOW),
        figure: FigureTag::Fig5,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "(1-x^2)^(3/2)",
            Smoothness::FractionalEndpoint {
                alpha: 1.5,
                side: EndpointSide::Plus,
            },
            vec![],
            |x: f64| {
                let s = 1.0 - x * x;
                if s <= 0.0 {
                    0.0
                } else {
                    s.powf(1.5)
                }
            },
        )
        .unwrap(),
        expected_rate: Some(-3.0),
        expected_ratio_p: Some(FIG5_P_WINDOW),
        expected_ratio_t: Some(FIG5_T_WINDOW),
        figure: FigureTag::Fig5,
    });
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "arccos(x)",
            Smoothness::FractionalEndpoint {
                alpha: 0.5,
                side: EndpointSide::Plus,
            },
            vec![],
            |x: f64| x.acos(),
        )
        .unwrap(),
        expected_rate: Some(-1.0),
        expected_ratio_p: Some(FIG5_P_WINDOW),
        expected_ratio_t: Some(FIG5_T_WINDOW),
        figure: FigureTag::Fig5,
    });

    // Pointwise-error exhibit.
    entries.push(FunctionCatalogEntry {
        spec: FunctionSpec::new(
            "(x-1/2)_+",
            Smoothness::PiecewiseAnalytic,
            vec![0.5],
            |x: f64| (x - 0.5).max(0.0),
        )
        .unwrap(),
        expected_rate: Some(-1.0),
        expected_ratio_p: None,
        expected_ratio_t: None,
        figure: FigureTag::Fig3,
    });

    entries
}

/// The pole witness 1/(x-2), analytic in every Bernstein ellipse with
/// parameter below 2+√3. Kept outside the figure catalog but resolvable
/// by name for bound studies.
pub fn reciprocal_pole_spec() -> FunctionSpec {
    FunctionSpec::new(
        "1/(x-2)",
        Smoothness::Analytic {
            rho_est: 2.0 + 3.0_f64.sqrt(),
        },
        vec![],
        |x: f64| 1.0 / (x - 2.0),
    )
    .unwrap()
    .with_complex(|z| (z - 2.0).finv())
}

/// Resolves a catalog label, the named pole witness, or a function
/// expression into a catalog entry (synthesized, with no fixture
/// expectations, for non-catalog functions).
pub fn resolve_entry(label: &str) -> Result<FunctionCatalogEntry> {
    if let Some(entry) = catalog().into_iter().find(|e| e.spec.label() == label) {
        return Ok(entry);
    }
    let spec = if label == "1/(x-2)" {
        reciprocal_pole_spec()
    } else {
        expr::compile(label)?
    };
    Ok(FunctionCatalogEntry {
        spec,
        expected_rate: None,
        expected_ratio_p: None,
        expected_ratio_t: None,
        figure: FigureTag::Fig2,
    })
}

/// Resolves a label or expression to the bare function spec.
pub fn resolve_function(label: &str) -> Result<FunctionSpec> {
    resolve_entry(label).map(|e| e.spec)
}

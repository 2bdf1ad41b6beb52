//! Experiment driver: the benchmark function catalog, degree sweeps with
//! error ratios and fitted rates, pointwise-error tables, and CSV/JSON/
//! SVG emission of the results.

pub mod catalog;
pub mod emit;
pub mod expr;
pub mod figure;
pub mod sweep;

pub use catalog::{
    catalog, reciprocal_pole_spec, resolve_entry, resolve_function, FigureTag,
    FunctionCatalogEntry,
};
pub use emit::{emit, EmitFormat, Emittable};
pub use figure::{pointwise_figure, reproduce_figure, PointwiseTable};
pub use sweep::{rate_fit, sweep, RateReport, SlopeFit};

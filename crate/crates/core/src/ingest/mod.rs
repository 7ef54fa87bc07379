//! Expression and problem-file parsing, trace and report rendering.

mod expr;
mod problem;
mod render;

pub use expr::{format_expression, parse_ast, parse_expression, ExprError, ExpressionAst, Factor};
pub use problem::{parse_problem, ProblemError, ProblemForm, ProblemSpec};
pub use render::{
    parse_trace_json, render_theorem_report, render_trace, SeparationParamsDoc, SnapshotDoc,
    TheoremDocument, TheoremRowDoc, TraceBody, TraceDocError, TraceDocument, TraceFormat,
    TABLE_DECIMALS,
};

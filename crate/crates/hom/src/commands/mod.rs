//! One module per subcommand. Each decodes its config, validates every
//! literal, evaluates in parallel and renders in input order.

pub mod channels;
pub mod coherent;
pub mod contour;
pub mod dip;
pub mod protocols;
pub mod swap;
pub mod tables;

use rayon::prelude::*;

use crate::error::Result;

/// Maps `f` over `items` on the thread pool, keeping input order.
pub(crate) fn par_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Comma-joined row in shortest round-trip notation.
pub(crate) fn row(values: &[f64]) -> String {
    let mut s = values.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

/// `x,y,<name>` rows for a grid evaluated column by column: `values[i][j]`
/// belongs to `xs[i]`, `ys[j]`.
pub(crate) fn grid_csv(xs: &[f64], ys: &[f64], values: &[Vec<f64>], name: &str) -> String {
    let mut out = format!("x,y,{name}\n");
    for (x, col) in xs.iter().zip(values) {
        for (y, v) in ys.iter().zip(col) {
            out.push_str(&row(&[*x, *y, *v]));
        }
    }
    out
}

//! Connected order ideals of a labeled poset, their intersection
//! graph, the bijection between global maximum independent sets and
//! forests with order-ideal subtrees, and the factored generating
//! functions that fall out of it: the multivariate P-partition
//! generating function as a product over components, its one-variable
//! specialization counting linear extensions by major index, and the
//! closed-form extension count.
//!
//! Everything is exact (big integers and rationals); enumeration stages
//! take explicit caps and fail loudly rather than truncate. The crate's
//! internal cross-checks recompute structured results by brute force
//! where feasible, so theorem-shaped guarantees are verified at
//! runtime, not assumed.

pub mod bitset;
pub mod cli;
pub mod error;
pub mod exec;
pub mod forest;
pub mod genfun;
pub mod ideal_graph;
pub mod io;
pub mod mis;
pub mod oracle;
pub mod poset;
pub mod series;
pub mod verify;

pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use forest::{DescentData, PForest};
pub use genfun::{FactoredGF, QPoly};
pub use ideal_graph::IdealGraph;
pub use mis::{MaxIndSet, Scope};
pub use poset::{Ideal, LinearExtension, PPartition, Poset};
pub use series::Series;

use forest::component_descent_tables;
use genfun::factored_fpx;
use ideal_graph::ideal_graph;
use mis::component_mis_lists;

/// Everything the pipeline derives from one poset, computed with the
/// given caps. Requires natural labeling; relabel first if needed.
pub struct Pipeline {
    pub poset: Poset,
    pub graph: IdealGraph,
    pub component_sets: Vec<Vec<MaxIndSet>>,
    pub descent_tables: Vec<Vec<DescentData>>,
    pub generating_function: FactoredGF,
}

impl Pipeline {
    pub fn build(poset: Poset, max_ideals: u64, max_mis: u64) -> Result<Pipeline> {
        let graph = ideal_graph(&poset, max_ideals)?;
        let component_sets = component_mis_lists(&graph, max_mis)?;
        let descent_tables = component_descent_tables(&poset, &graph, &component_sets, None)?;
        let generating_function =
            factored_fpx(&poset, &graph, &component_sets, &descent_tables)?;
        Ok(Pipeline {
            poset,
            graph,
            component_sets,
            descent_tables,
            generating_function,
        })
    }

    pub fn extension_count(&self) -> Result<num::BigInt> {
        genfun::count_linear_extensions(&self.graph, &self.component_sets)
    }

    pub fn q_polynomial(&self) -> Result<QPoly> {
        genfun::fpq(&self.generating_function)
    }
}

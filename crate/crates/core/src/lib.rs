//! Unordered real tuples as a metric space, the sorting section that lifts
//! continuous quotient-valued maps, and a loop tracker exhibiting the
//! monodromy that rules out such a lift for complex tuples.
//!
//! ```
//! use symprod::metric::{dist_sorted, UnorderedTuple};
//! use symprod::tuple::RealTuple;
//!
//! let y = RealTuple::new(vec![1.0, 5.0]).unwrap();
//! let z = RealTuple::new(vec![2.0, 3.0]).unwrap();
//! assert_eq!(dist_sorted(&y, &z).unwrap().value, 3.0);
//!
//! let class = UnorderedTuple::new(RealTuple::new(vec![3.0, 1.0, 2.0]).unwrap());
//! assert_eq!(class.canonical().as_slice(), &[1.0, 2.0, 3.0]);
//! ```

pub mod cli;
pub mod diagonal;
pub mod error;
pub mod field_file;
pub mod lemmas;
pub mod metric;
pub mod monodromy;
pub mod perm;
pub mod selection;
pub mod tuple;

pub use error::{Error, Result};
pub use metric::{Distance, Engine, UnorderedTuple};
pub use perm::Permutation;
pub use tuple::{ComplexTuple, RealTuple};

//! Output records and formatting shared by the `genairy` binary and its tests.

pub mod output;

//! Front end for `osp-core`: argument handling, reports, and the JSON and
//! DOT encodings used by the `osp` binary.

pub mod cli;
pub mod format;

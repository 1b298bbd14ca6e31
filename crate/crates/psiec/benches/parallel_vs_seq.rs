//! Placeholder; filled in once the kernels exist.
fn main() {}

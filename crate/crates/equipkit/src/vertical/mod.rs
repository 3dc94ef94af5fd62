//! Vertical enrichment: mapping spaces, tensors, staircase cylinders,
//! homotopy colimits and limits.

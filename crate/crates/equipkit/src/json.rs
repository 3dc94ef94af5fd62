//! Serialization between kernel values and their on-disk JSON shapes.

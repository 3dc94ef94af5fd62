//! Seeded generators for example categories, diagrams, and simplicial
//! sets used by the command-line corpus and by randomized tests.

//! Criterion benchmark harness for the mopart workspace; see benches/.

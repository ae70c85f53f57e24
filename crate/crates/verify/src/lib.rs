//! Acceptance gate for `eigenbounds`; see `tests/acceptance.rs`.

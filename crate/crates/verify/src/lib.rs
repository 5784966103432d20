// SPDX-License-Identifier: MIT OR Apache-2.0

//! Acceptance suite host crate; the criteria live in `tests/acceptance.rs`.

//! Report schemas (under construction)

"""cqg.core — fusion data, instances, the L¹/L² algebras and the verification suite."""

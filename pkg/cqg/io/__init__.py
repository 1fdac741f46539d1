"""cqg.io — instance/element file readers and report writers."""

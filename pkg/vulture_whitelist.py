[tool.vulture]
exclude = ["venv", ".venv", "tests"]
ignore_names = ["Config", "validate_*", "generated_at"] # Pydantic internals

"""de Vries powers of totally ordered domains over exact arithmetic."""

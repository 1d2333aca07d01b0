"""Servizi: combinatoria, forme, algebra lineare esatta, suite di identità."""

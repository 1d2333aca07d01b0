"""Front end a riga di comando: grammatica delle espressioni, schemi JSON, comandi."""

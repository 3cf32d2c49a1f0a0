# Exceptions, logging, seeding and process fan-out

# Intentionally empty to mark tests as a package.
